"""Equipment catalog: storage racks and network devices.

The built-in catalog holds the six storage appliances and six routing
devices the model is calibrated on. User catalogs are JSON documents with
two top-level arrays, ``storage_racks`` and ``network_devices``, whose
objects carry exactly the dataclass field names below.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields
from enum import Enum
from types import MappingProxyType
from typing import IO, Any, Iterable, Mapping


class CatalogError(ValueError):
    """Raised for malformed or invalid catalog documents and specs."""


class NetworkKind(str, Enum):
    ETHERNET_SWITCH = "ethernet_switch"
    BROADBAND_GATEWAY = "broadband_gateway"
    DATACENTER_GATEWAY = "datacenter_gateway"
    PROVIDER_EDGE = "provider_edge"
    CORE_ROUTER = "core_router"
    WDM_LINK = "wdm_link"


def _check_positive(owner: str, name: str, value: float) -> None:
    if not math.isfinite(value) or value <= 0:
        raise CatalogError(f"{owner}: {name} must be > 0 (got {value!r})")


def _check_at_least_one(owner: str, name: str, value: float) -> None:
    if not math.isfinite(value) or value < 1.0:
        raise CatalogError(f"{owner}: {name} must be >= 1.0 (got {value!r})")


@dataclass(frozen=True)
class StorageRackSpec:
    """A storage appliance.

    ``capacity_tb`` is the filled capacity (disk count times disk size
    already applied). ``density_precomputed`` marks rows whose wattage
    already folds in redundancy; such rows are kept for completeness but
    excluded from data-center fleet averages.
    """

    name: str
    capacity_tb: float
    peak_watts: float
    pue: float
    redundancy: float
    density_precomputed: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not self.name.strip():
            raise CatalogError("storage rack: name must be a nonempty string")
        owner = f"storage rack {self.name!r}"
        _check_positive(owner, "capacity_tb", self.capacity_tb)
        _check_positive(owner, "peak_watts", self.peak_watts)
        _check_at_least_one(owner, "pue", self.pue)
        _check_at_least_one(owner, "redundancy", self.redundancy)


@dataclass(frozen=True)
class NetworkDeviceSpec:
    """A routing or switching device.

    For ``wdm_link`` devices ``power_watts`` and ``capacity_gbps`` are per
    optical channel, so the per-bit energy has the same meaning for every kind.
    """

    name: str
    kind: NetworkKind
    capacity_gbps: float
    power_watts: float

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not self.name.strip():
            raise CatalogError("network device: name must be a nonempty string")
        owner = f"network device {self.name!r}"
        try:
            object.__setattr__(self, "kind", NetworkKind(self.kind))
        except ValueError:
            allowed = ", ".join(k.value for k in NetworkKind)
            raise CatalogError(
                f"{owner}: kind must be one of {allowed} (got {self.kind!r})"
            ) from None
        _check_positive(owner, "capacity_gbps", self.capacity_gbps)
        _check_positive(owner, "power_watts", self.power_watts)


def per_bit_energy(device: NetworkDeviceSpec) -> float:
    """Energy per transferred gigabit (J/Gb): operating power over capacity."""
    return device.power_watts / device.capacity_gbps


class Catalog:
    """Immutable, name-indexed collection of equipment specs."""

    __slots__ = ("_racks", "_devices")

    def __init__(
        self,
        storage_racks: Iterable[StorageRackSpec] = (),
        network_devices: Iterable[NetworkDeviceSpec] = (),
    ) -> None:
        object.__setattr__(self, "_racks", MappingProxyType(_index(storage_racks, "storage rack")))
        object.__setattr__(
            self, "_devices", MappingProxyType(_index(network_devices, "network device"))
        )

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Catalog is immutable")

    @property
    def storage_racks(self) -> Mapping[str, StorageRackSpec]:
        return self._racks

    @property
    def network_devices(self) -> Mapping[str, NetworkDeviceSpec]:
        return self._devices

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Catalog):
            return NotImplemented
        # insertion order is part of identity: presets pick the first device of a kind
        return list(self._racks.items()) == list(other._racks.items()) and list(
            self._devices.items()
        ) == list(other._devices.items())

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Catalog(storage_racks={list(self._racks)}, network_devices={list(self._devices)})"

    def device(self, name: str) -> NetworkDeviceSpec:
        try:
            return self._devices[name]
        except KeyError:
            raise CatalogError(f"unknown network device {name!r}") from None

    def first_of_kind(self, kind: NetworkKind | str) -> NetworkDeviceSpec:
        """Return the first device (in catalog order) of the given kind."""
        kind = NetworkKind(kind)
        for dev in self._devices.values():
            if dev.kind is kind:
                return dev
        raise CatalogError(f"no device of kind {kind.value}")

    def merged(self, other: Catalog) -> Catalog:
        """Entries of ``other`` replace same-named entries of ``self``."""
        racks = dict(self._racks)
        racks.update(other._racks)
        devices = dict(self._devices)
        devices.update(other._devices)
        return Catalog(racks.values(), devices.values())


def _index(specs: Iterable[Any], label: str) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for spec in specs:
        if spec.name in out:
            raise CatalogError(f"duplicate {label} name {spec.name!r}")
        out[spec.name] = spec
    return out


_BUILTIN = Catalog(
    storage_racks=[
        StorageRackSpec("Cubbit Cell", 1.5, 2.55, 1.0, 1.5, density_precomputed=True),
        StorageRackSpec("HP SO 3620", 96, 607, 1.6, 2.0),
        StorageRackSpec("HP SO 5650", 2240, 6603, 1.6, 2.0),
        StorageRackSpec("ECS-D5600", 2240, 9500, 1.9, 2.0),
        StorageRackSpec("ECS-EX300", 192, 275, 1.9, 2.0),
        StorageRackSpec("Storage Pod", 480, 1500, 1.6, 1.1),
    ],
    network_devices=[
        NetworkDeviceSpec("Juniper MX-960", NetworkKind.DATACENTER_GATEWAY, 660, 5100),
        NetworkDeviceSpec("Cisco 6509", NetworkKind.ETHERNET_SWITCH, 160, 3800),
        NetworkDeviceSpec("Juniper E320", NetworkKind.BROADBAND_GATEWAY, 60, 3300),
        NetworkDeviceSpec("Cisco 12816", NetworkKind.PROVIDER_EDGE, 160, 4210),
        NetworkDeviceSpec("Cisco CRS-1", NetworkKind.CORE_ROUTER, 640, 10900),
        NetworkDeviceSpec("Fujitsu 7700", NetworkKind.WDM_LINK, 40, 136),
    ],
)


def builtin_catalog() -> Catalog:
    """The reference catalog (6 storage racks, 6 network devices)."""
    return _BUILTIN


# --- serialization ---------------------------------------------------------

_RACK_FIELDS = {f.name for f in fields(StorageRackSpec)}
_RACK_REQUIRED = _RACK_FIELDS - {"density_precomputed"}
_DEVICE_FIELDS = {f.name for f in fields(NetworkDeviceSpec)}


def catalog_to_dict(catalog: Catalog) -> dict[str, list[dict[str, Any]]]:
    devices = []
    for dev in catalog.network_devices.values():
        d = asdict(dev)
        d["kind"] = dev.kind.value
        devices.append(d)
    return {
        "storage_racks": [asdict(r) for r in catalog.storage_racks.values()],
        "network_devices": devices,
    }


def dump_catalog(catalog: Catalog, indent: int | None = 2) -> str:
    return json.dumps(catalog_to_dict(catalog), indent=indent)


def _number(value: Any, where: str) -> float:
    # bool is an int subclass; reject it along with strings like "96 TB"
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise CatalogError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _check_keys(obj: Any, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise CatalogError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise CatalogError(f"{where}: unknown field(s) {', '.join(unknown)}")
    missing = sorted(required - set(obj))
    if missing:
        raise CatalogError(f"{where}: missing field(s) {', '.join(missing)}")


def _rack_from_dict(obj: Any, where: str) -> StorageRackSpec:
    _check_keys(obj, _RACK_FIELDS, _RACK_REQUIRED, where)
    if not isinstance(obj["name"], str):
        raise CatalogError(f"{where}: name must be a string")
    where = f"{where} ({obj['name']!r})"
    precomputed = obj.get("density_precomputed", False)
    if not isinstance(precomputed, bool):
        raise CatalogError(f"{where}: density_precomputed must be true or false")
    try:
        return StorageRackSpec(
            name=obj["name"],
            capacity_tb=_number(obj["capacity_tb"], f"{where}.capacity_tb"),
            peak_watts=_number(obj["peak_watts"], f"{where}.peak_watts"),
            pue=_number(obj["pue"], f"{where}.pue"),
            redundancy=_number(obj["redundancy"], f"{where}.redundancy"),
            density_precomputed=precomputed,
        )
    except CatalogError as exc:
        raise CatalogError(f"{where}: {exc}") from None


def _device_from_dict(obj: Any, where: str) -> NetworkDeviceSpec:
    _check_keys(obj, _DEVICE_FIELDS, _DEVICE_FIELDS, where)
    if not isinstance(obj["name"], str):
        raise CatalogError(f"{where}: name must be a string")
    where = f"{where} ({obj['name']!r})"
    try:
        return NetworkDeviceSpec(
            name=obj["name"],
            kind=obj["kind"],
            capacity_gbps=_number(obj["capacity_gbps"], f"{where}.capacity_gbps"),
            power_watts=_number(obj["power_watts"], f"{where}.power_watts"),
        )
    except CatalogError as exc:
        raise CatalogError(f"{where}: {exc}") from None


def catalog_from_dict(doc: Any) -> Catalog:
    _check_keys(doc, {"storage_racks", "network_devices"}, set(), "catalog")
    racks_raw = doc.get("storage_racks", [])
    devices_raw = doc.get("network_devices", [])
    for key, value in (("storage_racks", racks_raw), ("network_devices", devices_raw)):
        if not isinstance(value, list):
            raise CatalogError(f"catalog.{key}: expected an array")
    racks = [_rack_from_dict(r, f"storage_racks[{i}]") for i, r in enumerate(racks_raw)]
    devices = [
        _device_from_dict(d, f"network_devices[{i}]") for i, d in enumerate(devices_raw)
    ]
    return Catalog(racks, devices)


def load_catalog(
    source: IO[bytes] | IO[str] | bytes | str, merge_builtin: bool = False
) -> Catalog:
    """Parse and validate a JSON catalog document.

    ``source`` may be a binary or text stream, or the document itself.
    With ``merge_builtin`` the loaded entries are layered over the built-in
    catalog, replacing built-in entries of the same name.
    """
    if isinstance(source, (bytes, str)):
        raw = source
    else:
        raw = source.read()
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CatalogError(f"catalog is not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CatalogError(
            f"catalog parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    catalog = catalog_from_dict(doc)
    if merge_builtin:
        return builtin_catalog().merged(catalog)
    return catalog


def load_catalog_file(path: str, merge_builtin: bool = False) -> Catalog:
    with open(path, "rb") as fh:
        return load_catalog(fh, merge_builtin=merge_builtin)


__all__ = [
    "Catalog",
    "CatalogError",
    "NetworkDeviceSpec",
    "NetworkKind",
    "StorageRackSpec",
    "builtin_catalog",
    "catalog_from_dict",
    "catalog_to_dict",
    "dump_catalog",
    "load_catalog",
    "load_catalog_file",
    "per_bit_energy",
]
