"""Time-integrated scenarios: energy, architecture deltas and emissions."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields
from typing import IO, Any, Mapping, NamedTuple

from . import reference as ref
from .catalog import Catalog
from .storage import (
    CUBBIT_CELL,
    DistributedDeviceSpec,
    StoragePowerDensity,
    datacenter_racks,
    distributed_storage_power,
    fleet_mean_storage_power,
)
from .transfer import (
    NetworkPath,
    OverheadFactors,
    PathSegment,
    centralized_path,
    distributed_path,
    path_energy_per_gb,
)
from .units import (
    DAYS_PER_YEAR,
    GB_PER_TB,
    HOURS_PER_DAY,
    HOURS_PER_YEAR,
    J_PER_KWH,
    MB_PER_TB,
    TB_PER_PB,
    W_PER_KW,
)

DEFAULT_CARBON_INTENSITY = 0.5  # kgCO2 per kWh


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class ArchitectureModel:
    name: str
    storage: StoragePowerDensity
    transfer_j_per_gb: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.transfer_j_per_gb) or self.transfer_j_per_gb <= 0:
            raise ValueError(f"{self.name}: transfer_j_per_gb must be > 0")

    @property
    def transfer_kwh_per_tb(self) -> float:
        return self.transfer_j_per_gb * GB_PER_TB / J_PER_KWH


def _nonneg(name: str, value: float) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{name} must be a number (got {value!r})")
    if not math.isfinite(value) or value < 0:
        raise ScenarioError(f"{name} must be >= 0 (got {value!r})")


@dataclass(frozen=True)
class Scenario:
    name: str
    stored_tb: float
    daily_transfer_tb: float
    duration_days: float = DAYS_PER_YEAR
    carbon_intensity: float = DEFAULT_CARBON_INTENSITY

    def __post_init__(self) -> None:
        _nonneg("stored_tb", self.stored_tb)
        _nonneg("daily_transfer_tb", self.daily_transfer_tb)
        _nonneg("carbon_intensity", self.carbon_intensity)
        _nonneg("duration_days", self.duration_days)
        if self.duration_days == 0:
            raise ScenarioError("duration_days must be > 0")

    @property
    def hours(self) -> float:
        return self.duration_days * HOURS_PER_DAY


class EnergyBreakdown(NamedTuple):
    storage_kwh: float
    transfer_kwh: float
    total_kwh: float


def scenario_energy(scenario: Scenario, arch: ArchitectureModel) -> EnergyBreakdown:
    storage = scenario.stored_tb * arch.storage.watts_per_tb * scenario.hours / W_PER_KW
    transfer = (
        scenario.daily_transfer_tb * GB_PER_TB * arch.transfer_j_per_gb / J_PER_KWH
    ) * scenario.duration_days
    return EnergyBreakdown(storage, transfer, storage + transfer)


@dataclass(frozen=True)
class PaperRounding:
    """Rounded baseline-minus-alternative intermediates used in place of engine deltas."""

    storage_delta_w_per_tb: float = ref.ROUNDED_STORAGE_DELTA_W_PER_TB
    transfer_delta_kwh_per_tb: float = ref.ROUNDED_TRANSFER_DELTA_KWH_PER_TB


@dataclass(frozen=True)
class ScenarioReport:
    scenario: Scenario
    baseline_name: str
    baseline: EnergyBreakdown
    alternative_name: str
    alternative: EnergyBreakdown
    delta_storage_kwh: float
    delta_transfer_kwh: float
    delta_kwh: float
    delta_kgco2: float
    relative_reduction: float | None  # None when the baseline uses no energy
    paper_rounded: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario": asdict(self.scenario),
            "mode": "paper_rounded" if self.paper_rounded else "engine",
            "baseline": {"name": self.baseline_name, **self.baseline._asdict()},
            "alternative": {"name": self.alternative_name, **self.alternative._asdict()},
            "delta_storage_kwh": self.delta_storage_kwh,
            "delta_transfer_kwh": self.delta_transfer_kwh,
            "delta_kwh": self.delta_kwh,
            "delta_kgco2": self.delta_kgco2,
            "relative_reduction": self.relative_reduction,
        }


def compare(
    scenario: Scenario,
    baseline: ArchitectureModel,
    alternative: ArchitectureModel,
    rounding: PaperRounding | None = None,
) -> ScenarioReport:
    """Energy and emissions saved by running ``scenario`` on ``alternative``.

    With ``rounding``, the storage and transfer deltas come from the rounded
    per-TB intermediates instead of the two architectures' exact energies;
    the per-architecture energies are unchanged.
    """
    base = scenario_energy(scenario, baseline)
    alt = scenario_energy(scenario, alternative)
    if rounding is None:
        d_storage = base.storage_kwh - alt.storage_kwh
        d_transfer = base.transfer_kwh - alt.transfer_kwh
        delta = base.total_kwh - alt.total_kwh
    else:
        d_storage = scenario.stored_tb * rounding.storage_delta_w_per_tb * scenario.hours / W_PER_KW
        d_transfer = (
            scenario.duration_days * rounding.transfer_delta_kwh_per_tb * scenario.daily_transfer_tb
        )
        delta = d_storage + d_transfer
    relative = delta / base.total_kwh if base.total_kwh != 0 else None
    return ScenarioReport(
        scenario=scenario,
        baseline_name=baseline.name,
        baseline=base,
        alternative_name=alternative.name,
        alternative=alt,
        delta_storage_kwh=d_storage,
        delta_transfer_kwh=d_transfer,
        delta_kwh=delta,
        delta_kgco2=delta * scenario.carbon_intensity,
        relative_reduction=relative,
        paper_rounded=rounding is not None,
    )


def backup_footprint_per_pb(delta_w_per_tb: float, carbon_intensity: float = DEFAULT_CARBON_INTENSITY) -> float:
    """kgCO2 per year saved per petabyte held, from a storage-density delta."""
    return TB_PER_PB * delta_w_per_tb * HOURS_PER_YEAR / W_PER_KW * carbon_intensity


def per_pb_backup_footprint(
    baseline: StoragePowerDensity | ArchitectureModel,
    alternative: StoragePowerDensity | ArchitectureModel,
    carbon_intensity: float = DEFAULT_CARBON_INTENSITY,
) -> float:
    b = baseline.storage if isinstance(baseline, ArchitectureModel) else baseline
    a = alternative.storage if isinstance(alternative, ArchitectureModel) else alternative
    return backup_footprint_per_pb(b.watts_per_tb - a.watts_per_tb, carbon_intensity)


def annual_kgco2_per_stored_tb(arch: ArchitectureModel, carbon_intensity: float) -> float:
    """Yearly emissions of keeping 1 TB stored."""
    return arch.storage.watts_per_tb * HOURS_PER_YEAR / W_PER_KW * carbon_intensity


def annual_kgco2_per_daily_tb(arch: ArchitectureModel, carbon_intensity: float) -> float:
    """Yearly emissions of transferring 1 TB every day."""
    return DAYS_PER_YEAR * arch.transfer_kwh_per_tb * carbon_intensity


# --- global fleet ----------------------------------------------------------


@dataclass(frozen=True)
class FleetModel:
    """User base of a consumer cloud service.

    ``daily_transfer_tb`` is taken as given. ``per_user_daily_transfer_mb``
    is informational only and is never used to derive the transfer volume.
    """

    users: float
    free_quota_gb: float
    premium_quota_tb: float
    conversion_rate: float
    overbooking: float
    daily_transfer_tb: float
    per_user_daily_transfer_mb: float | None = None

    def __post_init__(self) -> None:
        for name in ("users", "free_quota_gb", "premium_quota_tb", "daily_transfer_tb"):
            _nonneg(name, getattr(self, name))
        _nonneg("conversion_rate", self.conversion_rate)
        if self.conversion_rate > 1:
            raise ScenarioError(f"conversion_rate must be in [0, 1] (got {self.conversion_rate!r})")
        _nonneg("overbooking", self.overbooking)
        if self.overbooking < 1:
            raise ScenarioError(f"overbooking must be >= 1 (got {self.overbooking!r})")
        if self.per_user_daily_transfer_mb is not None:
            _nonneg("per_user_daily_transfer_mb", self.per_user_daily_transfer_mb)


class FleetVolume(NamedTuple):
    theoretical_tb: float
    effective_tb: float


def fleet_volume(fleet: FleetModel) -> FleetVolume:
    per_user_tb = (
        fleet.conversion_rate * fleet.premium_quota_tb
        + (1 - fleet.conversion_rate) * fleet.free_quota_gb / GB_PER_TB
    )
    theoretical = fleet.users * per_user_tb
    return FleetVolume(theoretical, theoretical / fleet.overbooking)


def implied_daily_transfer_tb(fleet: FleetModel) -> float | None:
    """Daily volume implied by the per-user figure, if one was given."""
    if fleet.per_user_daily_transfer_mb is None:
        return None
    return fleet.users * fleet.per_user_daily_transfer_mb / MB_PER_TB


def fleet_scenario(
    fleet: FleetModel,
    duration_days: float = DAYS_PER_YEAR,
    carbon_intensity: float = DEFAULT_CARBON_INTENSITY,
    name: str = "fleet",
) -> Scenario:
    return Scenario(
        name=name,
        stored_tb=fleet_volume(fleet).effective_tb,
        daily_transfer_tb=fleet.daily_transfer_tb,
        duration_days=duration_days,
        carbon_intensity=carbon_intensity,
    )


# --- presets ---------------------------------------------------------------

BACKUP = Scenario("backup", stored_tb=25, daily_transfer_tb=0)
STREAMING = Scenario("streaming", stored_tb=25, daily_transfer_tb=10)
PAPER_FLEET = FleetModel(
    users=600e6,
    free_quota_gb=2,
    premium_quota_tb=2,
    conversion_rate=0.03,
    overbooking=5,
    daily_transfer_tb=190,
    per_user_daily_transfer_mb=50,
)
PRESETS = ("backup", "streaming", "fleet")


def preset_scenario(name: str, carbon_intensity: float | None = None) -> Scenario:
    if name == "backup":
        scenario = BACKUP
    elif name == "streaming":
        scenario = STREAMING
    elif name == "fleet":
        scenario = fleet_scenario(PAPER_FLEET)
    else:
        raise ScenarioError(f"unknown preset {name!r} (choose from {', '.join(PRESETS)})")
    if carbon_intensity is not None:
        scenario = Scenario(
            scenario.name,
            scenario.stored_tb,
            scenario.daily_transfer_tb,
            scenario.duration_days,
            carbon_intensity,
        )
    return scenario


# --- architectures ---------------------------------------------------------


@dataclass(frozen=True)
class Architectures:
    centralized: ArchitectureModel
    distributed: ArchitectureModel
    paths: Mapping[str, NetworkPath] = field(default_factory=dict)

    def get(self, name: str) -> ArchitectureModel:
        if name == self.centralized.name:
            return self.centralized
        if name == self.distributed.name:
            return self.distributed
        raise ScenarioError(
            f"unknown architecture {name!r} (choose from centralized, distributed)"
        )


def build_architectures(
    catalog: Catalog,
    device: DistributedDeviceSpec = CUBBIT_CELL,
    paths: Mapping[str, NetworkPath] | None = None,
) -> Architectures:
    """The data-center and peer-to-peer models from a catalog.

    Data-center storage is the unweighted mean over the catalog's
    data-center racks; ``paths`` may override either preset path by name.
    """
    paths = dict(paths or {})
    central_path = paths.get("centralized") or centralized_path(catalog)
    dist_path = paths.get("distributed") or distributed_path(catalog)
    central = ArchitectureModel(
        "centralized",
        fleet_mean_storage_power(datacenter_racks(catalog)),
        path_energy_per_gb(central_path, catalog),
    )
    dist = ArchitectureModel(
        "distributed",
        distributed_storage_power(device),
        path_energy_per_gb(dist_path, catalog),
    )
    return Architectures(central, dist, {"centralized": central_path, "distributed": dist_path})


# --- scenario files --------------------------------------------------------

_SCENARIO_KEYS = {f.name for f in fields(Scenario)}
_FLEET_KEYS = {f.name for f in fields(FleetModel)}
_FILE_KEYS = _SCENARIO_KEYS | {"fleet", "baseline", "alternative", "paths"}


@dataclass(frozen=True)
class ScenarioFile:
    scenario: Scenario
    baseline: str = "centralized"
    alternative: str = "distributed"
    paths: Mapping[str, NetworkPath] = field(default_factory=dict)
    fleet: FleetModel | None = None


def _check_keys(obj: Any, allowed: set[str], where: str) -> dict[str, Any]:
    if not isinstance(obj, dict):
        raise ScenarioError(f"{where}: expected an object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ScenarioError(f"{where}: unknown field(s) {', '.join(unknown)}")
    return obj


def _path_from_dict(name: str, obj: Any) -> NetworkPath:
    where = f"paths.{name}"
    obj = _check_keys(obj, {"segments", "overheads"}, where)
    raw_segments = obj.get("segments")
    if not isinstance(raw_segments, list):
        raise ScenarioError(f"{where}.segments: expected an array")
    segments = []
    for i, seg in enumerate(raw_segments):
        seg = _check_keys(seg, {"device_name", "multiplicity"}, f"{where}.segments[{i}]")
        try:
            segments.append(PathSegment(seg["device_name"], seg["multiplicity"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"{where}.segments[{i}]: {exc}") from None
    overheads = _check_keys(
        obj.get("overheads", {}), {"redundancy", "cooling_overheads", "utilization"}, f"{where}.overheads"
    )
    try:
        return NetworkPath(name, tuple(segments), OverheadFactors(**overheads))
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def scenario_from_dict(doc: Any, default_name: str = "scenario") -> ScenarioFile:
    doc = _check_keys(doc, _FILE_KEYS, "scenario")
    name = doc.get("name", default_name)
    duration = doc.get("duration_days", DAYS_PER_YEAR)
    intensity = doc.get("carbon_intensity", DEFAULT_CARBON_INTENSITY)
    fleet = None
    try:
        if "fleet" in doc:
            clash = sorted({"stored_tb", "daily_transfer_tb"} & set(doc))
            if clash:
                raise ScenarioError(f"scenario: {', '.join(clash)} cannot be combined with fleet")
            raw = _check_keys(doc["fleet"], _FLEET_KEYS, "scenario.fleet")
            missing = sorted(_FLEET_KEYS - {"per_user_daily_transfer_mb"} - set(raw))
            if missing:
                raise ScenarioError(f"scenario.fleet: missing field(s) {', '.join(missing)}")
            fleet = FleetModel(**raw)
            scenario = fleet_scenario(fleet, duration, intensity, name)
        else:
            missing = sorted({"stored_tb", "daily_transfer_tb"} - set(doc))
            if missing:
                raise ScenarioError(f"scenario: missing field(s) {', '.join(missing)}")
            scenario = Scenario(name, doc["stored_tb"], doc["daily_transfer_tb"], duration, intensity)
    except TypeError as exc:
        raise ScenarioError(f"scenario: {exc}") from None
    paths_raw = _check_keys(doc.get("paths", {}), {"centralized", "distributed"}, "scenario.paths")
    paths = {k: _path_from_dict(k, v) for k, v in paths_raw.items()}
    return ScenarioFile(
        scenario,
        doc.get("baseline", "centralized"),
        doc.get("alternative", "distributed"),
        paths,
        fleet,
    )


def load_scenario(source: IO[bytes] | IO[str] | bytes | str, default_name: str = "scenario") -> ScenarioFile:
    raw = source if isinstance(source, (bytes, str)) else source.read()
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"scenario parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return scenario_from_dict(doc, default_name)
