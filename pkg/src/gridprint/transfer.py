"""Transfer energy per GB along a network path.

A path is a list of device traversals with multiplicities, scaled by a
global overhead product (packet redundancy, cooling, under-utilization):

    E [J/GB] = overheads * sum(m_i * P_i / C_i) * 8

The presets reproduce the published coefficients literally. The core and
WDM multiplicities already include a x2 packet-redundancy factor even though
the overhead product also carries redundancy; that double count is the
published convention and is kept on purpose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .catalog import Catalog, CatalogError, NetworkKind, per_bit_energy
from .units import BITS_PER_BYTE

PACKET_REDUNDANCY = 2


@dataclass(frozen=True)
class OverheadFactors:
    redundancy: float = 2.0
    cooling_overheads: float = 1.5
    utilization: float = 2.0

    def __post_init__(self) -> None:
        for name in ("redundancy", "cooling_overheads", "utilization"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 1.0:
                raise ValueError(f"overhead {name} must be >= 1 (got {value!r})")

    @property
    def product(self) -> float:
        return self.redundancy * self.cooling_overheads * self.utilization


@dataclass(frozen=True)
class PathSegment:
    """``multiplicity`` traversals of the named device.

    ``kind`` is optional; presets set it so hop rebuilding works without a
    catalog at hand.
    """

    device_name: str
    multiplicity: float
    kind: NetworkKind | None = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.multiplicity) or self.multiplicity <= 0:
            raise ValueError(
                f"segment {self.device_name!r}: multiplicity must be > 0 "
                f"(got {self.multiplicity!r})"
            )
        if self.kind is not None:
            object.__setattr__(self, "kind", NetworkKind(self.kind))


@dataclass(frozen=True)
class NetworkPath:
    name: str
    segments: tuple[PathSegment, ...]
    overheads: OverheadFactors = field(default_factory=OverheadFactors)

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise ValueError(f"path {self.name!r} must have at least one segment")

    @property
    def multiplicities(self) -> tuple[float, ...]:
        return tuple(s.multiplicity for s in self.segments)

    def segment_of_kind(self, kind: NetworkKind, catalog: Catalog | None = None) -> int | None:
        for i, seg in enumerate(self.segments):
            seg_kind = seg.kind
            if seg_kind is None and catalog is not None and seg.device_name in catalog.network_devices:
                seg_kind = catalog.network_devices[seg.device_name].kind
            if seg_kind is kind:
                return i
        return None


@dataclass(frozen=True)
class HopModel:
    baseline_hops: int = 2
    km_per_core_hop: float = 800.0

    def __post_init__(self) -> None:
        if self.baseline_hops < 0:
            raise ValueError("baseline_hops must be >= 0")
        if not self.km_per_core_hop > 0:
            raise ValueError("km_per_core_hop must be > 0")


class SegmentEnergy(NamedTuple):
    device_name: str
    kind: NetworkKind
    multiplicity: float
    j_per_gbit: float
    j_per_gb: float


def segment_energies(path: NetworkPath, catalog: Catalog) -> list[SegmentEnergy]:
    """Per-segment contribution to the path energy, overheads included."""
    overhead = path.overheads.product
    out = []
    for seg in path.segments:
        dev = catalog.device(seg.device_name)
        e_bit = per_bit_energy(dev)
        out.append(
            SegmentEnergy(
                dev.name,
                dev.kind,
                seg.multiplicity,
                e_bit,
                overhead * seg.multiplicity * e_bit * BITS_PER_BYTE,
            )
        )
    return out


def path_energy_per_gb(path: NetworkPath, catalog: Catalog) -> float:
    """Transfer energy of ``path`` in joules per (decimal) gigabyte."""
    per_gbit = 0.0
    for seg in path.segments:
        per_gbit += seg.multiplicity * per_bit_energy(catalog.device(seg.device_name))
    return path.overheads.product * per_gbit * BITS_PER_BYTE


def _build(
    name: str,
    catalog: Catalog,
    layout: list[tuple[NetworkKind, float]],
    overheads: OverheadFactors | None,
) -> NetworkPath:
    segments = [
        PathSegment(catalog.first_of_kind(kind).name, mult, kind) for kind, mult in layout
    ]
    return NetworkPath(name, tuple(segments), overheads or OverheadFactors())


def centralized_path(catalog: Catalog, overheads: OverheadFactors | None = None) -> NetworkPath:
    """User to data center: 9 core hops over 2 WDM spans, each doubled for redundancy."""
    return _build(
        "centralized",
        catalog,
        [
            (NetworkKind.ETHERNET_SWITCH, 3),  # two at the access points, one in the data center
            (NetworkKind.BROADBAND_GATEWAY, 1),
            (NetworkKind.DATACENTER_GATEWAY, 1),
            (NetworkKind.PROVIDER_EDGE, 2),
            (NetworkKind.CORE_ROUTER, 9 * PACKET_REDUNDANCY),
            (NetworkKind.WDM_LINK, 2 * PACKET_REDUNDANCY),
        ],
        overheads,
    )


def distributed_path(catalog: Catalog, overheads: OverheadFactors | None = None) -> NetworkPath:
    """Peer to peer inside a region: no data-center terms, no long-haul WDM,
    one broadband gateway per endpoint ISP and 2 core hops."""
    return _build(
        "distributed",
        catalog,
        [
            (NetworkKind.ETHERNET_SWITCH, 2),
            (NetworkKind.BROADBAND_GATEWAY, 2),
            (NetworkKind.PROVIDER_EDGE, 2),
            (NetworkKind.CORE_ROUTER, 2 * PACKET_REDUNDANCY),
        ],
        overheads,
    )


def core_hops_from_distance(distance_km: float, model: HopModel | None = None) -> int:
    """Core-router hops for a route of ``distance_km``.

    baseline + round-half-up(distance / km_per_core_hop); 80 km gives the
    baseline 2 hops and 5600 km gives 9.
    """
    model = model or HopModel()
    if not math.isfinite(distance_km) or distance_km < 0:
        raise ValueError(f"distance_km must be >= 0 (got {distance_km!r})")
    return model.baseline_hops + math.floor(distance_km / model.km_per_core_hop + 0.5)


def path_with_hops(
    template: NetworkPath,
    core_hops: int,
    wdm_spans: int,
    catalog: Catalog | None = None,
) -> NetworkPath:
    """Copy of ``template`` with core and WDM multiplicities rebuilt.

    Core multiplicity becomes ``core_hops * 2`` and WDM ``wdm_spans * 2``; a
    zero count drops the segment. If the template has no WDM segment and
    ``wdm_spans > 0``, one is appended using the catalog's first WDM device.
    ``catalog`` is also used to resolve kinds of segments built without one.
    """
    if core_hops < 0 or wdm_spans < 0:
        raise ValueError("core_hops and wdm_spans must be >= 0")
    core_idx = template.segment_of_kind(NetworkKind.CORE_ROUTER, catalog)
    if core_idx is None:
        raise ValueError(f"path {template.name!r} has no core_router segment")
    wdm_idx = template.segment_of_kind(NetworkKind.WDM_LINK, catalog)

    segments: list[PathSegment] = []
    for i, seg in enumerate(template.segments):
        if i == core_idx:
            if core_hops == 0:
                continue
            seg = replace(seg, multiplicity=core_hops * PACKET_REDUNDANCY, kind=NetworkKind.CORE_ROUTER)
        elif i == wdm_idx:
            if wdm_spans == 0:
                continue
            seg = replace(seg, multiplicity=wdm_spans * PACKET_REDUNDANCY, kind=NetworkKind.WDM_LINK)
        segments.append(seg)

    if wdm_idx is None and wdm_spans > 0:
        if catalog is None:
            raise ValueError(
                f"path {template.name!r} has no wdm_link segment; pass a catalog to add one"
            )
        try:
            dev = catalog.first_of_kind(NetworkKind.WDM_LINK)
        except CatalogError as exc:
            raise ValueError(str(exc)) from None
        segments.append(PathSegment(dev.name, wdm_spans * PACKET_REDUNDANCY, NetworkKind.WDM_LINK))

    return NetworkPath(template.name, tuple(segments), template.overheads)
