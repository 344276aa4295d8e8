"""Storage power density (W/TB) for racks, rack fleets and device networks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .catalog import Catalog, StorageRackSpec


@dataclass(frozen=True)
class StoragePowerDensity:
    watts_per_tb: float
    source: str = ""

    def __post_init__(self) -> None:
        if not math.isfinite(self.watts_per_tb) or self.watts_per_tb <= 0:
            raise ValueError(f"watts_per_tb must be > 0 (got {self.watts_per_tb!r})")


@dataclass(frozen=True)
class DiskVariant:
    capacity_tb: float
    disk_watts: float
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not self.capacity_tb > 0:
            raise ValueError(f"disk capacity_tb must be > 0 (got {self.capacity_tb!r})")
        if not self.disk_watts > 0:
            raise ValueError(f"disk_watts must be > 0 (got {self.disk_watts!r})")
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"disk weight must be in [0, 1] (got {self.weight!r})")


@dataclass(frozen=True)
class DistributedDeviceSpec:
    """A home storage node: one single-board computer plus one disk.

    ``disk_variants`` describes the disk population as a weighted mixture;
    the network-wide mean disk wattage and capacity enter the density.
    """

    board_watts: float
    disk_variants: tuple[DiskVariant, ...]
    redundancy: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "disk_variants", tuple(self.disk_variants))
        if not self.board_watts > 0:
            raise ValueError(f"board_watts must be > 0 (got {self.board_watts!r})")
        if not self.disk_variants:
            raise ValueError("at least one disk variant is required")
        total = math.fsum(v.weight for v in self.disk_variants)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"disk variant weights must sum to 1 (got {total!r})")
        if not self.redundancy >= 1.0:
            raise ValueError(f"redundancy must be >= 1 (got {self.redundancy!r})")

    @property
    def mean_disk_watts(self) -> float:
        return math.fsum(v.weight * v.disk_watts for v in self.disk_variants)

    @property
    def mean_capacity_tb(self) -> float:
        return math.fsum(v.weight * v.capacity_tb for v in self.disk_variants)


# ~1 W board; half 1 TB / 1.4 W disks, half 2 TB / 1.7 W; erasure coding 24+12 -> 1.5x
CUBBIT_CELL = DistributedDeviceSpec(
    board_watts=1.0,
    disk_variants=(DiskVariant(1.0, 1.4, 0.5), DiskVariant(2.0, 1.7, 0.5)),
    redundancy=1.5,
)


class StorageDelta(NamedTuple):
    delta_watts_per_tb: float
    relative_reduction: float


def rack_storage_power(rack: StorageRackSpec) -> StoragePowerDensity:
    """PUE x redundancy x peak watts / capacity."""
    return StoragePowerDensity(
        rack.pue * rack.redundancy * rack.peak_watts / rack.capacity_tb, rack.name
    )


def fleet_mean_storage_power(
    racks: Sequence[StorageRackSpec],
    weights: Sequence[float] | None = None,
    source: str = "data-center fleet mean",
) -> StoragePowerDensity:
    """Mean rack density over a fleet.

    Uniform by default. Optional ``weights`` (e.g. market shares) must be
    nonnegative, one per rack, and are normalized to sum to 1.
    """
    racks = list(racks)
    if not racks:
        raise ValueError("fleet must contain at least one rack")
    densities = [rack_storage_power(r).watts_per_tb for r in racks]
    if weights is None:
        return StoragePowerDensity(math.fsum(densities) / len(densities), source)
    weights = list(weights)
    if len(weights) != len(racks):
        raise ValueError(f"expected {len(racks)} weights, got {len(weights)}")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    total = math.fsum(weights)
    if total <= 0:
        raise ValueError("weights must not all be zero")
    return StoragePowerDensity(
        math.fsum(w * d for w, d in zip(weights, densities)) / total, source
    )


def datacenter_racks(catalog: Catalog) -> list[StorageRackSpec]:
    """Catalog racks that describe data-center appliances."""
    return [r for r in catalog.storage_racks.values() if not r.density_precomputed]


def distributed_storage_power(
    device: DistributedDeviceSpec, source: str = "distributed network"
) -> StoragePowerDensity:
    watts = device.board_watts + device.mean_disk_watts
    return StoragePowerDensity(device.redundancy * watts / device.mean_capacity_tb, source)


def storage_delta(
    baseline: StoragePowerDensity, alternative: StoragePowerDensity
) -> StorageDelta:
    """Baseline minus alternative, and that difference relative to the baseline.

    The reduction is negative when the alternative draws more power.
    """
    delta = baseline.watts_per_tb - alternative.watts_per_tb
    return StorageDelta(delta, delta / baseline.watts_per_tb)
