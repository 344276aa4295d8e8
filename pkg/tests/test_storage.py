import pytest

from gridprint.catalog import StorageRackSpec, builtin_catalog
from gridprint.storage import (
    CUBBIT_CELL,
    DiskVariant,
    DistributedDeviceSpec,
    StoragePowerDensity,
    datacenter_racks,
    distributed_storage_power,
    fleet_mean_storage_power,
    rack_storage_power,
    storage_delta,
)

from . import oracles

RACKS = builtin_catalog().storage_racks


@pytest.mark.parametrize("name", oracles.DATACENTER_RACKS)
def test_rack_density_matches_oracle(name):
    assert rack_storage_power(RACKS[name]).watts_per_tb == pytest.approx(
        float(oracles.rack_density(name)), rel=1e-12
    )


def test_rack_density_examples():
    assert rack_storage_power(RACKS["HP SO 5650"]).watts_per_tb == pytest.approx(9.433, abs=5e-4)
    assert rack_storage_power(RACKS["Storage Pod"]).watts_per_tb == pytest.approx(5.5, rel=1e-12)
    unit = StorageRackSpec("unit", 1, 1, 1, 1)
    assert rack_storage_power(unit).watts_per_tb == 1.0
    assert rack_storage_power(unit).source == "unit"


def test_fleet_mean():
    racks = datacenter_racks(builtin_catalog())
    assert [r.name for r in racks] == oracles.DATACENTER_RACKS
    mean = fleet_mean_storage_power(racks)
    assert mean.watts_per_tb == pytest.approx(float(oracles.fleet_mean()), rel=1e-12)
    assert mean.watts_per_tb == pytest.approx(11.34, abs=0.05)


def test_fleet_mean_small_cases():
    pod = RACKS["Storage Pod"]
    assert fleet_mean_storage_power([pod]).watts_per_tb == pytest.approx(5.5)
    assert fleet_mean_storage_power([pod, pod]).watts_per_tb == fleet_mean_storage_power([pod]).watts_per_tb
    with pytest.raises(ValueError, match="fleet must contain at least one rack"):
        fleet_mean_storage_power([])


def test_fleet_mean_weighted():
    pod, hp = RACKS["Storage Pod"], RACKS["HP SO 3620"]
    w = fleet_mean_storage_power([pod, hp], weights=[3, 1]).watts_per_tb
    assert w == pytest.approx((3 * 5.5 + 20.233333333333334) / 4)
    assert fleet_mean_storage_power([pod, hp], weights=[1, 1]).watts_per_tb == pytest.approx(
        fleet_mean_storage_power([pod, hp]).watts_per_tb
    )
    with pytest.raises(ValueError):
        fleet_mean_storage_power([pod, hp], weights=[1])


def test_distributed_density_paper_mix():
    assert distributed_storage_power(CUBBIT_CELL).watts_per_tb == pytest.approx(
        float(oracles.cubbit_density()), abs=1e-12
    )
    assert distributed_storage_power(CUBBIT_CELL).watts_per_tb == pytest.approx(2.55, abs=0.005)


def test_distributed_density_single_disk():
    dev = DistributedDeviceSpec(1.0, (DiskVariant(1.0, 1.0, 1.0),), 1.0)
    assert distributed_storage_power(dev).watts_per_tb == 2.0


def test_distributed_density_doubles_with_power():
    doubled = DistributedDeviceSpec(
        2.0, (DiskVariant(1.0, 2.8, 0.5), DiskVariant(2.0, 3.4, 0.5)), 1.5
    )
    assert distributed_storage_power(doubled).watts_per_tb == pytest.approx(
        2 * distributed_storage_power(CUBBIT_CELL).watts_per_tb, rel=1e-12
    )


def test_distributed_device_invariants():
    with pytest.raises(ValueError, match="sum to 1"):
        DistributedDeviceSpec(1.0, (DiskVariant(1.0, 1.0, 0.5),), 1.0)
    with pytest.raises(ValueError, match="board_watts"):
        DistributedDeviceSpec(0.0, (DiskVariant(1.0, 1.0, 1.0),), 1.0)
    with pytest.raises(ValueError, match="redundancy"):
        DistributedDeviceSpec(1.0, (DiskVariant(1.0, 1.0, 1.0),), 0.9)
    with pytest.raises(ValueError, match="weight"):
        DiskVariant(1.0, 1.0, 1.5)


def test_storage_delta_examples():
    d = storage_delta(StoragePowerDensity(11.34), StoragePowerDensity(2.55))
    assert d.delta_watts_per_tb == pytest.approx(8.79)
    assert d.relative_reduction == pytest.approx(0.775, abs=5e-4)
    x = StoragePowerDensity(4.2)
    assert storage_delta(x, x) == (0.0, 0.0)
    assert storage_delta(StoragePowerDensity(10), StoragePowerDensity(20)) == (-10.0, -1.0)


def test_density_must_be_positive():
    with pytest.raises(ValueError):
        StoragePowerDensity(0.0)
