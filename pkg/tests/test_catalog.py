import io
import json

import pytest

from gridprint.catalog import (
    Catalog,
    CatalogError,
    NetworkDeviceSpec,
    NetworkKind,
    StorageRackSpec,
    builtin_catalog,
    catalog_to_dict,
    dump_catalog,
    load_catalog,
    per_bit_energy,
)

from . import oracles


def test_builtin_matches_tables_cell_by_cell():
    cat = builtin_catalog()
    assert list(cat.storage_racks) == list(oracles.STORAGE_TABLE)
    for name, (cap, watts, pue, red) in oracles.STORAGE_TABLE.items():
        rack = cat.storage_racks[name]
        assert (rack.capacity_tb, rack.peak_watts, rack.pue, rack.redundancy) == (
            float(cap), float(watts), float(pue), float(red)
        )
    assert list(cat.network_devices) == list(oracles.NETWORK_TABLE)
    for name, (kind, cap, watts) in oracles.NETWORK_TABLE.items():
        dev = cat.network_devices[name]
        assert (dev.kind.value, dev.capacity_gbps, dev.power_watts) == (kind, float(cap), float(watts))


def test_builtin_spot_values():
    cat = builtin_catalog()
    assert cat.storage_racks["Storage Pod"].redundancy == 1.1
    assert cat.network_devices["Cisco CRS-1"].capacity_gbps == 640
    assert len(cat.storage_racks) == 6
    assert len(cat.network_devices) == 6
    assert cat.storage_racks["Cubbit Cell"].density_precomputed
    assert sum(r.density_precomputed for r in cat.storage_racks.values()) == 1


@pytest.mark.parametrize(
    "name, expected",
    [("Cisco 6509", 23.75), ("Juniper E320", 55.0)],
)
def test_per_bit_energy_table(name, expected):
    assert per_bit_energy(builtin_catalog().network_devices[name]) == pytest.approx(expected, rel=1e-12)


def test_per_bit_energy_identity():
    dev = NetworkDeviceSpec("unit", NetworkKind.CORE_ROUTER, 1, 1)
    assert per_bit_energy(dev) == 1.0


@pytest.mark.parametrize(
    "kwargs, message",
    [
        (dict(capacity_tb=0), "capacity_tb must be > 0"),
        (dict(peak_watts=-1), "peak_watts must be > 0"),
        (dict(pue=0.9), "pue must be >= 1.0"),
        (dict(redundancy=0.5), "redundancy must be >= 1.0"),
        (dict(name=""), "name must be a nonempty string"),
    ],
)
def test_rack_invariants(kwargs, message):
    base = dict(name="r", capacity_tb=1, peak_watts=1, pue=1, redundancy=1)
    base.update(kwargs)
    with pytest.raises(CatalogError, match=message):
        StorageRackSpec(**base)


def test_device_invariants():
    with pytest.raises(CatalogError, match="capacity_gbps must be > 0"):
        NetworkDeviceSpec("d", "core_router", 0, 10)
    with pytest.raises(CatalogError, match="kind must be one of"):
        NetworkDeviceSpec("d", "hub", 1, 10)


def test_catalog_is_immutable():
    cat = builtin_catalog()
    with pytest.raises(AttributeError):
        cat.foo = 1
    with pytest.raises(TypeError):
        cat.storage_racks["x"] = None


def test_first_of_kind_missing():
    cat = Catalog([], [NetworkDeviceSpec("d", "core_router", 1, 1)])
    with pytest.raises(CatalogError, match="no device of kind wdm_link"):
        cat.first_of_kind("wdm_link")


ONE_RACK = {"storage_racks": [{"name": "r", "capacity_tb": 10, "peak_watts": 100, "pue": 1.2, "redundancy": 1.5}]}


def test_load_one_rack():
    cat = load_catalog(io.BytesIO(json.dumps(ONE_RACK).encode()))
    assert len(cat.storage_racks) == 1
    assert len(cat.network_devices) == 0
    assert cat.storage_racks["r"].pue == 1.2


def test_load_duplicate_names():
    doc = {"storage_racks": ONE_RACK["storage_racks"] * 2}
    with pytest.raises(CatalogError, match="duplicate storage rack name 'r'"):
        load_catalog(json.dumps(doc))


def test_load_rejects_unknown_field():
    doc = {"storage_racks": [dict(ONE_RACK["storage_racks"][0], peak_wats=3)]}
    with pytest.raises(CatalogError, match=r"storage_racks\[0\].*unknown field\(s\) peak_wats"):
        load_catalog(json.dumps(doc))


def test_load_rejects_unit_suffix():
    doc = {"storage_racks": [dict(ONE_RACK["storage_racks"][0], capacity_tb="10 TB")]}
    with pytest.raises(CatalogError, match="expected a number"):
        load_catalog(json.dumps(doc))


def test_load_names_invalid_spec():
    doc = {"storage_racks": [dict(ONE_RACK["storage_racks"][0], capacity_tb=0)]}
    with pytest.raises(CatalogError, match=r"'r'.*capacity_tb must be > 0"):
        load_catalog(json.dumps(doc))


def test_parse_error_has_position():
    with pytest.raises(CatalogError, match="line 2, column"):
        load_catalog('{"storage_racks": [\n  oops]}')


def test_builtin_round_trip():
    text = dump_catalog(builtin_catalog())
    assert load_catalog(text.encode()) == builtin_catalog()
    assert load_catalog(io.StringIO(text)) == builtin_catalog()


def test_merge_builtin_overrides_by_name():
    doc = {"storage_racks": [dict(ONE_RACK["storage_racks"][0], name="Storage Pod")]}
    cat = load_catalog(json.dumps(doc), merge_builtin=True)
    assert len(cat.storage_racks) == 6
    assert cat.storage_racks["Storage Pod"].capacity_tb == 10
    assert catalog_to_dict(cat)["network_devices"] == catalog_to_dict(builtin_catalog())["network_devices"]
