import csv
import io
import json
import subprocess
import sys

import pytest

from gridprint.catalog import builtin_catalog, dump_catalog
from gridprint.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_storage_text(capsys):
    code, out, err = run(capsys, "storage")
    assert code == 0 and err == ""
    assert "2.550" in out
    assert "11.345" in out
    assert "paper: 9 (Δ -2.3%)" in out


def test_storage_csv_rows(capsys):
    code, out, _ = run(capsys, "storage", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["name", "watts_per_tb"]
    assert len(rows) == 7
    assert {r[0] for r in rows[1:]} == set(builtin_catalog().storage_racks)


def test_missing_catalog_exits_2(capsys):
    code, out, err = run(capsys, "storage", "--catalog", "missing.json")
    assert code == 2
    assert out == ""
    assert "missing.json" in err


def test_invalid_catalog_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"storage_racks": [{"name": "x", "capacity_tb": 0, "peak_watts": 1, "pue": 1, "redundancy": 1}]}')
    code, out, err = run(capsys, "storage", "--catalog", str(bad))
    assert code == 2 and out == ""
    assert "capacity_tb must be > 0" in err


def test_catalog_env_var(capsys, tmp_path, monkeypatch):
    doc = json.loads(dump_catalog(builtin_catalog()))
    doc["storage_racks"] = doc["storage_racks"][:2]
    path = tmp_path / "cat.json"
    path.write_text(json.dumps(doc))
    monkeypatch.setenv("GRIDPRINT_CATALOG", str(path))
    code, out, _ = run(capsys, "storage", "--format", "csv")
    assert code == 0
    assert len(out.strip().splitlines()) == 3


def test_transfer_text_annotations(capsys):
    code, out, _ = run(capsys, "transfer")
    assert code == 0
    assert "24.325 kJ/GB" in out
    assert "paper: 23.9 (Δ +1.8%)" in out
    assert "paper: 11.9 (Δ +12.2%)" in out
    assert "discrepancy" in out


def test_transfer_json_breakdown_sums(capsys):
    _, out, _ = run(capsys, "transfer", "--format", "json")
    rep = json.loads(out)
    for entry in rep["paths"].values():
        total = sum(s["j_per_gb"] for s in entry["segments"])
        assert total == pytest.approx(entry["j_per_gb"], rel=1e-9)


def test_transfer_distance_80km_matches_preset(capsys):
    _, plain, _ = run(capsys, "transfer", "--format", "json")
    _, at80, _ = run(capsys, "transfer", "--format", "json", "--distance-km", "80")
    plain, at80 = json.loads(plain), json.loads(at80)
    assert at80["distributed_core_hops"] == 2
    assert at80["paths"]["distributed"]["j_per_gb"] == plain["paths"]["distributed"]["j_per_gb"]


def test_transfer_distance_changes_hops(capsys):
    _, out, _ = run(capsys, "transfer", "--format", "json", "--distance-km", "5600")
    rep = json.loads(out)
    assert rep["distributed_core_hops"] == 9
    core = [s for s in rep["paths"]["distributed"]["segments"] if s["kind"] == "core_router"]
    assert core[0]["multiplicity"] == 18


def test_compare_backup_paper_rounded(capsys):
    code, out, _ = run(capsys, "compare", "--preset", "backup", "--paper-rounded", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["mode"] == "paper_rounded"
    assert rep["delta_kwh"] == pytest.approx(1971.0)
    assert rep["delta_kgco2"] == pytest.approx(985.5)
    assert rep["backup_kgco2_per_pb_year"] == pytest.approx(39_420)


def test_compare_streaming_paper_rounded(capsys):
    _, out, _ = run(capsys, "compare", "--preset", "streaming", "--paper-rounded", "--format", "json")
    rep = json.loads(out)
    assert abs(rep["delta_kwh"] - 14_136) / 14_136 < 1e-3


def test_paper_rounded_only_touches_deltas(capsys):
    _, a, _ = run(capsys, "compare", "--preset", "streaming", "--format", "json")
    _, b, _ = run(capsys, "compare", "--preset", "streaming", "--format", "json", "--paper-rounded")
    a, b = json.loads(a), json.loads(b)
    assert a["baseline"] == b["baseline"] and a["alternative"] == b["alternative"]
    assert a["per_tb_series"] == b["per_tb_series"]
    assert a["delta_kwh"] != b["delta_kwh"]
    _, t1, _ = run(capsys, "transfer", "--format", "json")
    _, t2, _ = run(capsys, "transfer", "--format", "json", "--paper-rounded")
    assert t1 == t2


def test_compare_zero_scenario(capsys, tmp_path):
    path = tmp_path / "zero.json"
    path.write_text('{"stored_tb": 0, "daily_transfer_tb": 0}')
    code, out, err = run(capsys, "compare", "--scenario", str(path), "--format", "json")
    assert code == 0 and err == ""
    rep = json.loads(out)
    assert rep["scenario"]["name"] == "zero"
    assert rep["delta_kwh"] == 0 and rep["delta_kgco2"] == 0
    assert rep["baseline"]["total_kwh"] == 0
    assert rep["relative_reduction"] is None
    code, out, _ = run(capsys, "compare", "--scenario", str(path))
    assert code == 0 and "n/a" in out


def test_compare_scenario_errors(capsys, tmp_path):
    code, _, err = run(capsys, "compare", "--scenario", str(tmp_path / "nope.json"))
    assert code == 2 and "nope.json" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"stored_tb": 1, "daily_transfer_tb": 0, "baseline": "edge"}')
    code, out, err = run(capsys, "compare", "--scenario", str(bad))
    assert code == 2 and out == "" and "unknown architecture" in err


def test_compare_carbon_intensity_override(capsys):
    _, out, _ = run(capsys, "compare", "--preset", "backup", "--paper-rounded", "--carbon-intensity", "0.25", "--format", "json")
    rep = json.loads(out)
    assert rep["delta_kgco2"] == pytest.approx(1971 * 0.25)


def test_compare_csv_schema(capsys):
    _, out, _ = run(capsys, "compare", "--preset", "streaming", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["series", "architecture", "kgco2_per_tb_year"]
    assert {(r["series"], r["architecture"]) for r in rows} == {
        ("stored", "centralized"), ("stored", "distributed"),
        ("daily_streamed", "centralized"), ("daily_streamed", "distributed"),
    }


def test_compare_fleet_surfaces_deviation(capsys):
    _, out, _ = run(capsys, "compare", "--preset", "fleet")
    assert "paper: 6.7e+08 (Δ -14.5%)" in out
    assert "30000 TB/day (not used)" in out


@pytest.mark.parametrize("preset", ["backup", "streaming", "fleet"])
@pytest.mark.parametrize("rounded", [[], ["--paper-rounded"]])
def test_json_report_recomputes(capsys, preset, rounded):
    _, out, _ = run(capsys, "compare", "--preset", preset, "--format", "json", *rounded)
    rep = json.loads(out)
    for role in ("baseline", "alternative"):
        e = rep[role]
        assert e["total_kwh"] == e["storage_kwh"] + e["transfer_kwh"]
    if rep["mode"] == "engine":
        assert rep["delta_kwh"] == rep["baseline"]["total_kwh"] - rep["alternative"]["total_kwh"]
    else:
        assert rep["delta_kwh"] == rep["delta_storage_kwh"] + rep["delta_transfer_kwh"]
    assert rep["delta_kgco2"] == rep["delta_kwh"] * rep["scenario"]["carbon_intensity"]
    assert rep["relative_reduction"] == rep["delta_kwh"] / rep["baseline"]["total_kwh"]


def test_usage_error_goes_to_stderr():
    proc = subprocess.run(
        [sys.executable, "-m", "gridprint", "compare", "--preset", "backup", "--scenario", "x.json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    assert proc.stdout == ""
    assert "not allowed with argument" in proc.stderr


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gridprint", "storage"], capture_output=True, text=True)
    assert proc.returncode == 0 and "11.345" in proc.stdout
