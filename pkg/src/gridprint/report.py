"""Report assembly and rendering (text, JSON, CSV).

Each ``*_report`` function returns a plain JSON-serializable dict; the
``render_*`` functions turn such a dict into output text.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Sequence

from . import reference as ref
from .catalog import Catalog
from .scenarios import (
    Architectures,
    FleetModel,
    PaperRounding,
    ScenarioReport,
    annual_kgco2_per_daily_tb,
    annual_kgco2_per_stored_tb,
    backup_footprint_per_pb,
    compare,
    fleet_volume,
    implied_daily_transfer_tb,
    per_pb_backup_footprint,
    Scenario,
)
from .storage import (
    DistributedDeviceSpec,
    datacenter_racks,
    distributed_storage_power,
    fleet_mean_storage_power,
    rack_storage_power,
    storage_delta,
)
from .transfer import (
    NetworkPath,
    core_hops_from_distance,
    distributed_path,
    centralized_path,
    path_energy_per_gb,
    path_with_hops,
    segment_energies,
)
from .units import j_per_gb_to_kwh_per_tb

STORAGE_CSV_COLUMNS = ("name", "watts_per_tb")
TRANSFER_CSV_COLUMNS = ("path", "device_name", "kind", "multiplicity", "j_per_gb")
COMPARE_CSV_COLUMNS = ("series", "architecture", "kgco2_per_tb_year")


def _paper(value: float, reference: ref.Reference) -> dict[str, Any]:
    return {
        "value": reference.value,
        "unit": reference.unit,
        "deviation": ref.deviation(value, reference.value),
        **({"note": reference.note} if reference.note else {}),
    }


# --- storage ---------------------------------------------------------------


def storage_report(catalog: Catalog, device: DistributedDeviceSpec) -> dict[str, Any]:
    fleet_racks = datacenter_racks(catalog)
    dist = distributed_storage_power(device)
    racks = []
    for rack in catalog.storage_racks.values():
        density = rack_storage_power(rack)
        racks.append(
            {
                "name": rack.name,
                "capacity_tb": rack.capacity_tb,
                "peak_watts": rack.peak_watts,
                "pue": rack.pue,
                "redundancy": rack.redundancy,
                "watts_per_tb": density.watts_per_tb,
                "in_fleet_mean": not rack.density_precomputed,
                "reduction_vs_distributed": storage_delta(density, dist).relative_reduction,
            }
        )
    out: dict[str, Any] = {
        "racks": racks,
        "distributed_watts_per_tb": dist.watts_per_tb,
        "paper": {"distributed_watts_per_tb": _paper(dist.watts_per_tb, ref.STORAGE_DISTRIBUTED_W_PER_TB)},
    }
    if fleet_racks:
        mean = fleet_mean_storage_power(fleet_racks)
        delta = storage_delta(mean, dist)
        out.update(
            fleet_mean_watts_per_tb=mean.watts_per_tb,
            delta_watts_per_tb=delta.delta_watts_per_tb,
            relative_reduction=delta.relative_reduction,
        )
        out["paper"]["delta_watts_per_tb"] = _paper(delta.delta_watts_per_tb, ref.STORAGE_DELTA_W_PER_TB)
        out["paper"]["relative_reduction"] = _paper(delta.relative_reduction, ref.STORAGE_REDUCTION)
    return out


def render_storage_text(rep: dict[str, Any]) -> str:
    rows = [
        (
            r["name"] + ("" if r["in_fleet_mean"] else " *"),
            f"{r['capacity_tb']:g}",
            f"{r['peak_watts']:g}",
            f"{r['pue']:g}",
            f"{r['redundancy']:g}",
            f"{r['watts_per_tb']:.3f}",
            f"{r['reduction_vs_distributed'] * 100:.1f}%",
        )
        for r in rep["racks"]
    ]
    lines = [
        "Storage power density (PUE x redundancy x peak W / capacity)",
        _table(("rack", "TB", "peak W", "PUE", "red.", "W/TB", "saved by p2p"), rows),
        "  * excluded from the data-center mean (density already folds in redundancy)",
        "",
    ]
    paper = rep["paper"]
    lines.append(
        f"distributed network      {rep['distributed_watts_per_tb']:10.3f} W/TB   "
        + _ann(paper["distributed_watts_per_tb"])
    )
    if "fleet_mean_watts_per_tb" in rep:
        lines += [
            f"data-center fleet mean   {rep['fleet_mean_watts_per_tb']:10.3f} W/TB",
            f"delta                    {rep['delta_watts_per_tb']:10.3f} W/TB   "
            + _ann(paper["delta_watts_per_tb"]),
            f"relative reduction       {rep['relative_reduction']:10.3f}        "
            + _ann(paper["relative_reduction"]),
        ]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def render_storage_csv(rep: dict[str, Any]) -> str:
    return _csv(STORAGE_CSV_COLUMNS, [(r["name"], repr(r["watts_per_tb"])) for r in rep["racks"]])


# --- transfer --------------------------------------------------------------


def transfer_paths(catalog: Catalog, distance_km: float | None = None) -> tuple[NetworkPath, NetworkPath, int | None]:
    """The two preset paths; with ``distance_km`` the distributed path's core
    hops are recomputed from distance (no WDM spans)."""
    central = centralized_path(catalog)
    dist = distributed_path(catalog)
    hops = None
    if distance_km is not None:
        hops = core_hops_from_distance(distance_km)
        dist = path_with_hops(dist, hops, 0, catalog)
    return central, dist, hops


def _path_entry(path: NetworkPath, catalog: Catalog, reference: ref.Reference) -> dict[str, Any]:
    energy = path_energy_per_gb(path, catalog)
    return {
        "j_per_gb": energy,
        "kwh_per_tb": j_per_gb_to_kwh_per_tb(energy),
        "overhead_product": path.overheads.product,
        "segments": [
            {
                "device_name": s.device_name,
                "kind": s.kind.value,
                "multiplicity": s.multiplicity,
                "j_per_gbit": s.j_per_gbit,
                "j_per_gb": s.j_per_gb,
            }
            for s in segment_energies(path, catalog)
        ],
        "paper": _paper(energy, reference),
    }


def transfer_report(catalog: Catalog, distance_km: float | None = None) -> dict[str, Any]:
    central, dist, hops = transfer_paths(catalog, distance_km)
    c = _path_entry(central, catalog, ref.TRANSFER_CENTRALIZED_J_PER_GB)
    d = _path_entry(dist, catalog, ref.TRANSFER_DISTRIBUTED_J_PER_GB)
    delta = c["j_per_gb"] - d["j_per_gb"]
    return {
        "paths": {"centralized": c, "distributed": d},
        "distance_km": distance_km,
        "distributed_core_hops": hops,
        "delta_j_per_gb": delta,
        "delta_kwh_per_tb": j_per_gb_to_kwh_per_tb(delta),
        "relative_reduction": delta / c["j_per_gb"],
        "paper": {
            "delta_j_per_gb": _paper(delta, ref.TRANSFER_DELTA_J_PER_GB),
            "relative_reduction": _paper(delta / c["j_per_gb"], ref.TRANSFER_REDUCTION),
        },
    }


def render_transfer_text(rep: dict[str, Any]) -> str:
    lines = []
    for name, entry in rep["paths"].items():
        kj = entry["j_per_gb"] / 1000
        lines.append(
            f"{name:12s} {kj:8.3f} kJ/GB  ({entry['kwh_per_tb']:.3f} kWh/TB)   "
            + _ann(entry["paper"], scale=1000)
        )
        rows = [
            (
                s["device_name"],
                s["kind"],
                f"{s['multiplicity']:g}",
                f"{s['j_per_gbit']:.4f}",
                f"{s['j_per_gb']:.1f}",
            )
            for s in entry["segments"]
        ]
        lines.append(
            _table(("device", "kind", "mult", "J/Gb", "J/GB"), rows, indent="    ")
        )
        lines.append(f"    overhead product x{entry['overhead_product']:g}")
        lines.append("")
    if rep["distance_km"] is not None:
        lines.append(
            f"distributed path rebuilt for {rep['distance_km']:g} km: "
            f"{rep['distributed_core_hops']} core hops"
        )
    lines.append(
        f"delta        {rep['delta_j_per_gb'] / 1000:8.3f} kJ/GB  ({rep['delta_kwh_per_tb']:.3f} kWh/TB)   "
        + _ann(rep["paper"]["delta_j_per_gb"], scale=1000)
    )
    lines.append(
        f"reduction    {rep['relative_reduction']:8.3f}          "
        + _ann(rep["paper"]["relative_reduction"])
    )
    return "\n".join(lines) + "\n"


def render_transfer_csv(rep: dict[str, Any]) -> str:
    rows = []
    for name, entry in rep["paths"].items():
        for s in entry["segments"]:
            rows.append((name, s["device_name"], s["kind"], repr(s["multiplicity"]), repr(s["j_per_gb"])))
    return _csv(TRANSFER_CSV_COLUMNS, rows)


# --- compare ---------------------------------------------------------------


def compare_report(
    scenario: Scenario,
    archs: Architectures,
    baseline: str = "centralized",
    alternative: str = "distributed",
    paper_rounded: bool = False,
    preset: str | None = None,
    fleet: FleetModel | None = None,
) -> dict[str, Any]:
    base = archs.get(baseline)
    alt = archs.get(alternative)
    result: ScenarioReport = compare(
        scenario, base, alt, PaperRounding() if paper_rounded else None
    )
    out = result.to_dict()
    out["preset"] = preset
    ci = scenario.carbon_intensity
    out["per_tb_series"] = [
        {"series": series, "architecture": a.name, "kgco2_per_tb_year": fn(a, ci)}
        for series, fn in (
            ("stored", annual_kgco2_per_stored_tb),
            ("daily_streamed", annual_kgco2_per_daily_tb),
        )
        for a in (base, alt)
    ]
    if paper_rounded:
        per_pb = backup_footprint_per_pb(ref.ROUNDED_STORAGE_DELTA_W_PER_TB, ci)
    else:
        per_pb = per_pb_backup_footprint(base, alt, ci)
    out["backup_kgco2_per_pb_year"] = per_pb
    paper: dict[str, Any] = {}
    if preset in ref.SCENARIO_REFERENCES:
        e_ref, co2_ref = ref.SCENARIO_REFERENCES[preset]
        paper["delta_kwh"] = _paper(result.delta_kwh, e_ref)
        paper["delta_kgco2"] = _paper(result.delta_kgco2, co2_ref)
    if preset == "backup":
        paper["backup_kgco2_per_pb_year"] = _paper(per_pb, ref.BACKUP_PER_PB_KGCO2)
    if fleet is not None:
        vol = fleet_volume(fleet)
        out["fleet"] = {
            "users": fleet.users,
            "theoretical_tb": vol.theoretical_tb,
            "effective_tb": vol.effective_tb,
            "daily_transfer_tb": fleet.daily_transfer_tb,
            "implied_daily_transfer_tb": implied_daily_transfer_tb(fleet),
        }
        if preset == "fleet":
            paper["theoretical_tb"] = _paper(vol.theoretical_tb, ref.FLEET_THEORETICAL_TB)
            paper["effective_tb"] = _paper(vol.effective_tb, ref.FLEET_EFFECTIVE_TB)
    out["paper"] = paper
    return out


def render_compare_text(rep: dict[str, Any]) -> str:
    sc = rep["scenario"]
    lines = [
        f"scenario {sc['name']!r}: {sc['stored_tb']:g} TB stored, "
        f"{sc['daily_transfer_tb']:g} TB/day transferred, {sc['duration_days']:g} days, "
        f"{sc['carbon_intensity']:g} kgCO2/kWh",
        f"mode: {rep['mode']}",
        "",
    ]
    rows = [
        (
            a["name"],
            role,
            f"{a['storage_kwh']:.1f}",
            f"{a['transfer_kwh']:.1f}",
            f"{a['total_kwh']:.1f}",
        )
        for role in ("baseline", "alternative")
        for a in (rep[role],)
    ]
    lines.append(_table(("architecture", "role", "storage kWh", "transfer kWh", "total kWh"), rows))
    lines.append("")
    paper = rep["paper"]
    rel = rep["relative_reduction"]
    lines += [
        f"delta storage    {rep['delta_storage_kwh']:16.1f} kWh",
        f"delta transfer   {rep['delta_transfer_kwh']:16.1f} kWh",
        f"delta energy     {rep['delta_kwh']:16.1f} kWh     " + _ann(paper.get("delta_kwh")),
        f"delta emissions  {rep['delta_kgco2']:16.1f} kgCO2   " + _ann(paper.get("delta_kgco2")),
        f"reduction        {'n/a (baseline uses no energy)' if rel is None else f'{rel:16.3f}'}",
        f"backup footprint {rep['backup_kgco2_per_pb_year']:16.1f} kgCO2/year/PB   "
        + _ann(paper.get("backup_kgco2_per_pb_year")),
    ]
    if "fleet" in rep:
        f = rep["fleet"]
        lines += [
            "",
            f"fleet: {f['users']:.4g} users, theoretical {f['theoretical_tb']:.4g} TB   "
            + _ann(paper.get("theoretical_tb")),
            f"       effective {f['effective_tb']:.4g} TB   " + _ann(paper.get("effective_tb")),
            f"       daily transfer {f['daily_transfer_tb']:g} TB (input)",
        ]
        if f["implied_daily_transfer_tb"] is not None:
            lines.append(
                f"       per-user figure would imply {f['implied_daily_transfer_tb']:g} TB/day (not used)"
            )
    return "\n".join(line.rstrip() for line in lines).rstrip() + "\n"


def render_compare_csv(rep: dict[str, Any]) -> str:
    return _csv(
        COMPARE_CSV_COLUMNS,
        [(p["series"], p["architecture"], repr(p["kgco2_per_tb_year"])) for p in rep["per_tb_series"]],
    )


# --- helpers ---------------------------------------------------------------


def render_json(rep: dict[str, Any]) -> str:
    return json.dumps(rep, indent=2, default=str) + "\n"


def _ann(paper: dict[str, Any] | None, scale: float = 1.0) -> str:
    if not paper:
        return ""
    text = f"paper: {paper['value'] / scale:g} (Δ {paper['deviation'] * 100:+.1f}%)"
    if "note" in paper:
        text += f" [discrepancy: {paper['note']}]"
    return text


def _table(header: Sequence[str], rows: Sequence[Sequence[str]], indent: str = "") -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]

    def fmt(cells: Sequence[str]) -> str:
        # first column left-aligned, numbers right-aligned
        parts = [cells[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(cells[1:], widths[1:])]
        return indent + "  ".join(parts).rstrip()

    return "\n".join([fmt(header), indent + "  ".join("-" * w for w in widths)] + [fmt(r) for r in rows])


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()
