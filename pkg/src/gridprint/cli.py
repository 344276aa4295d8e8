"""Command-line entry point: ``gridprint storage|transfer|compare``."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import report
from .catalog import Catalog, CatalogError, builtin_catalog, load_catalog_file
from .scenarios import (
    PAPER_FLEET,
    PRESETS,
    Scenario,
    ScenarioError,
    build_architectures,
    load_scenario,
    preset_scenario,
)
from .storage import CUBBIT_CELL

CATALOG_ENV = "GRIDPRINT_CATALOG"
EXIT_INPUT_ERROR = 2

_RENDERERS = {
    "storage": (report.render_storage_text, report.render_storage_csv),
    "transfer": (report.render_transfer_text, report.render_transfer_csv),
    "compare": (report.render_compare_text, report.render_compare_csv),
}


class InputError(Exception):
    """Bad input file or option; reported on stderr with exit status 2."""


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--catalog",
        metavar="PATH",
        default=os.environ.get(CATALOG_ENV),
        help=f"equipment catalog JSON (default: ${CATALOG_ENV} or the built-in catalog)",
    )
    common.add_argument(
        "--merge-builtin",
        action="store_true",
        help="layer the --catalog entries over the built-in catalog",
    )
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument(
        "--paper-rounded",
        action="store_true",
        help="use the published rounded deltas (9 W/TB, 3.33 kWh/TB) for scenario deltas",
    )
    common.add_argument("--carbon-intensity", type=float, metavar="KG_PER_KWH")
    common.add_argument(
        "--distance-km",
        type=float,
        metavar="KM",
        help="rebuild the distributed path's core hops for this peer distance",
    )

    parser = argparse.ArgumentParser(
        prog="gridprint",
        description="Energy and carbon footprint of centralized vs distributed cloud storage.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("storage", parents=[common], help="storage power density per TB")
    sub.add_parser("transfer", parents=[common], help="transfer energy per GB")
    cmp = sub.add_parser("compare", parents=[common], help="scenario comparison")
    source = cmp.add_mutually_exclusive_group()
    source.add_argument("--scenario", metavar="PATH", help="scenario JSON file")
    source.add_argument("--preset", choices=PRESETS, help="built-in scenario (default: backup)")
    return parser


def _load_catalog(args: argparse.Namespace) -> Catalog:
    if not args.catalog:
        return builtin_catalog()
    try:
        return load_catalog_file(args.catalog, merge_builtin=args.merge_builtin)
    except FileNotFoundError:
        raise InputError(f"catalog file not found: {args.catalog}") from None
    except OSError as exc:
        raise InputError(f"cannot read catalog {args.catalog}: {exc.strerror}") from None
    except CatalogError as exc:
        raise InputError(f"{args.catalog}: {exc}") from None


def cmd_storage(args: argparse.Namespace) -> dict:
    return report.storage_report(_load_catalog(args), CUBBIT_CELL)


def cmd_transfer(args: argparse.Namespace) -> dict:
    return report.transfer_report(_load_catalog(args), args.distance_km)


def cmd_compare(args: argparse.Namespace) -> dict:
    catalog = _load_catalog(args)
    baseline, alternative, paths, preset, fleet = "centralized", "distributed", {}, None, None
    if args.scenario:
        try:
            with open(args.scenario, "rb") as fh:
                spec = load_scenario(fh, default_name=Path(args.scenario).stem)
        except FileNotFoundError:
            raise InputError(f"scenario file not found: {args.scenario}") from None
        except ScenarioError as exc:
            raise InputError(f"{args.scenario}: {exc}") from None
        scenario, baseline, alternative, paths, fleet = (
            spec.scenario, spec.baseline, spec.alternative, dict(spec.paths), spec.fleet,
        )
        if args.carbon_intensity is not None:
            scenario = _with_intensity(scenario, args.carbon_intensity)
    else:
        preset = args.preset or "backup"
        scenario = preset_scenario(preset, args.carbon_intensity)
        if preset == "fleet":
            fleet = PAPER_FLEET
    if args.distance_km is not None and "distributed" not in paths:
        _, paths["distributed"], _ = report.transfer_paths(catalog, args.distance_km)
    archs = build_architectures(catalog, CUBBIT_CELL, paths)
    return report.compare_report(
        scenario, archs, baseline, alternative, args.paper_rounded, preset, fleet
    )


def _with_intensity(scenario: Scenario, intensity: float) -> Scenario:
    return Scenario(
        scenario.name, scenario.stored_tb, scenario.daily_transfer_tb, scenario.duration_days, intensity
    )


_COMMANDS = {"storage": cmd_storage, "transfer": cmd_transfer, "compare": cmd_compare}


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.carbon_intensity is not None and not args.carbon_intensity >= 0:
            raise InputError("--carbon-intensity must be >= 0")
        if args.distance_km is not None and not args.distance_km >= 0:
            raise InputError("--distance-km must be >= 0")
        rep = _COMMANDS[args.command](args)
    except (InputError, CatalogError, ScenarioError, ValueError) as exc:
        print(f"gridprint: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    text_fn, csv_fn = _RENDERERS[args.command]
    if args.format == "json":
        out = report.render_json(rep)
    elif args.format == "csv":
        out = csv_fn(rep)
    else:
        out = text_fn(rep)
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
