"""Command-line interface: simulate, compare, and plan subcommands.

    packsim simulate --config scenario.toml --out results/
    packsim compare  --config base.toml --pack 92S9P --pack 46S18P --pack 142S5P
    packsim plan     --cells 828 --i-max 15 --profile paper --v-max 420

Exit status is 0 on success and nonzero with a diagnostic on any error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from functools import partial
from pathlib import Path

from .cell import TESLA_MODEL_Y_CELL
from .control import ChargerProfile
from .engine import TimeSeries, simulate
from .planner import PlannerConstraints, rank, verify_rank
from .report import (
    RunReport,
    build_report,
    format_report_table,
    render_svg,
    write_csv,
    write_reports_json,
)
from .scenario import Scenario, ScenarioError, apply_named_profile, load_scenario
from .topology import PackConfig, parse_layout, reconfigure


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", type=Path, help="scenario TOML file")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p.add_argument(
        "--format",
        choices=("csv", "svg", "table"),
        default="csv",
        help="emission level: table only, +csv, or +csv+svg",
    )
    p.add_argument("--dt", type=float, help="override step size in seconds")
    p.add_argument("--duration-h", type=float, help="override run duration in hours")
    p.add_argument(
        "--profile",
        choices=("paper", "default"),
        default="default",
        help="charger preset: 'paper' = cc_only with calibrated charge acceptance",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="packsim",
        description="Battery pack charge/discharge simulator and SxP configuration planner",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one scenario and emit its trajectory")
    _add_common_flags(p_sim)
    p_sim.add_argument("--pack", help='pack layout override, e.g. "92S9P"')
    p_sim.add_argument("--i-charge", type=float, help="charge/discharge current in A")
    p_sim.add_argument("--initial-soc", type=float, help="starting SOC fraction")

    p_cmp = sub.add_parser("compare", help="run several scenarios side by side")
    _add_common_flags(p_cmp)
    p_cmp.add_argument(
        "--pack",
        action="append",
        default=[],
        help="pack layout to compare (repeatable); reconfigures the base scenario",
    )
    p_cmp.add_argument(
        "--scenario",
        action="append",
        type=Path,
        default=[],
        help="additional scenario TOML file (repeatable)",
    )
    p_cmp.add_argument("--i-charge", type=float, help="charge/discharge current in A")
    p_cmp.add_argument("--initial-soc", type=float, help="starting SOC fraction")
    p_cmp.add_argument("--jobs", type=int, default=1, help="parallel simulation workers")

    p_plan = sub.add_parser("plan", help="rank SxP configurations of a cell budget")
    _add_common_flags(p_plan)
    p_plan.add_argument("--cells", type=int, required=True, help="total cell budget")
    p_plan.add_argument("--i-max", type=float, help="charger current limit in A")
    p_plan.add_argument("--v-max", type=float, help="charger voltage ceiling in V")
    p_plan.add_argument("--power-max", type=float, help="supply power ceiling in W")
    p_plan.add_argument(
        "--allow-cell-drop",
        action="store_true",
        help="also consider configurations that leave part of the budget unused",
    )
    p_plan.add_argument(
        "--verify",
        type=int,
        default=0,
        metavar="K",
        help="re-simulate the top K candidates and report prediction deltas",
    )
    return parser


def _base_scenario(args, default_name: str) -> Scenario:
    """Scenario from --config plus CLI overrides (or pure overrides)."""
    if args.config is not None:
        scn = load_scenario(args.config)
    else:
        pack_str = getattr(args, "pack", None)
        if isinstance(pack_str, list):  # compare: base defaults to the reference pack
            pack_str = None
        if pack_str is None:
            pack_str = "92S9P"
        i_charge = getattr(args, "i_charge", None)
        if i_charge is None:
            raise ScenarioError(
                "no --config given: --i-charge is required to define the charger"
            )
        s, p = parse_layout(pack_str)
        scn = Scenario(
            name=default_name,
            pack=PackConfig(s=s, p=p, cell=TESLA_MODEL_Y_CELL),
            profile=ChargerProfile(i_charge=i_charge),
        )

    if getattr(args, "i_charge", None) is not None and args.config is not None:
        scn = replace(
            scn,
            profile=replace(
                scn.profile, i_charge=args.i_charge, i_discharge=args.i_charge
            ),
        )
    if getattr(args, "initial_soc", None) is not None:
        scn = replace(scn, initial_soc=args.initial_soc)
    if args.duration_h is not None:
        scn = replace(scn, duration_h=args.duration_h)
    if args.dt is not None:
        scn = replace(scn, dt=args.dt)
    scn = apply_named_profile(scn, args.profile)
    if not 0 < scn.dt <= scn.duration_s:
        raise ScenarioError(f"dt must be in (0, duration], got {scn.dt}")
    return scn


def _run_scenario(scn: Scenario) -> TimeSeries:
    return simulate(
        scn.pack, scn.profile, scn.duration_s, dt=scn.dt, initial_soc=scn.initial_soc
    )


def _emit(
    named: list[tuple[Scenario, TimeSeries, list[str]]],
    out_dir: Path,
    fmt: str,
    svg_name: str,
) -> list[RunReport]:
    reports = []
    for scn, series, warnings in named:
        reports.append(build_report(scn.name, series, warnings))
    print(format_report_table(reports))
    if fmt == "table":
        return reports
    out_dir.mkdir(parents=True, exist_ok=True)
    for scn, series, _ in named:
        write_csv(series, out_dir / f"{scn.name}.csv", scn.sample_interval)
    write_reports_json(reports, out_dir / "report.json")
    if fmt == "svg":
        render_svg([(scn.name, series) for scn, series, _ in named], out_dir / svg_name)
    return reports


def cmd_simulate(args) -> int:
    scn = _base_scenario(args, default_name="simulate")
    if args.config is not None and args.pack:
        s, p = parse_layout(args.pack)
        new_pack, warning = reconfigure(scn.pack, s, p)
        scn = replace(scn, pack=new_pack, name=args.pack)
        warnings = [warning] if warning else []
    else:
        warnings = []
        if args.config is None and args.pack:
            scn = replace(scn, name=args.pack)
    series = _run_scenario(scn)
    _emit([(scn, series, warnings)], args.out, args.format, f"{scn.name}.svg")
    return 0


def cmd_compare(args) -> int:
    runs: list[tuple[Scenario, list[str]]] = []
    failures: list[str] = []
    base = None
    if args.pack or not args.scenario:
        base = _base_scenario(args, default_name="base")
    for pack_str in args.pack:
        try:
            s, p = parse_layout(pack_str)
            new_pack, warning = reconfigure(base.pack, s, p)
        except ValueError as exc:
            failures.append(f"{pack_str}: {exc}")
            continue
        runs.append(
            (replace(base, pack=new_pack, name=pack_str), [warning] if warning else [])
        )
    for path in args.scenario:
        try:
            runs.append((apply_named_profile(load_scenario(path), args.profile), []))
        except (ValueError, OSError) as exc:
            failures.append(f"{Path(path).stem}: {exc}")
    if not runs and not failures and base is not None:
        runs.append((base, []))

    results: list[tuple[Scenario, TimeSeries, list[str]] | None] = [None] * len(runs)

    def work(idx: int):
        scn, warnings = runs[idx]
        return idx, _run_scenario(scn), warnings

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(partial(_safe, work), range(len(runs))))
    else:
        outcomes = [_safe(work, i) for i in range(len(runs))]

    for i, outcome in enumerate(outcomes):
        if isinstance(outcome, Exception):
            failures.append(f"{runs[i][0].name}: {outcome}")
        else:
            idx, series, warnings = outcome
            results[idx] = (runs[idx][0], series, warnings)

    completed = [r for r in results if r is not None]
    if completed:
        _emit(completed, args.out, args.format, "compare.svg")
    for failure in failures:
        print(f"error: {failure}", file=sys.stderr)
    return 1 if failures else 0


def _safe(fn, idx):
    try:
        return fn(idx)
    except Exception as exc:  # collected and reported per scenario
        return exc


def cmd_plan(args) -> int:
    if args.config is not None:
        scn = apply_named_profile(load_scenario(args.config), args.profile)
        cell = scn.pack.cell
        profile = scn.profile
        default_i_max = profile.i_charge
    else:
        if args.i_max is None:
            raise ScenarioError("plan needs --i-max (or a --config with a charger)")
        cell = TESLA_MODEL_Y_CELL
        profile = apply_named_profile(
            Scenario(
                name="plan",
                pack=PackConfig(s=1, p=1, cell=cell),
                profile=ChargerProfile(i_charge=args.i_max),
            ),
            args.profile,
        ).profile
        default_i_max = profile.i_charge

    constraints = PlannerConstraints(
        i_max=args.i_max if args.i_max is not None else default_i_max,
        v_max=args.v_max,
        power_max=args.power_max,
        require_cell_conservation=not args.allow_cell_drop,
    )
    plan = rank(args.cells, cell, profile, constraints)

    print(f"plan for {args.cells} cells at i_max = {constraints.i_max:g} A")
    header = f"{'config':>10}  {'cells':>6}  {'pack_v_cv':>10}  {'predicted':>10}  status"
    print(header)
    print("-" * len(header))
    for e in plan.entries:
        label = f"{e.s}S{e.p}P"
        v_cv = e.s * cell.v_cv
        if e.feasible:
            print(
                f"{label:>10}  {e.cells_used:>6}  {v_cv:>8.1f} V  "
                f"{e.predicted_hours:>8.2f} h  ok"
            )
        else:
            print(f"{label:>10}  {e.cells_used:>6}  {v_cv:>8.1f} V  {'-':>10}  {e.infeasibility_reason}")

    if args.format != "table":
        args.out.mkdir(parents=True, exist_ok=True)
        payload = {
            "n_cells": plan.n_cells,
            "i_max": constraints.i_max,
            "v_max": constraints.v_max,
            "power_max": constraints.power_max,
            "entries": [
                {
                    "s": e.s,
                    "p": e.p,
                    "cells_used": e.cells_used,
                    "predicted_hours": e.predicted_hours,
                    "feasible": e.feasible,
                    "infeasibility_reason": e.infeasibility_reason,
                }
                for e in plan.entries
            ],
        }
        (args.out / "plan.json").write_text(
            json.dumps(payload, indent=2) + "\n", encoding="utf-8"
        )

    if args.verify > 0:
        dt = args.dt if args.dt is not None else 1.0
        report = verify_rank(plan, profile, constraints, top_k=args.verify, dt=dt)
        print("\nverification (analytical vs simulated):")
        for v in report:
            sim_label = "not reached" if v.simulated_hours is None else f"{v.simulated_hours:.4f} h"
            delta = v.relative_delta
            delta_label = "-" if delta is None else f"{delta:.2e}"
            print(
                f"  {v.s}S{v.p}P  predicted {v.predicted_hours:.4f} h  "
                f"simulated {sim_label}  rel_delta {delta_label}"
            )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            return cmd_simulate(args)
        if args.command == "compare":
            return cmd_compare(args)
        return cmd_plan(args)
    except (ScenarioError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
