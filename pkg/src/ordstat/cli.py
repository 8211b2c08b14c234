"""Command-line front end.

Exit codes: 0 success or consistent report, 1 usage or input error,
2 inconsistency detected (or a reproduced figure disagreeing with its
recorded outcome).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import majorize
from ._checks import DomainError
from .baseline import BASELINES
from .copula import GENERATORS
from .orderstat import default_grid, hazard_second, sf_second
from .scenario import FIGURES, ScenarioError, load_fixture, load_scenario, parse_grid
from .stochorder import check_st, mc_sf_second, sign_changes
from .theorems import TheoremNotFound, get_theorem, list_theorems, verify

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2
SEED_ENV = "ORDSTAT_SEED"
CSV_HEADER = ("x", "value_A", "value_B", "diff")
MC_POINTS = 5


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _seed(default=0) -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return default
    try:
        seed = int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be a non-negative integer, got {raw!r}") from None
    if seed < 0:
        raise UsageError(f"{SEED_ENV} must be a non-negative integer, got {raw!r}")
    return seed


def _grid_for(scenario, text):
    if text:
        return parse_grid(text)
    if scenario.grid is not None:
        return scenario.grid
    return default_grid(scenario.A, scenario.B)


def _curve_rows(scenario, grid, what):
    if what == "hazard":
        vA = _hazard_or_nan(scenario.A, grid)
        vB = _hazard_or_nan(scenario.B, grid)
    else:
        vA = np.asarray(sf_second(scenario.A, grid), dtype=float)
        vB = np.asarray(sf_second(scenario.B, grid), dtype=float)
    return grid, vA, vB, vA - vB


def _hazard_or_nan(batch, grid):
    # pointwise so that one underflowing tail point does not sink the curve
    out = np.empty(grid.shape)
    for i, x in enumerate(grid):
        try:
            out[i] = float(hazard_second(batch, x))
        except DomainError:
            out[i] = np.nan
    return out


def write_curves(handle, x, vA, vB, diff):
    """CSV with header ``x,value_A,value_B,diff``, LF line endings."""
    w = csv.writer(handle, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in zip(x, vA, vB, diff):
        w.writerow([_fmt(v) for v in row])


def _monte_carlo(scenario, grid, n_samples, seed):
    """Compare the formula with simulation at a few grid points."""
    pick = np.unique(np.linspace(0, grid.size - 1, MC_POINTS).round().astype(int))
    xs = grid[pick]
    out = {"n_samples": int(n_samples), "seed": int(seed), "batches": {}}
    for label, batch in (("A", scenario.A), ("B", scenario.B)):
        if not batch.is_independent:
            out["batches"][label] = {"skipped": "Monte Carlo supports independent batches only"}
            continue
        est = mc_sf_second(batch, xs, N=n_samples, seed=seed)
        exact = np.asarray(sf_second(batch, xs), dtype=float)
        z = np.abs(exact - est.estimate) / np.maximum(est.stderr, 1e-300)
        out["batches"][label] = {
            "x": xs.tolist(), "formula": exact.tolist(),
            "estimate": est.estimate.tolist(), "stderr": est.stderr.tolist(),
            "max_z": float(np.max(np.where(est.stderr > 0, z, 0.0))),
        }
    return out


# -- subcommands ---------------------------------------------------------------


def cmd_verify(args) -> int:
    scenario = load_scenario(args.scenario)
    theorem = args.theorem or scenario.theorem
    if not theorem:
        raise UsageError("no theorem given: pass --theorem or set 'theorem' in the scenario")
    spec = get_theorem(theorem)
    grid = parse_grid(args.grid) if args.grid else scenario.grid
    if grid is None:
        # the theorem domain: every component inside its support
        grid = default_grid(scenario.A, scenario.B, domain="common")
    report = verify(spec, scenario.A, scenario.B, grid=grid)
    payload = report.to_dict()
    payload["scenario"] = scenario.name
    if args.mc:
        seed = _seed(args.seed)
        payload["monte_carlo"] = _monte_carlo(scenario, grid, args.mc, seed)
        payload["conclusion_verdict"]["seed"] = seed
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(("item", "passed", "detail"))
        for r in report.hypothesis_results:
            w.writerow((r.clause, str(r.passed).lower(), r.detail or ""))
        v = report.conclusion_verdict
        w.writerow((f"conclusion {v.relation} {v.direction}", str(v.holds).lower(), v.status))
        w.writerow(("consistent", str(report.consistent).lower(), "; ".join(report.notes)))
    else:
        print(json.dumps(payload, indent=2))
    return EXIT_OK if report.consistent else EXIT_INCONSISTENT


def cmd_curves(args) -> int:
    scenario = load_scenario(args.scenario)
    grid = _grid_for(scenario, args.grid)
    rows = _curve_rows(scenario, grid, args.what)
    if args.out in (None, "-"):
        write_curves(sys.stdout, *rows)
        return EXIT_OK
    buf = io.StringIO()
    write_curves(buf, *rows)
    try:
        Path(args.out).write_text(buf.getvalue(), newline="")
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc.strerror}") from None
    return EXIT_OK


def reproduce(figure: str) -> tuple:
    """Curves and verdict summary for one of the shipped figures."""
    name = FIGURES[figure]
    scenario = load_fixture(name)
    grid = scenario.grid
    x, vA, vB, diff = _curve_rows(scenario, grid, "sf")
    verdict = check_st(scenario.A, scenario.B, grid)
    crossings = sign_changes(x, diff)
    expected = scenario.expect.get("outcome")
    observed = "crossing" if crossings else (verdict.direction if verdict.holds else "fails")
    summary = {
        "figure": figure,
        "scenario": name,
        "theorem": scenario.theorem,
        "grid": {"lo": float(grid[0]), "hi": float(grid[-1]), "n": int(grid.size)},
        "verdict": verdict.to_dict(),
        "crossings": [{"x_left": a, "x_right": b} for a, b in crossings],
        "expected": expected,
        "observed": observed,
        "matches": observed == expected,
    }
    return (x, vA, vB, diff), summary


def cmd_reproduce(args) -> int:
    figures = list(FIGURES) if args.figure == "all" else [args.figure]
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create {out}: {exc.strerror}") from None
    status = EXIT_OK
    summaries = []
    for fig in figures:
        rows, summary = reproduce(fig)
        buf = io.StringIO()
        write_curves(buf, *rows)
        (out / f"figure_{fig}.csv").write_text(buf.getvalue(), newline="")
        (out / f"figure_{fig}.json").write_text(json.dumps(summary, indent=2) + "\n")
        summaries.append(summary)
        if not summary["matches"]:
            status = EXIT_INCONSISTENT
    print(json.dumps(summaries[0] if len(summaries) == 1 else summaries, indent=2))
    return status


def _vector(text, name):
    try:
        return [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--{name} must be a comma-separated list of numbers") from None


def cmd_check_major(args) -> int:
    if args.file:
        try:
            data = json.loads(Path(args.file).read_text())
            x, y = data["x"], data["y"]
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
        except (json.JSONDecodeError, KeyError, TypeError):
            raise UsageError(f"{args.file} must be a JSON object with 'x' and 'y' lists") from None
    elif args.x is not None and args.y is not None:
        x, y = _vector(args.x, "x"), _vector(args.y, "y")
    else:
        raise UsageError("give --x and --y, or a vector file")
    _, violation = majorize.RELATIONS[args.relation]
    try:
        idx = violation(y, x)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print("true" if idx is None else f"false index={idx}")
    return EXIT_OK


def cmd_list_theorems(args) -> int:
    specs = list_theorems()
    if args.json:
        print(json.dumps([s.describe() for s in specs], indent=2))
    else:
        for s in specs:
            rel, direction = s.conclusion
            print(f"{s.id:8s} {s.dependence:14s} {rel} {direction:7s} {s.summary}")
    return EXIT_OK


def cmd_list_baselines(args) -> int:
    if args.json:
        print(json.dumps({"baselines": sorted(BASELINES), "generators": sorted(GENERATORS)},
                         indent=2))
    else:
        for tag, cls in BASELINES.items():
            doc = (cls.__doc__ or "").strip().splitlines()
            print(f"{tag:14s} {doc[0] if doc else ''}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordstat",
        description="Second-smallest lifetimes of location-scale-shape batches: "
                    "order verdicts, curves and figure reproduction.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a theorem's hypotheses and conclusion")
    p.add_argument("scenario", help="scenario JSON file")
    p.add_argument("--theorem", help="registry id, e.g. T3.1 (default: the scenario's)")
    p.add_argument("--grid", help="lo:hi:n linear grid for the conclusion")
    p.add_argument("--mc", type=int, metavar="N", help="add a Monte Carlo cross-check with N samples")
    p.add_argument("--seed", type=int, default=0, help=f"Monte Carlo seed ({SEED_ENV} overrides)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--csv", action="store_true", help="one CSV row per clause")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("curves", help="emit curves of both batches as CSV")
    p.add_argument("scenario")
    p.add_argument("--what", choices=("sf", "hazard", "diff"), default="diff",
                   help="survival (sf, diff) or hazard of the second-smallest lifetime")
    p.add_argument("--grid", help="lo:hi:n linear grid")
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("reproduce", help="recompute a shipped figure")
    p.add_argument("figure", choices=(*FIGURES, "all"))
    p.add_argument("--out", default=".", help="directory for figure_<id>.csv/.json")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("check-major", help="test whether x is below y in a vector preorder")
    p.add_argument("file", nargs="?", help="JSON file with 'x' and 'y' lists")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--relation", choices=tuple(majorize.RELATIONS), default="m")
    p.set_defaults(func=cmd_check_major)

    p = sub.add_parser("list-theorems", help="registry ids and digests")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_list_theorems)

    p = sub.add_parser("list-baselines", help="baseline and generator tags")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_list_baselines)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except TheoremNotFound as exc:
        # the message already lists the valid ids
        print(f"error: {exc.args[0]}", file=sys.stderr)
    except (ScenarioError, UsageError, DomainError, ValueError) as exc:
        # ValueError covers arguments the library rejects: short grids,
        # batches that do not fit a record's dependence mode
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
