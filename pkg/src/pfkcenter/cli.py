"""Command-line front end: ingest or generate instances, solve, plot,
report K-curves, benchmark, and emit brute-force fixtures.

Exit codes are part of the contract: 0 success, 1 usage, 2 I/O or parse
failure, 3 front validation failure (comparable input points).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time

import numpy as np

from .cost import OpStats, Variant, interval_cost_sq
from .dp import Solution, assemble_solution, solve
from .front import FrontValidationError, ParetoFront, build_front
from .generate import SHAPES, InstanceSpec, generate_front
from .oracle import (
    OracleGuardError,
    brute_force_all_partitions,
    brute_force_intervals,
)
from .plotting import write_svg
from .refine import backtrack_max_index, balance_partition, elbow_select, k_curve

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VALIDATION = 3

WORKERS_ENV = "PKC_WORKERS"


class _UsageError(Exception):
    pass


class _InputError(Exception):
    """Unreadable or malformed instance file."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(v: float) -> str:
    return f"{float(v):.17g}"


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if raw:
        try:
            w = int(raw)
            if w >= 1:
                return w
        except ValueError:
            pass
    return 1


# ---------------------------------------------------------------------------
# instance input

def _read_points(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if not stripped:
        raise _InputError(f"{path}: empty file")
    if stripped[0] == "[":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise _InputError(f"{path}: invalid JSON ({e})") from e
        try:
            return np.array([[float(p[0]), float(p[1])] for p in data], dtype=float)
        except (TypeError, ValueError, IndexError) as e:
            raise _InputError(
                f"{path}: JSON must be an array of [obj1, obj2] pairs"
            ) from e
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise _InputError(f"{path}: no data rows")
    start = 0
    try:
        [float(c) for c in rows[0][:2]]
    except ValueError:
        start = 1  # non-numeric first line is a header
    pts = []
    for ln, row in enumerate(rows[start:], start=start + 1):
        cells = [c.strip() for c in row if c.strip()]
        if len(cells) != 2:
            raise _InputError(
                f"{path}: line {ln}: expected two numeric columns, got {len(cells)}"
            )
        try:
            pts.append((float(cells[0]), float(cells[1])))
        except ValueError as e:
            raise _InputError(f"{path}: line {ln}: {e}") from e
    if not pts:
        raise _InputError(f"{path}: no data rows")
    return np.array(pts, dtype=float)


def _parse_gen(text: str) -> InstanceSpec:
    kw: dict[str, str] = {}
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if "=" in token:
            key, val = token.split("=", 1)
            kw[key.strip()] = val.strip()
        else:
            kw["shape"] = token
    if "n" not in kw:
        raise _UsageError(f"generator spec {text!r} is missing n=<count>")
    try:
        return InstanceSpec(
            n=int(kw["n"]),
            shape=kw.get("shape", "random-staircase"),
            noise=float(kw.get("noise", "0")),
            seed=int(kw.get("seed", "0")),
        )
    except ValueError as e:
        raise _UsageError(f"bad generator spec {text!r}: {e}") from e


def _front_from_args(args) -> tuple[ParetoFront, str]:
    if bool(args.input) == bool(args.gen):
        raise _UsageError("provide exactly one of --input or --gen")
    if args.input:
        pts = _read_points(args.input)
        return build_front(pts, sanitize=args.sanitize), args.input
    spec = _parse_gen(args.gen)
    return spec.build(), f"gen:{args.gen}"


# ---------------------------------------------------------------------------
# reports

def _stats_dict(stats: OpStats) -> dict:
    return {
        "cost_evals": int(stats.cost_evals),
        "fij_evals": int(stats.fij_evals),
        "per_line_cost_evals": [int(v) for v in stats.per_line_cost_evals],
        "peak_dp_lines": int(stats.peak_dp_lines),
        "backtrack_cost_evals": int(stats.backtrack_cost_evals),
    }


def _solution_report(
    sol: Solution, wall: float, workers: int, source: str
) -> dict:
    front = sol.front
    clusters = []
    for c, res in zip(sol.clusters, sol.centers):
        clusters.append(
            {
                "lo": c.lo + 1,
                "hi": c.hi + 1,
                "size": c.size,
                "center": [float(res.center.obj1), float(res.center.obj2)],
                "center_index": None if res.center_index is None else res.center_index + 1,
                "radius": float(res.radius),
                "radius_sq": float(res.radius_sq),
            }
        )
    return {
        "schema": "pfkcenter.solve/1",
        "source": source,
        "n": len(front),
        "variant": sol.variant.value,
        "k": sol.k,
        "effective_k": sol.effective_k,
        "opt_radius": float(sol.opt_radius),
        "opt_radius_sq": float(sol.opt_radius_sq),
        "clusters": clusters,
        "front": [[float(x), float(y)] for x, y in zip(front.xs, front.ys)],
        "stats": _stats_dict(sol.stats),
        "wall_time_s": wall,
        "workers": workers,
    }


def _solution_csv(report: dict) -> str:
    out = io.StringIO()
    for key in (
        "schema", "source", "n", "variant", "k", "effective_k",
        "opt_radius", "opt_radius_sq", "wall_time_s", "workers",
    ):
        v = report[key]
        out.write(f"# {key}={_fmt(v) if isinstance(v, float) else v}\n")
    st = report["stats"]
    out.write(f"# cost_evals={st['cost_evals']}\n")
    out.write(f"# peak_dp_lines={st['peak_dp_lines']}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(
        ["cluster", "lo", "hi", "size", "center_obj1", "center_obj2",
         "center_index", "radius_sq", "radius"]
    )
    for t, c in enumerate(report["clusters"], start=1):
        w.writerow(
            [t, c["lo"], c["hi"], c["size"], _fmt(c["center"][0]),
             _fmt(c["center"][1]),
             "" if c["center_index"] is None else c["center_index"],
             _fmt(c["radius_sq"]), _fmt(c["radius"])]
        )
    return out.getvalue()


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def _cmd_solve(args) -> int:
    front, source = _front_from_args(args)
    variant = Variant(args.variant)
    t0 = time.perf_counter()
    sol = solve(front, args.k, variant, workers=args.workers)
    clusters = list(sol.clusters)
    if args.backtrack == "max":
        clusters = backtrack_max_index(
            front, args.k, sol.opt_radius_sq, variant, sol.stats
        )
    if args.balance and len(clusters) > 1:
        clusters = balance_partition(front, clusters, variant, args.balance, sol.stats)
    if clusters != list(sol.clusters):
        sol = assemble_solution(front, clusters, args.k, variant, sol.stats)
    wall = time.perf_counter() - t0
    if args.plot:
        write_svg(sol, args.plot)
    report = _solution_report(sol, wall, args.workers, source)
    if args.format == "json":
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        _emit(_solution_csv(report), args.out)
    return EXIT_OK


def _cmd_kcurve(args) -> int:
    front, source = _front_from_args(args)
    variant = Variant(args.variant)
    if args.kmax < 3 and not args.no_elbow:
        raise _UsageError(
            "the elbow pick needs --kmax >= 3; pass --no-elbow to emit the table only"
        )
    t0 = time.perf_counter()
    curve = k_curve(front, args.kmax, variant, workers=args.workers)
    elbow = None if args.no_elbow else elbow_select(curve)
    wall = time.perf_counter() - t0
    if args.format == "json":
        report = {
            "schema": "pfkcenter.kcurve/1",
            "source": source,
            "n": len(front),
            "variant": variant.value,
            "k_max": args.kmax,
            "entries": [{"k": k, "radius": float(r)} for k, r in curve.entries],
            "elbow_k": elbow,
            "wall_time_s": wall,
        }
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        out = io.StringIO()
        out.write(f"# schema=pfkcenter.kcurve/1\n# source={source}\n")
        out.write(f"# n={len(front)}\n# variant={variant.value}\n")
        out.write(f"# elbow_k={'' if elbow is None else elbow}\n")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["k", "radius"])
        for k, r in curve.entries:
            w.writerow([k, _fmt(r)])
        _emit(out.getvalue(), args.out)
    return EXIT_OK


def _cmd_generate(args) -> int:
    spec = InstanceSpec(n=args.n, shape=args.shape, noise=args.noise, seed=args.seed)
    front = spec.build()
    if args.out.endswith(".json"):
        text = json.dumps(
            [[float(x), float(y)] for x, y in zip(front.xs, front.ys)]
        ) + "\n"
    else:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["obj1", "obj2"])
        for x, y in zip(front.xs, front.ys):
            w.writerow([_fmt(x), _fmt(y)])
        text = out.getvalue()
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    return EXIT_OK


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    variant = Variant(args.variant)
    w_max = args.workers
    runs = []
    for n in sizes:
        front = generate_front(n, args.shape, args.noise, args.seed)
        per_worker = {}
        for w in sorted({1, w_max}):
            t0 = time.perf_counter()
            sol = solve(front, args.k, variant, workers=w)
            wall = time.perf_counter() - t0
            per_worker[w] = (sol, wall)
        base, base_wall = per_worker[1]
        entry = {
            "n": n,
            "k": args.k,
            "variant": variant.value,
            "opt_radius_sq": float(base.opt_radius_sq),
            "cost_evals": int(base.stats.cost_evals),
            "max_line_cost_evals": max(base.stats.per_line_cost_evals, default=0),
            "peak_dp_lines": int(base.stats.peak_dp_lines),
            "wall_time_s": {str(w): t for w, (_, t) in per_worker.items()},
        }
        if w_max > 1:
            par, par_wall = per_worker[w_max]
            identical = (
                par.opt_radius_sq == base.opt_radius_sq
                and par.clusters == base.clusters
            )
            entry["identical_across_workers"] = identical
            entry["speedup"] = base_wall / par_wall if par_wall > 0 else None
            if not identical:
                raise RuntimeError(
                    f"n={n}: parallel run diverged from single-worker run"
                )
        runs.append(entry)
    report = {
        "schema": "pfkcenter.bench/1",
        "workers_max": w_max,
        "runs": runs,
    }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    front, source = _front_from_args(args)
    variant = Variant(args.variant)
    res = brute_force_intervals(front, args.k, variant)
    report = {
        "schema": "pfkcenter.oracle/1",
        "source": source,
        "n": len(front),
        "variant": variant.value,
        "k": args.k,
        "opt_radius_sq": float(res.opt_radius_sq),
        "opt_radius": math.sqrt(res.opt_radius_sq),
        "optimal_boundaries": [
            [b + 1 for b in ends] for ends in res.optimal_boundaries
        ],
        "front": [[float(x), float(y)] for x, y in zip(front.xs, front.ys)],
    }
    if args.all_partitions:
        report["all_partitions_opt_radius_sq"] = brute_force_all_partitions(
            front, args.k, variant
        )
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _add_instance_args(p: _Parser) -> None:
    p.add_argument("--input", help="CSV (two numeric columns) or JSON instance file")
    p.add_argument("--gen", help="generator spec, e.g. 'shape=convex,n=100,seed=7'")
    p.add_argument(
        "--sanitize",
        action="store_true",
        help="drop duplicate and dominated input points instead of failing",
    )


def _add_common_solve_args(p: _Parser) -> None:
    p.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.CONTINUOUS.value,
    )
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> _Parser:
    parser = _Parser(prog="pfkcenter", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance for a fixed k")
    _add_instance_args(p)
    _add_common_solve_args(p)
    p.add_argument("--k", type=int, required=True, help="number of clusters")
    p.add_argument("--backtrack", choices=["min", "max"], default="min")
    p.add_argument("--balance", choices=["radius", "cardinality"])
    p.add_argument("--plot", help="also write an SVG of the clustering here")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("kcurve", help="optimal radius for every k up to --kmax")
    _add_instance_args(p)
    _add_common_solve_args(p)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--no-elbow", action="store_true")
    p.set_defaults(func=_cmd_kcurve)

    p = sub.add_parser("generate", help="write a synthetic instance file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shape", choices=list(SHAPES), default="random-staircase")
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("bench", help="time solves across sizes and worker counts")
    p.add_argument("--sizes", default="1000,10000,100000")
    p.add_argument("--k", type=int, default=8)
    p.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.CONTINUOUS.value,
    )
    p.add_argument("--shape", choices=list(SHAPES), default="random-staircase")
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--workers", type=int, default=max(os.cpu_count() or 1, 1),
        help="worker count for the parallel runs (compared against 1)",
    )
    p.add_argument("--out")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("oracle", help="emit brute-force fixtures (small n only)")
    _add_instance_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.CONTINUOUS.value,
    )
    p.add_argument("--all-partitions", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return 0 if e.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FrontValidationError as e:
        print(
            f"validation error: {e} (offending input positions "
            f"{e.index_a} and {e.index_b}, 0-based)",
            file=sys.stderr,
        )
        return EXIT_VALIDATION
    except _InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_IO
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_IO
    except (OracleGuardError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
