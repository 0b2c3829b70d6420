"""Command-line surface.

Subcommands: maximize, count, rank1, norm2, separability, bench.  Inputs are
JSON files (tensor: {"dims": [...], "coeffs": [...]}, matrix: {"rows": ...,
"cols": ..., "entries": [...]}, state: {"dimA": ..., "dimB": ...,
"matrix": {...}}); reports are JSON with numbers at 10 significant digits.
Exit codes: 0 success, 1 input/output error, 2 solver error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import algsolver, apps, chowcount, poweriter
from .errors import DimensionMismatchError, SphereMaxError
from .linalg import Matrix
from .multiform import MultilinearForm

EXIT_OK = 0
EXIT_IO = 1
EXIT_SOLVER = 2

DEFAULT_BENCH_ROWS = ((2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 2, 5), (2, 3, 3))
FULL_BENCH_ROWS = DEFAULT_BENCH_ROWS + ((3, 3, 3),)


class InputError(Exception):
    """Malformed input file or arguments; maps to exit code 1."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str = None
    method: str = "auto"
    chart: str = "sphere"
    tol: float = poweriter.DEFAULT_TOL
    max_iters: int = poweriter.DEFAULT_MAX_ITERS
    seed: int = 0
    budget_reductions: int = algsolver.DEFAULT_REDUCTION_BUDGET
    output_path: str = None
    emit_points: bool = False
    force: bool = False
    dims: tuple = ()
    rows: tuple = ()
    extra: dict = field(default_factory=dict)


def _sig10(x: float) -> float:
    """Round to 10 significant digits (the report formatting contract)."""
    if x == 0.0 or not math.isfinite(x):
        return x
    return float(f"{x:.10g}")


def _jsonify(obj):
    if isinstance(obj, float):
        return _sig10(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    return obj


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _require(data: dict, key: str, path: str):
    if key not in data:
        raise InputError(f"{path}: missing field {key!r}")
    return data[key]


def _parse_form(path: str) -> MultilinearForm:
    data = _load_json(path)
    dims = _require(data, "dims", path)
    coeffs = _require(data, "coeffs", path)
    if not isinstance(dims, list) or not all(isinstance(d, int) and d > 0 for d in dims):
        raise InputError(f"{path}: dims must be a list of positive integers")
    if not isinstance(coeffs, list) or not all(isinstance(c, (int, float)) for c in coeffs):
        raise InputError(f"{path}: coeffs must be a list of numbers")
    if len(coeffs) != math.prod(dims):
        raise InputError(
            f"{path}: coeffs length mismatch (got {len(coeffs)}, "
            f"dims {dims} require {math.prod(dims)})"
        )
    return MultilinearForm(dims=tuple(dims), coeffs=coeffs)


def _parse_matrix_obj(data: dict, path: str) -> Matrix:
    rows = _require(data, "rows", path)
    cols = _require(data, "cols", path)
    entries = _require(data, "entries", path)
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise InputError(f"{path}: rows and cols must be positive integers")
    if not isinstance(entries, list) or not all(isinstance(c, (int, float)) for c in entries):
        raise InputError(f"{path}: entries must be a list of numbers")
    if len(entries) != rows * cols:
        raise InputError(
            f"{path}: entries length mismatch (got {len(entries)}, "
            f"{rows}x{cols} requires {rows * cols})"
        )
    return Matrix(rows=rows, cols=cols, entries=entries)


def _parse_matrix(path: str) -> Matrix:
    return _parse_matrix_obj(_load_json(path), path)


def _parse_state(path: str) -> apps.DensityState:
    data = _load_json(path)
    dim_a = _require(data, "dimA", path)
    dim_b = _require(data, "dimB", path)
    matrix = _require(data, "matrix", path)
    if not isinstance(dim_a, int) or not isinstance(dim_b, int):
        raise InputError(f"{path}: dimA and dimB must be integers")
    if not isinstance(matrix, dict):
        raise InputError(f"{path}: matrix must be a JSON object")
    try:
        return apps.DensityState(
            dim_a=dim_a, dim_b=dim_b, matrix=_parse_matrix_obj(matrix, path)
        )
    except SphereMaxError as exc:
        raise InputError(f"{path}: not a valid state: {exc}") from exc


def _emit(report: dict, cfg: RunConfig):
    text = json.dumps(_jsonify(report), indent=2, sort_keys=True)
    if cfg.output_path:
        try:
            with open(cfg.output_path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise InputError(f"cannot write {cfg.output_path}: {exc}") from exc
    print(text)


def _points_json(points):
    return [
        {
            "vectors": [[float(c) for c in v] for v in p.vectors],
            "value": float(p.value),
            "residual": float(p.residual),
        }
        for p in points
    ]


def _resolved_method(cfg: RunConfig, order: int) -> str:
    if cfg.method == "auto":
        return "power" if order == 2 else "algebraic"
    return cfg.method


def cmd_maximize(cfg: RunConfig) -> int:
    form = _parse_form(cfg.input_path)
    method = _resolved_method(cfg, form.order)
    t0 = time.perf_counter()
    report = {"method": method, "chart": None, "flags": []}
    if method == "power":
        if form.order == 2:
            result = poweriter.bilinear_max(
                form, seed=cfg.seed, tol=cfg.tol, max_iters=cfg.max_iters
            )
        else:
            result = poweriter.multilinear_iterate(
                form, seed=cfg.seed, tol=cfg.tol, max_iters=cfg.max_iters
            )
        report["maxValue"] = result.value
        report["flags"] = [result.status.value]
        report["iterations"] = result.iterations
        report["residual"] = result.residual
        if cfg.emit_points:
            report["points"] = [
                {
                    "vectors": [[float(c) for c in v] for v in result.point],
                    "value": result.value,
                    "residual": result.residual,
                }
            ]
    else:
        report["chart"] = cfg.chart
        if cfg.chart == "affine" or cfg.emit_points:
            solved = algsolver.solve_argmax(
                form,
                budget=cfg.budget_reductions,
                force=cfg.force,
                seed=cfg.seed,
            )
        else:
            solved = algsolver.solve_max(form, budget=cfg.budget_reductions)
        report["maxValue"] = solved.max_value
        report["quotientDim"] = solved.quotient_dim
        report["flags"] = list(solved.genericity_flags)
        if cfg.emit_points:
            report["points"] = _points_json(solved.points)
    report["timings"] = {"total": time.perf_counter() - t0}
    _emit(report, cfg)
    return EXIT_OK


def cmd_count(cfg: RunConfig) -> int:
    if len(cfg.dims) < 2:
        raise InputError("count needs at least two slot dimensions")
    if any(d < 1 for d in cfg.dims):
        raise InputError(f"slot dimensions must be positive, got {cfg.dims}")
    print(chowcount.count_extreme_classes(cfg.dims))
    return EXIT_OK


def cmd_rank1(cfg: RunConfig) -> int:
    form = _parse_form(cfg.input_path)
    t0 = time.perf_counter()
    result = apps.closest_rank_one(
        form, method=cfg.method, seed=cfg.seed, force=cfg.force
    )
    report = {
        "method": _resolved_method(cfg, form.order),
        "factors": [[float(c) for c in v] for v in result.factors.factors],
        "maxValue": result.max_value,
        "distance": result.distance,
        "timings": {"total": time.perf_counter() - t0},
    }
    _emit(report, cfg)
    return EXIT_OK


def cmd_norm2(cfg: RunConfig) -> int:
    matrix = _parse_matrix(cfg.input_path)
    t0 = time.perf_counter()
    value = apps.matrix_norm2(matrix, method=cfg.method, seed=cfg.seed)
    report = {
        "method": _resolved_method(cfg, 2),
        "norm2": value,
        "timings": {"total": time.perf_counter() - t0},
    }
    _emit(report, cfg)
    return EXIT_OK


def cmd_separability(cfg: RunConfig) -> int:
    state = _parse_state(cfg.input_path)
    t0 = time.perf_counter()
    result = apps.entanglement_check(state, method=cfg.method, seed=cfg.seed)
    report = {
        "method": _resolved_method(cfg, 3),
        "verdict": result.verdict,
        "selfOverlap": result.self_overlap,
        "sepMax": result.sep_max,
        "timings": {"total": time.perf_counter() - t0},
    }
    _emit(report, cfg)
    return EXIT_OK


def _random_integer_form(dims, rng) -> MultilinearForm:
    while True:
        coeffs = rng.integers(-9, 10, size=math.prod(dims))
        if np.any(coeffs):
            return MultilinearForm(dims=tuple(dims), coeffs=coeffs.astype(float))


def bench_row(dims, seed: int, budget: int) -> dict:
    """One benchmark row: seeded random integer form, affine-chart pipeline,
    per-stage wall clock.  The affine quotient dimension of a generic form
    equals the extreme-class count."""
    rng = np.random.default_rng(seed)
    form = _random_integer_form(dims, rng)
    row = {"dims": list(dims), "expectedClasses": chowcount.count_extreme_classes(dims)}
    try:
        t0 = time.perf_counter()
        system = algsolver.build_critical_system(form, chart="affine")
        t1 = time.perf_counter()
        gb = algsolver.groebner(system, budget=budget)
        ns = algsolver.normal_set(gb)
        t2 = time.perf_counter()
        solved = algsolver.solve_argmax(
            form, budget=budget, force=True, seed=seed, system=system, gb=gb, ns=ns
        )
        t3 = time.perf_counter()
        row.update(
            quotientDim=solved.quotient_dim,
            maxValue=solved.max_value,
            timings={
                "systemBuild": t1 - t0,
                "groebnerNormalSet": t2 - t1,
                "eigen": t3 - t2,
                "total": t3 - t0,
            },
        )
    except SphereMaxError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def cmd_bench(cfg: RunConfig) -> int:
    rows = cfg.rows
    report = {"seed": cfg.seed, "rows": [bench_row(d, cfg.seed, cfg.budget_reductions) for d in rows]}
    _emit(report, cfg)
    for row in report["rows"]:
        dims = "x".join(str(d) for d in row["dims"])
        if "error" in row:
            print(f"# {dims}: {row['error']}", file=sys.stderr)
        else:
            t = row["timings"]
            print(
                f"# {dims}: quotientDim={row['quotientDim']} "
                f"groebner={t['groebnerNormalSet']:.3f}s total={t['total']:.3f}s",
                file=sys.stderr,
            )
    return EXIT_OK


def _parse_bench_rows(values, full: bool):
    if values is None:
        return FULL_BENCH_ROWS if full else DEFAULT_BENCH_ROWS
    rows = []
    for item in values:
        try:
            dims = tuple(int(p) for p in item.split(","))
        except ValueError as exc:
            raise InputError(f"bad --rows entry {item!r}: {exc}") from exc
        if len(dims) < 2 or any(d < 1 for d in dims):
            raise InputError(f"bad --rows entry {item!r}: need >=2 positive dims")
        rows.append(dims)
    if full:
        rows.append((3, 3, 3))
    return tuple(rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spheremax",
        description="Maxima of multilinear forms over products of unit spheres.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_input=True):
        if with_input:
            p.add_argument("input", help="input JSON file")
        p.add_argument(
            "--method",
            choices=("algebraic", "power", "auto"),
            default="auto",
            help="solver (auto: power for bilinear, algebraic otherwise)",
        )
        p.add_argument("--tol", type=float, default=poweriter.DEFAULT_TOL)
        p.add_argument("--max-iters", type=int, default=poweriter.DEFAULT_MAX_ITERS)
        p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $SPHEREMAX_SEED or 0)")
        p.add_argument("--budget-reductions", type=int, default=algsolver.DEFAULT_REDUCTION_BUDGET)
        p.add_argument("--force", action="store_true", help="override solver preconditions")
        p.add_argument("--out", default=None, help="also write the JSON report to this file")

    p = sub.add_parser("maximize", help="maximum of |form| over the sphere product")
    add_common(p)
    p.add_argument("--chart", choices=("sphere", "affine"), default="sphere")
    p.add_argument("--points", action="store_true", help="include critical points in the report")

    p = sub.add_parser("count", help="number of extreme-point classes (exact)")
    p.add_argument("dims", type=int, nargs="+", help="slot dimensions, e.g. 3 3 3")

    p = sub.add_parser("rank1", help="closest unit rank-one form")
    add_common(p)

    p = sub.add_parser("norm2", help="matrix 2-norm (first singular value)")
    add_common(p)

    p = sub.add_parser("separability", help="separable maximum and entanglement verdict")
    add_common(p)

    p = sub.add_parser("bench", help="timing sweep of the algebraic pipeline")
    p.add_argument("--rows", nargs="*", default=None, help='rows like "2,2,3" (empty for none)')
    p.add_argument("--full", action="store_true", help="include the 3,3,3 row")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget-reductions", type=int, default=algsolver.DEFAULT_REDUCTION_BUDGET)
    p.add_argument("--out", default=None)
    return parser


def _default_seed() -> int:
    raw = os.environ.get("SPHEREMAX_SEED", "0")
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"SPHEREMAX_SEED={raw!r} is not an integer") from exc


def _config_from_args(args) -> RunConfig:
    seed = args.seed if getattr(args, "seed", None) is not None else _default_seed()
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        method=getattr(args, "method", "auto"),
        chart=getattr(args, "chart", "sphere"),
        tol=getattr(args, "tol", poweriter.DEFAULT_TOL),
        max_iters=getattr(args, "max_iters", poweriter.DEFAULT_MAX_ITERS),
        seed=seed,
        budget_reductions=getattr(args, "budget_reductions", algsolver.DEFAULT_REDUCTION_BUDGET),
        output_path=getattr(args, "out", None),
        emit_points=getattr(args, "points", False),
        force=getattr(args, "force", False),
        dims=tuple(getattr(args, "dims", ()) or ()),
        rows=_parse_bench_rows(getattr(args, "rows", None), getattr(args, "full", False))
        if args.command == "bench"
        else (),
    )


_COMMANDS = {
    "maximize": cmd_maximize,
    "count": cmd_count,
    "rank1": cmd_rank1,
    "norm2": cmd_norm2,
    "separability": cmd_separability,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DimensionMismatchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SphereMaxError as exc:
        print(f"solver error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
