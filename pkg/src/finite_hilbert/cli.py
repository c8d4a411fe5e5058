"""Command-line front end: ``finite-hilbert <command> [options]``.

Every command writes one table plus a summary, as CSV (``# config:`` and
``# summary:`` comment lines, then a header row) or as a single JSON object
with sorted keys. Exit status is 0 when all checks pass, 1 on a numerical
threshold breach or a numerical failure, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import time
import warnings
from typing import Callable, Sequence

import numpy as np

from . import catalog
from .airfoil import airfoil_residual, airfoil_solve
from .chebyshev import ChebSeries, Basis, GridFunction, cheb_nodes, node_sines, tail_mass
from .circle import fht_via_circle
from .errors import (
    ConvergenceError,
    DegenerateWeightError,
    InstabilityError,
    ResolutionError,
    UnderResolvedWarning,
)
from .flow import evolve, empirical_roots, initial_profile
from .roots import (
    RootSet,
    hermite_roots,
    ks_statistic,
    ks_to_arcsine,
    roots_via_jacobi,
    semicircle_cdf,
    weight_recurrence,
)
from .transform import (
    FhtInput,
    fht_apply,
    fht_eval,
    nullspace_residual,
    parseval_check,
    probe_sweep,
    superlinear_exponent,
)

MAX_ROOTS_N = 100_000
NULL_CS = (1.0, -1.0, 1e3, -1e3, 1e-3, -1e-3)


class UsageError(Exception):
    """Bad combination of options discovered after parsing."""


# --- output ---------------------------------------------------------------


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if np.isfinite(v) else str(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    return v


def _dumps(obj, **kw) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, **kw)


def _cell(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.16e}"
    return str(v)


def render(config: dict, summary: dict, table: dict, fmt: str) -> str:
    """Serialize one run. ``table`` maps column names to equal-length columns."""
    if fmt == "json":
        return _dumps({"config": config, "summary": summary, "table": table}, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# config: {_dumps(config)}\n")
    buf.write(f"# summary: {_dumps(summary)}\n")
    cols = list(table)
    buf.write(",".join(cols) + "\n")
    for row in zip(*(table[c] for c in cols)):
        buf.write(",".join(_cell(v) for v in row) + "\n")
    return buf.getvalue()


def _emit(args, summary: dict, table: dict) -> None:
    text = render(_config_of(args), summary, table, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_of(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("handler", "out", "timing")}
    return cfg


def _floats(text: str) -> list[float]:
    try:
        vals = [float(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc
    if not vals:
        raise argparse.ArgumentTypeError("the list is empty")
    return vals


def _ints(text: str) -> list[int]:
    vals = _floats(text)
    if any(v != int(v) or v < 1 for v in vals):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return [int(v) for v in vals]


# --- transform ----------------------------------------------------------------


def _read_samples(path: str) -> FhtInput:
    try:
        data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    except ValueError:
        data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2, skiprows=1)
    if data.shape[1] < 2:
        raise UsageError("sample files need two columns: x, f")
    order = np.argsort(-data[:, 0])
    x, f = data[order, 0], data[order, 1]
    n = x.size
    if np.max(np.abs(x - cheb_nodes(n))) > 1e-10:
        raise UsageError(f"x column does not match the {n} Chebyshev-Gauss nodes cos((2j-1)pi/(2n))")
    return FhtInput(GridFunction(f))


def _transform_input(args) -> tuple[FhtInput, np.ndarray]:
    sel = args.function
    if sel == "file":
        if not args.input:
            raise UsageError("--function file needs --input PATH")
        inp = _read_samples(args.input)
        return inp, inp.f.values
    if sel == "null-family":
        wf = catalog.null_family(args.c)
    elif sel == "tk":
        wf = catalog.chebyshev_over_weight(args.k)
    elif sel == "bump":
        wf = catalog.bump(args.width)
    else:
        wf = catalog.CATALOG[sel]()
    inp = FhtInput.from_callable(wf, args.n)
    return inp, inp.f.values


def cmd_transform(args) -> int:
    inp, fvals = _transform_input(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnderResolvedWarning)
        hf = fht_apply(inp, strict=False)
    tm = tail_mass(inp.g)
    x = inp.f.nodes
    order = np.argsort(x)
    summary = {"n": inp.n, "tail_mass": tm, "resolved": bool(tm <= args.tol), "a0": inp.a0}
    _emit(args, summary, {"x": x[order], "f": fvals[order], "Hf": hf.values[order]})
    return 0


# --- verify ---------------------------------------------------------------------


def _trial_seeds(seed: int, count: int, stream: int) -> list[int]:
    ss = np.random.SeedSequence([seed, stream])
    return [int(s) for s in ss.generate_state(count, dtype=np.uint64)]


def _parseval_trial(trial_seed: int, degree: int, grid: int, a0: float | None):
    rng = np.random.default_rng(trial_seed)
    d = int(rng.integers(1, degree + 1))
    a = np.zeros(d + 1)
    a[1:] = rng.standard_normal(d)
    if a0 is not None:
        a[0] = a0
    res = parseval_check(FhtInput.from_series(ChebSeries(a, Basis.FIRST), grid), strict=False)
    return d, res


def _circle_trial(trial_seed: int, psis: np.ndarray, m: int):
    rng = np.random.default_rng(trial_seed)
    d = int(rng.integers(1, 33))
    wf = catalog.polynomial_over_weight(rng.standard_normal(d + 1))
    inp = FhtInput.from_callable(wf, 128)
    direct = fht_eval(inp, np.cos(psis))
    lifted = np.array([fht_via_circle(wf, p, m) for p in psis])
    return float(np.max(np.abs(direct - lifted)))


def cmd_verify(args) -> int:
    if args.degree >= args.grid:
        raise UsageError(f"--degree {args.degree} must be below --grid {args.grid}")
    seeds = _trial_seeds(args.seed, args.trials, 0)
    rows = [_parseval_trial(s, args.degree, args.grid, args.with_mean) for s in seeds]
    gaps = np.array([r.rel_gap for _, r in rows])
    corrected = np.array([r.corrected_gap for _, r in rows])
    # with a nonzero mean the corrected identity is the one under test
    tested = gaps if args.with_mean is None else corrected
    worst = int(np.argmax(tested))
    parseval_ok = bool(tested[worst] <= args.tol)

    null = max(nullspace_residual(c, args.n) / abs(c) for c in NULL_CS)
    null_ok = bool(null <= args.null_tol)

    psis = np.linspace(np.pi / 6, 5 * np.pi / 6, 9)
    cseeds = _trial_seeds(args.seed, args.circle_trials, 1)
    cgaps = [_circle_trial(s, psis, args.circle_m) for s in cseeds]
    cworst = int(np.argmax(cgaps))
    circle_ok = bool(cgaps[cworst] <= args.circle_tol)

    parseval = {"trials": args.trials, "max_rel_gap": float(gaps.max()), "max_corrected_gap": float(corrected.max())}
    if args.with_mean is not None:
        parseval["a0"] = args.with_mean
        parseval["correction"] = float(np.pi * args.with_mean**2)
        parseval["uncorrected_abs_gap"] = [float(abs(r.lhs - r.rhs)) for _, r in rows][worst]
    if not parseval_ok:
        parseval["offending_seed"] = seeds[worst]
    circle = {"functions": args.circle_trials, "max_abs_gap": float(cgaps[cworst])}
    if not circle_ok:
        circle["offending_seed"] = cseeds[cworst]
    summary = {
        "parseval": parseval,
        "nullspace": {"cs": list(NULL_CS), "max_residual": float(null)},
        "circle_consistency": circle,
        "passed": parseval_ok and null_ok and circle_ok,
    }
    table = {
        "trial": list(range(args.trials)),
        "seed": seeds,
        "degree": [d for d, _ in rows],
        "rel_gap": gaps,
        "corrected_gap": corrected,
    }
    _emit(args, summary, table)
    if not summary["passed"]:
        failing = [k for k, ok in (("parseval", parseval_ok), ("nullspace", null_ok), ("circle", circle_ok)) if not ok]
        print(f"threshold breach in {', '.join(failing)}", file=sys.stderr)
        return 1
    return 0


# --- roots -----------------------------------------------------------------------


def _roots_for(args, n: int) -> RootSet:
    if args.weight == "hermite":
        return hermite_roots(n)
    rec = weight_recurrence(args.weight, n, args.alpha, args.beta)
    return roots_via_jacobi(rec, n, args.method)


def _distance(args, rs: RootSet) -> dict:
    if args.weight == "hermite":
        return {"ks_to_semicircle": ks_statistic(rs.roots, semicircle_cdf)}
    return {"ks_to_arcsine": ks_to_arcsine(rs)}


def cmd_roots(args) -> int:
    ns = args.sweep or [args.n]
    if max(ns) > MAX_ROOTS_N:
        raise UsageError(f"n is capped at {MAX_ROOTS_N}")
    t0 = time.perf_counter()
    results = [(n, _roots_for(args, n)) for n in ns]
    runtime = time.perf_counter() - t0
    if args.sweep:
        key = "ks_to_semicircle" if args.weight == "hermite" else "ks_to_arcsine"
        ks = [_distance(args, rs)[key] for _, rs in results]
        summary = {"n": ns, key: ks, "nonincreasing": bool(np.all(np.diff(ks) <= 0))}
        table = {"n": ns, key: ks}
    else:
        n, rs = results[0]
        summary = {"n": n, **_distance(args, rs)}
        table = {"index": list(range(rs.degree)), "root": rs.roots}
    if args.timing:
        summary["runtime"] = runtime
    _emit(args, summary, table)
    return 0


# --- flow ------------------------------------------------------------------------


def cmd_flow(args) -> int:
    if not 0 <= args.t < 1:
        raise UsageError("--t must lie in [0, 1)")
    if not 0 < args.dt <= 2 / args.grid:
        raise UsageError(f"--dt must lie in (0, {2 / args.grid:g}] (the cell width)")
    d0 = initial_profile(args.weight, args.grid)
    d = evolve(d0, args.t, args.dt) if args.t > 0 else d0
    rs = empirical_roots(args.weight, args.t, args.n, args.alpha, args.beta)
    ks = ks_statistic(rs.roots, d.cdf)
    edges = d.edges
    hist = np.histogram(rs.roots, bins=edges)[0] / (args.n * d.dx)
    mass_err = abs(d.mass - (1 - args.t))
    tol = args.tol if args.tol is not None else (0.08 if args.weight == "hermite" else 0.05)
    summary = {
        "t": args.t,
        "steps": int(round(args.t / args.dt)),
        "derivatives": args.n - rs.degree,
        "ks_pde_vs_empirical": ks,
        "mass": d.mass,
        "mass_error": mass_err,
        "clipped": d.clipped,
        "passed": bool(ks <= tol and mass_err <= args.mass_tol),
    }
    _emit(args, summary, {"x": d.grid, "u_initial": d0.u, "u_pde": d.u, "empirical": hist})
    if not summary["passed"]:
        print(f"threshold breach: ks={ks:.4g} (tol {tol}), mass error={mass_err:.4g}", file=sys.stderr)
        return 1
    return 0


# --- airfoil -------------------------------------------------------------------


def _airfoil_rhs(args) -> GridFunction:
    if args.g == "one":
        return GridFunction(np.ones(args.n))
    if args.g == "zero":
        return GridFunction(np.zeros(args.n))
    k = args.k
    return GridFunction(np.sin((k + 1) * np.arccos(cheb_nodes(args.n))) / node_sines(args.n))


def cmd_airfoil(args) -> int:
    g = _airfoil_rhs(args)
    cs = [0.0] if args.c == 0 else [0.0, args.c]
    table = {"x": g.nodes[::-1], "g": g.values[::-1]}
    residuals = {}
    for c in cs:
        sol = airfoil_solve(g, c)
        table[f"f_c={c:g}"] = sol.sample(args.n).values[::-1]
        residuals[f"{c:g}"] = airfoil_residual(sol, g)
    worst = max(residuals.values())
    summary = {"residual": residuals, "max_residual": worst, "passed": bool(worst <= args.tol)}
    _emit(args, summary, table)
    if not summary["passed"]:
        print(f"threshold breach: residual {worst:.3e} > {args.tol:.0e}", file=sys.stderr)
        return 1
    return 0


# --- probe -----------------------------------------------------------------------


def cmd_probe(args) -> int:
    if any(not 0 < w <= 2 for w in args.widths):
        raise UsageError("bump widths must lie in (0, 2]")
    reps = probe_sweep(args.widths, args.grid, args.workers)
    ratios = [r.ratio for r in reps]
    logs = [r.log_ratio for r in reps]
    expo = superlinear_exponent(ratios, logs)
    slope = float(np.polyfit(ratios, logs, 1)[0]) if len(reps) > 1 else float("nan")
    outer_ok = all(r.outer_norm > 0 for r in reps)
    summary = {
        "superlinear_exponent": expo,
        "affine_slope": slope,
        "outer_norm_positive": outer_ok,
        "passed": bool(outer_ok and expo <= args.tol),
    }
    table = {
        "width": args.widths,
        "inner_norm": [r.inner_norm for r in reps],
        "deriv_norm": [r.deriv_norm for r in reps],
        "outer_norm": [r.outer_norm for r in reps],
        "log_ratio": logs,
    }
    _emit(args, summary, table)
    if not summary["passed"]:
        print(f"threshold breach: superlinear exponent {expo:.3g} > {args.tol}", file=sys.stderr)
        return 1
    return 0


# --- parser ------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, n: int, grid: int | None, tol: float | None) -> None:
    p.add_argument("--n", type=int, default=n, help=f"primary size (default {n})")
    ghelp = f"secondary grid size (default {grid})" if grid else "unused by this command"
    p.add_argument("--grid", type=int, default=grid, help=ghelp)
    p.add_argument("--seed", type=int, default=0, help="master seed for randomized runs (default 0)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    p.add_argument("--tol", type=float, default=tol, help=f"pass/fail threshold (default {tol})")
    p.add_argument("--workers", type=int, default=1, help="worker threads for sweeps (default 1)")
    p.add_argument("--timing", action="store_true", help="add wall-clock runtime (breaks byte-identity)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finite-hilbert", description="Finite Hilbert transform experiments on (-1, 1).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="tabulate x, f, Hf on the Chebyshev-Gauss grid")
    _common(p, n=257, grid=None, tol=1e-8)
    p.add_argument(
        "--function",
        required=True,
        choices=("null-family", "tk", "indicator", "bump", "arcsine", "semicircle", "file"),
    )
    p.add_argument("--c", type=float, default=1.0, help="null-family coefficient")
    p.add_argument("--k", type=int, default=1, help="T_k index")
    p.add_argument("--width", type=float, default=1.0, help="bump support length")
    p.add_argument("--input", help="CSV of x,f on the n Chebyshev-Gauss nodes")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("verify", help="weighted Parseval, null space and circle-lift checks")
    _common(p, n=256, grid=512, tol=1e-10)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--degree", type=int, default=200, help="max degree of random trials")
    p.add_argument("--with-mean", type=float, default=None, metavar="A0", help="force a_0 in every trial")
    p.add_argument("--null-tol", type=float, default=1e-10)
    p.add_argument("--circle-trials", type=int, default=20)
    p.add_argument("--circle-m", type=int, default=1024)
    p.add_argument("--circle-tol", type=float, default=1e-8)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("roots", help="roots of an orthogonal polynomial and their KS distance")
    _common(p, n=100, grid=None, tol=None)
    p.add_argument("--weight", choices=("chebyshev", "legendre", "jacobi", "hermite"), default="chebyshev")
    p.add_argument("--alpha", type=float, default=0.0, help="Jacobi exponent at x = 1")
    p.add_argument("--beta", type=float, default=0.0, help="Jacobi exponent at x = -1")
    p.add_argument("--sweep", type=_ints, help="comma-separated degrees")
    p.add_argument("--method", choices=("auto", "bisect", "lapack"), default="auto")
    p.set_defaults(handler=cmd_roots)

    p = sub.add_parser("flow", help="transport equation against derivative roots")
    _common(p, n=400, grid=512, tol=None)
    p.add_argument("--weight", choices=("chebyshev", "legendre", "jacobi", "hermite"), default="chebyshev")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--mass-tol", type=float, default=0.02)
    p.set_defaults(handler=cmd_flow)

    p = sub.add_parser("airfoil", help="solve H f = g")
    _common(p, n=257, grid=None, tol=1e-8)
    p.add_argument("--g", choices=("one", "zero", "uk"), default="one")
    p.add_argument("--k", type=int, default=1, help="U_k index for --g uk")
    p.add_argument("--c", type=float, default=0.0, help="null-space coefficient")
    p.set_defaults(handler=cmd_airfoil)

    p = sub.add_parser("probe", help="inner/outer norm probe over bump widths")
    _common(p, n=2048, grid=2048, tol=0.1)
    p.add_argument("--widths", type=_floats, default=[1.0, 0.5, 0.25, 0.125])
    p.set_defaults(handler=cmd_probe)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler: Callable = args.handler
    try:
        return handler(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits 2
    except (ResolutionError, InstabilityError, DegenerateWeightError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 1  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
