"""The finite Hilbert transform ``(Hf)(x) = (1/pi) p.v. int_{-1}^{1} f(y) / (x - y) dy``.

The operator acts in coefficient space. Writing

    f(x) sqrt(1 - x^2) = sum_k a_k T_k(x),

the transform on (-1, 1) is ``Hf = -sum_{k>=1} a_k U_{k-1}``. With the kernel
``1/(x - y)`` the classical identity is

    (1/pi) p.v. int T_k(y) / ((x - y) sqrt(1 - y^2)) dy = -U_{k-1}(x),

so ``H[y / sqrt(1 - y^2)] = -1``. The constant term ``a_0`` is annihilated:
``c / sqrt(1 - x^2)`` spans the null space, and on the complement the map is
an isometry between the ``(1 - x^2)^(1/2)``-weighted L2 norms.
"""

from __future__ import annotations

import functools
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import special

from . import catalog
from .chebyshev import (
    DEFAULT_N,
    TAIL_TOL,
    Basis,
    ChebSeries,
    GridFunction,
    Weight,
    analyze_T,
    cheb_nodes,
    node_sines,
    synth,
    synth_grid,
    tail_mass,
    weighted_norm_sq,
)
from .errors import DomainError, MeanValueError, OracleError, ResolutionError, UnderResolvedWarning

MEAN_TOL = 1e-10


@dataclass(frozen=True)
class FhtInput:
    """Samples of ``f`` on the Gauss grid, plus the series of ``f sqrt(1-x^2)``."""

    f: GridFunction

    @functools.cached_property
    def g(self) -> ChebSeries:
        return analyze_T(self.f.values * node_sines(self.f.n))

    @property
    def n(self) -> int:
        return self.f.n

    @property
    def a0(self) -> float:
        """Mean-value pairing: ``a_0 = (1/pi) int f(x) dx``."""
        return float(self.g.coeffs[0])

    @classmethod
    def from_callable(cls, f: Callable, n: int = DEFAULT_N) -> "FhtInput":
        h = getattr(f, "weighted", None)
        if h is None:
            return cls(GridFunction.sample(f, n))
        # divide by sin(theta_j): 1 - x_j^2 loses digits next to the endpoints
        hv = np.broadcast_to(np.asarray(h(cheb_nodes(n)), dtype=float), (n,))
        return cls(GridFunction(hv / node_sines(n)))

    @classmethod
    def from_series(cls, a: ChebSeries, n: int | None = None) -> "FhtInput":
        """Input whose weighted product ``f sqrt(1-x^2)`` is the T-series ``a``."""
        a = ChebSeries(a.coeffs, Basis.FIRST)
        n = DEFAULT_N if n is None else n
        if a.degree >= n:
            raise ValueError(f"degree {a.degree} does not fit on an n={n} grid")
        h = synth_grid(a, n).values
        return cls(GridFunction(h / node_sines(n)))


def _as_input(obj) -> FhtInput:
    if isinstance(obj, FhtInput):
        return obj
    if isinstance(obj, GridFunction):
        return FhtInput(obj)
    raise TypeError(f"expected FhtInput or GridFunction, got {type(obj).__name__}")


def fht_coeff_map(a: ChebSeries) -> ChebSeries:
    """Map the T-coefficients of ``f sqrt(1-x^2)`` to the U-coefficients of ``Hf``.

    ``U_{k-1}`` receives ``-a_k``; ``a_0`` is dropped.
    """
    c = np.asarray(a.coeffs, dtype=float)
    out = -c[1:] if c.size > 1 else np.zeros(1)
    return ChebSeries(out, Basis.SECOND)


def _resolution_gate(series: ChebSeries, strict: bool, tol: float) -> float:
    mass = tail_mass(series)
    if mass > tol:
        msg = (
            f"input is under-resolved: tail mass {mass:.3e} exceeds {tol:.1e}; "
            "sample f on a finer grid"
        )
        if strict:
            raise ResolutionError(msg, mass)
        warnings.warn(msg, UnderResolvedWarning, stacklevel=3)
    return mass


def fht_series(inp, strict: bool = True, tol: float = TAIL_TOL) -> ChebSeries:
    """U-series of ``Hf`` on (-1, 1)."""
    inp = _as_input(inp)
    _resolution_gate(inp.g, strict, tol)
    return fht_coeff_map(inp.g)


def fht_apply(inp, strict: bool = True, tol: float = TAIL_TOL) -> GridFunction:
    """``Hf`` at the Chebyshev nodes of the input grid.

    Raises :class:`ResolutionError` when the tail diagnostic of the T-series
    fails and ``strict`` is set; otherwise an :class:`UnderResolvedWarning` is
    emitted and the truncated result returned.
    """
    inp = _as_input(inp)
    return synth_grid(fht_series(inp, strict, tol), inp.n)


def fht_eval(inp, x, strict: bool = True):
    """``Hf`` at arbitrary points of [-1, 1]."""
    return synth(fht_series(inp, strict), x)


@functools.lru_cache(maxsize=16)
def _legendre_rule(n: int):
    t, w = special.roots_legendre(n)
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def fht_quadrature_oracle(f: Callable, x, n: int = 512):
    """Independent principal-value evaluation of ``Hf(x)`` for interior ``x``.

    Subtracts ``f(x)`` to remove the pole and adds back the closed form

        p.v. int_{-1}^{1} dy / (x - y) = log((1 + x) / (1 - x)).

    The regular remainder is integrated after ``y = cos(theta)``, which
    absorbs inverse-square-root endpoint behaviour, by Gauss-Legendre on
    ``[0, psi]`` and ``[psi, pi]`` (``x = cos psi``) with ``n / 2`` nodes
    each. If ``f`` has a ``weighted`` attribute (``f(y) sqrt(1-y^2)``), it is
    used instead of multiplying ``f`` by ``sin(theta)``.

    Slow; meant as ground truth for tests.
    """
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(~np.isfinite(xa)) or np.any(np.abs(xa) >= 1):
        raise OracleError("the oracle needs points strictly inside (-1, 1)")
    fx = np.asarray(f(xa), dtype=float) * np.ones_like(xa)
    if not np.all(np.isfinite(fx)):
        raise OracleError("f is not finite at the evaluation point")
    half = max(2, n // 2)
    t, w = _legendre_rule(half)
    psi = np.arccos(xa)[:, None]
    left = 0.5 * psi * (t + 1.0)
    right = psi + 0.5 * (np.pi - psi) * (t + 1.0)
    theta = np.concatenate([left, right], axis=1)
    weights = np.concatenate([0.5 * psi * w, 0.5 * (np.pi - psi) * w], axis=1)
    y = np.cos(theta)
    sin_t = np.sin(theta)
    h = getattr(f, "weighted", None)
    hv = h(y) if h is not None else f(y) * sin_t
    hv = np.asarray(hv, dtype=float) * np.ones_like(theta)
    if not np.all(np.isfinite(hv)):
        raise OracleError("f is not integrable against the substituted measure")
    # x - cos(theta) without cancellation
    gap = 2.0 * np.sin(0.5 * (theta + psi)) * np.sin(0.5 * (theta - psi))
    regular = np.sum(weights * (hv - fx[:, None] * sin_t) / gap, axis=1)
    value = (regular + fx * np.log((1.0 + xa) / (1.0 - xa))) / np.pi
    return float(value[0]) if np.ndim(x) == 0 else value


@dataclass(frozen=True)
class ParsevalResult:
    lhs: float
    rhs: float
    rel_gap: float
    a0: float
    corrected_gap: float

    @property
    def correction(self) -> float:
        """``pi a_0^2``: the mass of the null direction, invisible to ``H``."""
        return float(np.pi * self.a0**2)


def parseval_check(inp, strict: bool = True, tol: float = MEAN_TOL) -> ParsevalResult:
    """Compare both sides of the weighted Parseval identity.

    ``lhs = int (Hf)^2 sqrt(1-x^2)`` and ``rhs = int f^2 sqrt(1-x^2)``. The
    identity requires ``a_0 = 0``; in general ``lhs = rhs - pi a_0^2``, and
    ``corrected_gap`` measures that version. With ``strict`` a nonzero
    ``a_0`` (beyond ``tol``) raises :class:`MeanValueError` carrying the
    result.
    """
    inp = _as_input(inp)
    hf = fht_apply(inp, strict=False)
    lhs = weighted_norm_sq(hf, Weight.SQRT)
    rhs = weighted_norm_sq(inp.f, Weight.SQRT)
    a0 = inp.a0
    scale = rhs if rhs > 0 else 1.0
    result = ParsevalResult(
        lhs=lhs,
        rhs=rhs,
        rel_gap=abs(lhs - rhs) / scale,
        a0=a0,
        corrected_gap=abs(lhs - (rhs - np.pi * a0 * a0)) / scale,
    )
    if strict and abs(a0) > tol:
        raise MeanValueError(
            f"f sqrt(1-x^2) has mean a_0 = {a0:.6g}; the identity holds as "
            f"lhs = rhs - pi a_0^2 = {rhs - result.correction:.12g} (lhs = {lhs:.12g})",
            result,
        )
    return result


def nullspace_residual(c: float, n: int = DEFAULT_N) -> float:
    """Weighted L2 norm of ``H[c / sqrt(1 - x^2)]`` on (-1, 1)."""
    hf = fht_apply(FhtInput.from_callable(catalog.null_family(c), n))
    return float(np.sqrt(weighted_norm_sq(hf, Weight.SQRT)))


def outer_transform(f: GridFunction, x):
    """``Hf(x)`` for ``|x| > 1``, where the kernel is smooth.

    Gauss-Chebyshev on the grid of ``f`` with ``sqrt(1-y^2)`` folded in.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) <= 1):
        raise DomainError("outer_transform needs |x| > 1; use fht_apply inside")
    y = f.nodes
    h = f.values * node_sines(f.n)
    out = (h / (xa[..., None] - y)).sum(axis=-1) / f.n
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class ProbeReport:
    outer_norm: float
    inner_norm: float
    deriv_norm: float
    log_ratio: float

    @property
    def ratio(self) -> float:
        """``||f'|| / ||f||``: the roughness the lower bound depends on."""
        return self.deriv_norm / self.inner_norm


def lower_bound_probe(f: GridFunction, df: GridFunction, outer_nodes: int = 32) -> ProbeReport:
    """Measure ``||Hf||_{L2(2,3)}``, ``||f||_{L2(-1,1)}`` and ``||f'||_{L2(-1,1)}``.

    ``f`` and ``df`` are samples of a smooth function supported inside
    (-1, 1) and of its derivative on the same grid.
    """
    if f.n != df.n:
        raise ValueError("f and f' must be sampled on the same grid")
    s = node_sines(f.n)
    inner = np.sqrt(np.pi / f.n * np.sum(f.values**2 * s))
    if inner == 0.0:
        raise ValueError("f vanishes identically; the probe needs f != 0")
    deriv = np.sqrt(np.pi / f.n * np.sum(df.values**2 * s))
    t, w = _legendre_rule(outer_nodes)
    hf = outer_transform(f, 2.5 + 0.5 * t)
    outer = np.sqrt(0.5 * np.sum(w * hf**2))
    return ProbeReport(float(outer), float(inner), float(deriv), float(np.log(inner / outer)))


def probe_bump(width: float, n: int = 2048) -> ProbeReport:
    """:func:`lower_bound_probe` for a centred bump of the given support length."""
    b = catalog.bump(width)
    return lower_bound_probe(GridFunction.sample(b, n), GridFunction.sample(b.derivative, n))


def probe_sweep(widths: Sequence[float], n: int = 2048, workers: int = 1) -> list[ProbeReport]:
    """Probe a list of bump widths; results keep the order of ``widths``."""
    if workers <= 1:
        return [probe_bump(w, n) for w in widths]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda w: probe_bump(w, n), widths))


def superlinear_exponent(ratios, log_ratios) -> float:
    """Excess growth exponent of ``log_ratio`` as a function of ``ratio``.

    Fits ``log_ratio - log_ratio[0] ~ C (ratio - ratio[0])^p`` by least squares
    in log-log coordinates over the points where both increments are positive
    and returns ``p - 1``. At most affine growth gives ``p - 1 <= 0``. Returns
    ``-inf`` when ``log_ratio`` does not increase along the sweep.
    """
    r = np.asarray(ratios, dtype=float)
    L = np.asarray(log_ratios, dtype=float)
    order = np.argsort(r)
    r, L = r[order], L[order]
    dr, dL = r[1:] - r[0], L[1:] - L[0]
    keep = (dr > 0) & (dL > 0)
    if keep.sum() == 0:
        return float("-inf")
    if keep.sum() == 1:
        # one point: compare against the origin of the increments only
        return float(np.log(dL[keep][0]) / np.log(dr[keep][0]) - 1.0) if dr[keep][0] != 1 else 0.0
    p = np.polyfit(np.log(dr[keep]), np.log(dL[keep]), 1)[0]
    return float(p - 1.0)
