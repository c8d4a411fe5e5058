"""Roots of orthogonal polynomials and of their derivatives.

Orthogonal polynomials are handled through their monic three-term recurrence

    p_{k+1}(x) = (x - alpha_k) p_k(x) - beta_k p_{k-1}(x),   beta_0 = mass,

so the roots of ``p_n`` are the eigenvalues of the symmetric tridiagonal
Jacobi matrix with diagonal ``alpha_0..alpha_{n-1}`` and off-diagonal
``sqrt(beta_1)..sqrt(beta_{n-1})``. Roots of derivatives are found from the
logarithmic derivative

    p'(x) / p(x) = sum_k 1 / (x - x_k),

which is strictly decreasing between consecutive roots, so each gap holds
exactly one root of ``p'`` and bisection on the sign of the sum finds it.
Polynomial coefficients are never formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
from scipy import linalg, special

from .chebyshev import cheb_nodes, node_sines
from .errors import ConvergenceError, DegenerateWeightError, DomainError

MERGE_GAP = 1e-12
BISECT_TOL = 1e-13
BISECT_MAXITER = 200
LAPACK_THRESHOLD = 2000
_CHUNK = 1 << 22


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """Monic recurrence data; ``beta[0]`` is the total mass of the weight."""

    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        alpha, beta = _frozen(self.alpha), _frozen(self.beta)
        if alpha.shape != beta.shape or alpha.ndim != 1:
            raise ValueError("alpha and beta must be 1-D vectors of equal length")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def mass(self) -> float:
        return float(self.beta[0])

    @property
    def size(self) -> int:
        return self.alpha.size


@dataclass(frozen=True)
class RootSet:
    """Real roots of a real-rooted polynomial, kept in increasing order."""

    roots: np.ndarray

    def __post_init__(self):
        r = np.sort(np.atleast_1d(np.asarray(self.roots, dtype=float)))
        if r.ndim != 1 or not np.all(np.isfinite(r)):
            raise ValueError("roots must be a finite 1-D vector")
        object.__setattr__(self, "roots", _frozen(r))

    @property
    def degree(self) -> int:
        return self.roots.size

    @property
    def is_strict(self) -> bool:
        return bool(np.all(np.diff(self.roots) > 0))

    def __len__(self):
        return self.roots.size


# --- recurrences -----------------------------------------------------------


def stieltjes(nodes, weights, n: int, verify: bool = True, tol: float = 1e-8) -> RecurrenceCoeffs:
    """Discretized Stieltjes procedure for the measure ``sum_i w_i delta(x_i)``.

    Returns the first ``n`` recurrence pairs. With ``verify`` the Gram matrix
    of the generated orthonormal polynomials is checked against the identity
    to ``tol``.
    """
    x = np.asarray(nodes, dtype=float)
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ValueError("quadrature weights must be finite and nonnegative")
    if np.count_nonzero(w) < n:
        raise DegenerateWeightError(f"the weight charges fewer than n={n} points")
    alpha = np.zeros(n)
    beta = np.zeros(n)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    norm = w.sum()
    beta[0] = norm
    for k in range(n):
        alpha[k] = np.dot(w, x * p * p) / norm
        if k == n - 1:
            break
        p_next = (x - alpha[k]) * p - (beta[k] if k else 0.0) * p_prev
        norm_next = np.dot(w, p_next * p_next)
        if not norm_next > 0 or norm_next <= 1e-28 * norm * np.max(x * x + 1):
            raise DegenerateWeightError(f"beta_{k + 1} <= 0: the weight is supported on too few points")
        beta[k + 1] = norm_next / norm
        # rescale both carried polynomials by the same factor to dodge
        # overflow; ratios (and so alpha, beta) are unaffected
        scale = 1.0 / math.sqrt(norm_next)
        p_prev, p, norm = p * scale, p_next * scale, 1.0
    if _is_symmetric(x, w):
        # odd moments vanish; clear the rounding residue
        alpha[:] = 0.0
    rec = RecurrenceCoeffs(alpha, beta)
    if verify:
        P = orthonormal_values(rec, n, x)
        gram = (P * w) @ P.T
        err = np.max(np.abs(gram - np.eye(n)))
        if err > tol:
            raise ConvergenceError(f"Stieltjes orthogonality defect {err:.2e} exceeds {tol:.0e}")
    return rec


def _is_symmetric(x, w) -> bool:
    order = np.argsort(x, kind="stable")
    xs, ws = x[order], w[order]
    # weights from user callables may differ by an ulp between x and -x
    tol = 8 * np.finfo(float).eps * np.abs(ws)
    return bool(np.array_equal(xs, -xs[::-1]) and np.all(np.abs(ws - ws[::-1]) <= tol))


def recurrence_from_weight(w: Callable, n: int, q: int | None = None, rule: str = "chebyshev") -> RecurrenceCoeffs:
    """Recurrence coefficients of a weight on (-1, 1) by discretized Stieltjes.

    ``rule="chebyshev"`` integrates against a ``q``-point Gauss-Chebyshev
    grid with ``w(x) sqrt(1-x^2)`` folded into the weights; it is exact for
    the Chebyshev weight and converges like ``q^-2`` for weights that stay
    bounded at the endpoints. ``rule="legendre"`` uses Gauss-Legendre nodes
    and is exact for polynomial weights. ``q`` defaults to ``8 n`` and must
    be at least ``4 n``.
    """
    q = 8 * n if q is None else int(q)
    if n < 1:
        raise ValueError("n must be >= 1")
    if q < 4 * n:
        raise ValueError("the quadrature needs q >= 4 n nodes")
    if rule == "chebyshev":
        x = cheb_nodes(q)
        lam = (np.pi / q) * np.asarray(w(x), dtype=float) * node_sines(q)
    elif rule == "legendre":
        x, gw = special.roots_legendre(q)
        lam = gw * np.asarray(w(x), dtype=float)
    else:
        raise ValueError(f"unknown rule {rule!r}")
    return stieltjes(x, lam, n)


def jacobi_recurrence(a: float, b: float, n: int) -> RecurrenceCoeffs:
    """Closed-form recurrence for the weight ``(1-x)^a (1+x)^b``, ``a, b > -1``."""
    if a <= -1 or b <= -1:
        raise DegenerateWeightError(f"(1-x)^{a} (1+x)^{b} is not integrable; exponents must exceed -1")
    alpha = np.zeros(n)
    beta = np.zeros(n)
    ab = a + b
    beta[0] = 2.0 ** (ab + 1) * math.exp(math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(ab + 2))
    alpha[0] = (b - a) / (ab + 2)
    k = np.arange(1, n, dtype=float)
    s = 2 * k + ab
    with np.errstate(invalid="ignore", divide="ignore"):
        alpha[1:] = np.where(b * b - a * a == 0, 0.0, (b * b - a * a) / (s * (s + 2)))
        beta[1:] = 4 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1) * (s - 1))
    if n > 1:
        # the general formula is 0/0 at k = 1 when a + b = -1
        beta[1] = 4 * (a + 1) * (b + 1) / ((ab + 2) ** 2 * (ab + 3))
    return RecurrenceCoeffs(alpha, beta)


def chebyshev_recurrence(n: int) -> RecurrenceCoeffs:
    """First-kind Chebyshev weight ``(1-x^2)^(-1/2)``: ``beta = (pi, 1/2, 1/4, ...)``."""
    beta = np.full(n, 0.25)
    beta[0] = np.pi
    if n > 1:
        beta[1] = 0.5
    return RecurrenceCoeffs(np.zeros(n), beta)


def legendre_recurrence(n: int) -> RecurrenceCoeffs:
    """Unit weight on (-1, 1): ``beta_k = k^2 / (4k^2 - 1)``."""
    k = np.arange(n, dtype=float)
    beta = k * k / (4 * k * k - 1)
    beta[0] = 2.0
    return RecurrenceCoeffs(np.zeros(n), beta)


def hermite_recurrence(n: int) -> RecurrenceCoeffs:
    """Physicists' Hermite weight ``exp(-x^2)``: ``beta_k = k / 2``."""
    beta = np.arange(n, dtype=float) / 2
    beta[0] = math.sqrt(math.pi)
    return RecurrenceCoeffs(np.zeros(n), beta)


def weight_recurrence(name: str, n: int, a: float = 0.0, b: float = 0.0) -> RecurrenceCoeffs:
    """Recurrence for a named weight: chebyshev, legendre, jacobi or hermite."""
    if name == "chebyshev":
        return chebyshev_recurrence(n)
    if name == "legendre":
        return legendre_recurrence(n)
    if name == "jacobi":
        return jacobi_recurrence(a, b, n)
    if name == "hermite":
        return hermite_recurrence(n)
    raise ValueError(f"unknown weight {name!r}")


def orthonormal_values(rec: RecurrenceCoeffs, n: int, x) -> np.ndarray:
    """Rows ``k = 0..n-1`` of orthonormal polynomial values at ``x``."""
    x = np.asarray(x, dtype=float)
    if n > rec.size:
        raise ValueError("recurrence too short")
    out = np.empty((n,) + x.shape)
    sb = np.sqrt(rec.beta)
    out[0] = 1.0 / sb[0]
    if n > 1:
        out[1] = (x - rec.alpha[0]) * out[0] / sb[1]
    for k in range(1, n - 1):
        out[k + 1] = ((x - rec.alpha[k]) * out[k] - sb[k] * out[k - 1]) / sb[k + 1]
    return out


def eval_orthonormal(rec: RecurrenceCoeffs, n: int, x):
    """Orthonormal ``p_n(x)``; needs ``rec.size >= n + 1``."""
    return orthonormal_values(rec, n + 1, x)[n]


# --- Jacobi-matrix eigenvalues -----------------------------------------------


def _sturm_count(d, e2, pivmin, x) -> np.ndarray:
    """Number of eigenvalues below each shift in ``x``."""
    q = d[0] - x
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0).astype(np.int64)
    for i in range(1, d.size):
        q = d[i] - x - e2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count


def _bisect_eigs(d, e2, maxiter=BISECT_MAXITER) -> np.ndarray:
    n = d.size
    e = np.sqrt(e2)
    radius = np.zeros(n)
    radius[:-1] += e
    radius[1:] += e
    lo0 = float(np.min(d - radius))
    hi0 = float(np.max(d + radius))
    scale = max(abs(lo0), abs(hi0), 1e-300)
    eps = np.finfo(float).eps
    tol = 4 * eps * scale
    pivmin = np.finfo(float).tiny * max(1.0, float(np.max(e2, initial=0.0)))
    lo = np.full(n, lo0 - tol)
    hi = np.full(n, hi0 + tol)
    target = np.arange(1, n + 1)
    for _ in range(maxiter):
        width = hi - lo
        if np.all(width <= tol):
            break
        mid = 0.5 * (lo + hi)
        above = _sturm_count(d, e2, pivmin, mid) >= target
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    else:
        bad = int(np.argmax(hi - lo))
        raise ConvergenceError(
            f"Sturm bisection stalled: eigenvalue {bad} bracketed by [{lo[bad]!r}, {hi[bad]!r}]"
        )
    return 0.5 * (lo + hi)


def roots_via_jacobi(rec: RecurrenceCoeffs, n: int, method: str = "auto") -> RootSet:
    """Roots of ``p_n`` as eigenvalues of the ``n x n`` Jacobi matrix.

    ``method="bisect"`` runs a vectorized Sturm-sequence bisection;
    ``"lapack"`` hands the same bisection to LAPACK ``stebz``; ``"auto"``
    picks bisection up to ``n = 2000``.
    """
    if n < 1 or n > rec.size:
        raise ValueError(f"need 1 <= n <= {rec.size}")
    d = np.asarray(rec.alpha[:n], dtype=float)
    e2 = np.asarray(rec.beta[1:n], dtype=float)
    if np.any(e2 <= 0):
        raise DegenerateWeightError("recurrence has beta_k <= 0")
    if method == "auto":
        method = "bisect" if n <= LAPACK_THRESHOLD else "lapack"
    if method == "bisect":
        roots = _bisect_eigs(d, e2)
    elif method == "lapack":
        roots = linalg.eigh_tridiagonal(d, np.sqrt(e2), eigvals_only=True, lapack_driver="stebz")
    else:
        raise ValueError(f"unknown method {method!r}")
    return RootSet(roots)


def hermite_roots(n: int, scaled: bool = True) -> RootSet:
    """Roots of the physicists' Hermite ``H_n``, divided by ``sqrt(2n)`` if ``scaled``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rs = roots_via_jacobi(hermite_recurrence(n), n)
    return RootSet(rs.roots / math.sqrt(2 * n)) if scaled else rs


# --- derivatives -----------------------------------------------------------


def _merge(roots: np.ndarray, gap: float):
    """Collapse runs closer than ``gap`` into (location, multiplicity) pairs."""
    breaks = np.flatnonzero(np.diff(roots) >= gap) + 1
    groups = np.split(roots, breaks)
    loc = np.array([grp.mean() for grp in groups])
    mult = np.array([grp.size for grp in groups], dtype=float)
    return loc, mult


def _log_derivative(x, loc, mult) -> np.ndarray:
    out = np.empty_like(x)
    rows = max(1, _CHUNK // max(1, loc.size))
    for s in range(0, x.size, rows):
        xs = x[s : s + rows]
        out[s : s + rows] = (mult / (xs[:, None] - loc)).sum(axis=1)
    return out


def differentiate_rooted(rs: RootSet, tol: float = BISECT_TOL, maxiter: int = BISECT_MAXITER) -> RootSet:
    """Roots of ``p'`` from the roots of a real-rooted ``p``.

    Roots closer than ``1e-12`` are merged first; a cluster of multiplicity
    ``m`` keeps ``m - 1`` roots in place. Every gap between distinct roots
    contributes the unique zero of ``sum_k m_k / (x - y_k)``.
    """
    if rs.degree < 2:
        raise ValueError("differentiation needs degree >= 2")
    loc, mult = _merge(rs.roots, MERGE_GAP)
    kept = np.repeat(loc, (mult - 1).astype(int))
    if loc.size < 2:
        return RootSet(kept)
    lo = loc[:-1].copy()
    hi = loc[1:].copy()
    for _ in range(maxiter):
        if np.max(hi - lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        right_of_root = _log_derivative(mid, loc, mult) > 0
        lo = np.where(right_of_root, mid, lo)
        hi = np.where(right_of_root, hi, mid)
    else:
        bad = int(np.argmax(hi - lo))
        raise ConvergenceError(f"derivative root {bad} bracketed by [{lo[bad]!r}, {hi[bad]!r}]")
    return RootSet(np.concatenate([kept, 0.5 * (lo + hi)]))


def derivative_chain(rs: RootSet, m: int) -> Iterator[RootSet]:
    """Yield the root sets of ``p', p'', ..., p^(m)``."""
    for _ in range(m):
        rs = differentiate_rooted(rs)
        yield rs


def iterate_derivatives(rs: RootSet, m: int) -> RootSet:
    """Roots of the ``m``-th derivative."""
    if m < 0 or m >= rs.degree:
        raise ValueError(f"need 0 <= m < degree={rs.degree}")
    for rs in derivative_chain(rs, m):
        pass
    return rs


# --- distribution checks -----------------------------------------------------


def arcsine_cdf(x):
    return 0.5 + np.arcsin(np.clip(x, -1.0, 1.0)) / np.pi


def semicircle_cdf(x, radius: float = 1.0):
    s = np.clip(np.asarray(x, dtype=float) / radius, -1.0, 1.0)
    return 0.5 + (s * np.sqrt(1 - s * s) + np.arcsin(s)) / np.pi


def ks_statistic(sample, cdf: Callable) -> float:
    """``sup_x |F_emp(x) - F(x)|`` for a continuous ``F``, exact at the jumps."""
    x = np.sort(np.asarray(sample, dtype=float))
    m = x.size
    F = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - F), np.max(F - (i - 1) / m)))


def ks_to_arcsine(rs: RootSet) -> float:
    """Kolmogorov-Smirnov distance from the roots to the arcsine law on [-1, 1]."""
    if rs.degree == 0:
        raise ValueError("empty root set")
    if np.any(np.abs(rs.roots) > 1):
        raise DomainError("roots leave [-1, 1]; the arcsine law has no mass there")
    return ks_statistic(rs.roots, arcsine_cdf)


def ks_two_sample(a, b) -> float:
    """Two-sample Kolmogorov-Smirnov statistic."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    pts = np.concatenate([a, b])
    fa = np.searchsorted(a, pts, side="right") / a.size
    fb = np.searchsorted(b, pts, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))
