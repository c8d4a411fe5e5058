"""Chebyshev series on (-1, 1) sampled at interior Gauss nodes.

Node convention used everywhere in the package::

    x_j = cos((2j + 1) pi / (2n)),   j = 0, ..., n - 1

so the nodes are strictly decreasing in ``j`` (equivalently, ``theta_j``
increases). Endpoints are never sampled, which keeps integrands weighted by
``(1 - x^2)^(-1/2)`` finite.
"""

from __future__ import annotations

import enum
import functools
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import fft

from .errors import DomainError, UnderResolvedWarning

DEFAULT_N = 256
TAIL_FRACTION = 0.1
TAIL_TOL = 1e-8

# Slack for |x| <= 1 checks on values produced by cos() and friends.
_DOMAIN_SLACK = 4 * np.finfo(float).eps


class Basis(enum.Enum):
    FIRST = "T"
    SECOND = "U"


class Weight(enum.Enum):
    """Weight of the L2 norm: ``(1 - x^2)^(-1/2)`` or ``(1 - x^2)^(1/2)``."""

    INV_SQRT = "inv_sqrt"
    SQRT = "sqrt"


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ChebSeries:
    """Coefficients of ``sum c_k T_k`` (``Basis.FIRST``) or ``sum c_k U_k``."""

    coeffs: np.ndarray
    basis: Basis = Basis.FIRST

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coeffs must be a non-empty 1-D vector")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coeffs must be finite")
        object.__setattr__(self, "coeffs", _frozen(coeffs))
        object.__setattr__(self, "basis", Basis(self.basis))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __call__(self, x):
        return synth(self, x)

    def padded(self, size: int) -> "ChebSeries":
        """Zero-pad (or truncate) to ``size`` coefficients."""
        out = np.zeros(size)
        k = min(size, self.coeffs.size)
        out[:k] = self.coeffs[:k]
        return ChebSeries(out, self.basis)


@functools.lru_cache(maxsize=64)
def _nodes_cached(n: int) -> np.ndarray:
    theta = (2 * np.arange(n) + 1) * np.pi / (2 * n)
    x = np.cos(theta)
    # mirror the first half so the grid is exactly antisymmetric
    half = n // 2
    x[n - half :] = -x[:half][::-1]
    if n % 2:
        x[half] = 0.0
    return _frozen(x)


@functools.lru_cache(maxsize=64)
def _sines_cached(n: int) -> np.ndarray:
    theta = (2 * np.arange(n) + 1) * np.pi / (2 * n)
    s = np.sin(theta)
    half = n // 2
    s[n - half :] = s[:half][::-1]
    return _frozen(s)


def cheb_nodes(n: int) -> np.ndarray:
    """Chebyshev-Gauss nodes ``cos((2j+1) pi / (2n))``, decreasing in ``j``.

    The returned array is read-only and shared between callers.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    return _nodes_cached(n)


def node_sines(n: int) -> np.ndarray:
    """``sqrt(1 - x_j^2)`` at the nodes, computed as ``sin(theta_j)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _sines_cached(int(n))


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function at the ``n`` Chebyshev-Gauss nodes."""

    values: np.ndarray

    def __post_init__(self):
        values = np.atleast_1d(np.asarray(self.values, dtype=float))
        if values.ndim != 1 or values.size == 0:
            raise ValueError("values must be a non-empty 1-D vector")
        if not np.all(np.isfinite(values)):
            raise ValueError("grid values must be finite")
        object.__setattr__(self, "values", _frozen(values))

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def nodes(self) -> np.ndarray:
        return cheb_nodes(self.n)

    @classmethod
    def sample(cls, f: Callable, n: int = DEFAULT_N) -> "GridFunction":
        x = cheb_nodes(n)
        return cls(np.broadcast_to(np.asarray(f(x), dtype=float), x.shape))

    def __add__(self, other):
        return GridFunction(self.values + _values_of(other))

    def __sub__(self, other):
        return GridFunction(self.values - _values_of(other))

    def __mul__(self, scalar):
        return GridFunction(self.values * float(scalar))

    __rmul__ = __mul__


def _values_of(obj) -> np.ndarray:
    return obj.values if isinstance(obj, GridFunction) else np.asarray(obj, dtype=float)


def analyze_T(samples) -> ChebSeries:
    """First-kind coefficients of the interpolant through the grid samples.

    ``a_k = (2 - delta_k0) / n * sum_j v_j T_k(x_j)``, evaluated as a type-II
    DCT.
    """
    v = _values_of(samples)
    n = v.size
    a = fft.dct(v, type=2) / n
    a[0] *= 0.5
    return ChebSeries(a, Basis.FIRST)


def analyze_T_direct(samples) -> ChebSeries:
    """O(n^2) evaluation of the same sum as :func:`analyze_T`."""
    v = _values_of(samples)
    n = v.size
    theta = (2 * np.arange(n) + 1) * np.pi / (2 * n)
    k = np.arange(n)
    a = (2.0 / n) * np.cos(np.outer(k, theta)) @ v
    a[0] *= 0.5
    return ChebSeries(a, Basis.FIRST)


def analyze_U(samples) -> ChebSeries:
    """Second-kind coefficients of the grid samples.

    Uses ``int U_j U_k sqrt(1-x^2) dx = pi/2 delta_jk`` with Gauss-Chebyshev
    quadrature, i.e. a type-II DST of ``v_j sin(theta_j)``.
    """
    v = _values_of(samples)
    n = v.size
    b = fft.dst(v * node_sines(n), type=2) / n
    # sin(n theta_j) = +-1 on the grid, so the top mode has norm n, not n/2
    b[-1] *= 0.5
    return ChebSeries(b, Basis.SECOND)


def synth(series: ChebSeries, x):
    """Evaluate a Chebyshev series at points of [-1, 1].

    Clenshaw's recurrence ``b_k = c_k + 2x b_{k+1} - b_{k+2}`` is used for
    ``|x| <= 1/2``. Closer to the endpoints it loses digits, so there the
    Reinsch form carries ``d_k = b_k - s b_{k+1}`` (``s = sign x``) and only
    ever multiplies by the small quantity ``2(x - s)``. Raises
    :class:`DomainError` for ``|x| > 1``.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1 + _DOMAIN_SLACK) or not np.all(np.isfinite(xa)):
        raise DomainError("synthesis is only defined on [-1, 1]")
    first = series.basis is Basis.FIRST
    flat = np.atleast_1d(xa).ravel()
    out = np.empty_like(flat)
    mid = np.abs(flat) <= 0.5
    out[mid] = _clenshaw(series.coeffs, flat[mid], first)
    out[~mid] = _reinsch(series.coeffs, flat[~mid], first)
    if np.ndim(xa) == 0:
        return float(out[0])
    return out.reshape(xa.shape)


def _clenshaw(c, x, first):
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    two_x = 2.0 * x
    for ck in c[:0:-1]:
        b1, b2 = ck + two_x * b1 - b2, b1
    return c[0] + (x if first else two_x) * b1 - b2


def _reinsch(c, x, first):
    s = np.where(x >= 0, 1.0, -1.0)
    delta = 2.0 * (x - s)
    b1 = np.zeros_like(x)
    d = np.zeros_like(x)
    for ck in c[:0:-1]:
        d = ck + delta * b1 + s * d
        b1 = d + s * b1
    if first:
        return c[0] + 0.5 * delta * b1 + s * d
    return c[0] + (delta + s) * b1 + s * d


def synth_grid(series: ChebSeries, n: int) -> GridFunction:
    """Values of ``series`` at the ``n`` Chebyshev-Gauss nodes.

    Coefficients beyond index ``n - 1`` alias onto the grid and are folded in
    by direct evaluation.
    """
    c = series.coeffs
    if c.size > n:
        return GridFunction(synth(series, cheb_nodes(n)))
    buf = np.zeros(n)
    buf[: c.size] = c
    if series.basis is Basis.FIRST:
        buf[1:] *= 0.5
        return GridFunction(fft.dct(buf, type=3))
    buf[:-1] *= 0.5
    return GridFunction(fft.dst(buf, type=3) / node_sines(n))


def gauss_cheb_quad(samples) -> float:
    """``int f(x) (1 - x^2)^(-1/2) dx`` by the n-point Gauss-Chebyshev rule.

    Exact when ``f`` is a polynomial of degree < 2n.
    """
    v = _values_of(samples)
    return float(np.pi / v.size * np.sum(v))


def weighted_norm_sq(f, weight=Weight.SQRT) -> float:
    """``int f^2 (1 - x^2)^(+-1/2) dx`` from samples on the Gauss grid."""
    v = _values_of(f)
    weight = Weight(weight)
    if weight is Weight.INV_SQRT:
        return gauss_cheb_quad(v * v)
    s = node_sines(v.size)
    return gauss_cheb_quad((v * s) ** 2)


def tail_mass(series: ChebSeries, fraction: float = TAIL_FRACTION) -> float:
    """Share of ``sum |c_k|`` held by the last ``fraction`` of coefficients."""
    c = np.abs(series.coeffs)
    total = c.sum()
    if total == 0.0:
        return 0.0
    k = max(1, int(np.ceil(fraction * c.size)))
    return float(c[-k:].sum() / total)


def check_resolution(series: ChebSeries, tol: float = TAIL_TOL) -> float:
    """Return the tail mass, warning with :class:`UnderResolvedWarning` above ``tol``."""
    mass = tail_mass(series)
    if mass > tol:
        warnings.warn(
            f"Chebyshev tail holds {mass:.3e} of the coefficient mass "
            f"(threshold {tol:.1e}); increase the truncation",
            UnderResolvedWarning,
            stacklevel=2,
        )
    return mass
