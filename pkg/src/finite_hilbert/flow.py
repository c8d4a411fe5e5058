"""Finite-volume integrator for the root-flow transport equation

    u_t + (1/pi) d/dx arctan(Hu / u) = 0,

which describes how the root density of ``p_n^(tn)`` evolves with the
differentiation fraction ``t``.

The state is a vector of cell averages on a uniform partition of [-1, 1].
``Hu`` is spectral: the density is mapped from its support interval onto
[-1, 1], written as ``u(xi) = g(theta) / sin(theta)`` with ``xi = cos theta``,
and ``g`` is expanded in ``T_k`` so the exact coefficient map applies. The
equation is undefined off the support; there the flux saturates to
``sign(Hu) / 2``, which makes the total mass decay at unit rate.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .chebyshev import ChebSeries, analyze_T, cheb_nodes, synth, tail_mass
from .errors import InstabilityError, ResolutionError
from .roots import (
    RootSet,
    arcsine_cdf,
    hermite_roots,
    iterate_derivatives,
    ks_statistic,
    roots_via_jacobi,
    semicircle_cdf,
    weight_recurrence,
)
from .transform import fht_coeff_map

DEFAULT_M = 512
DEFAULT_DT = 1e-3
EPS_REL = 1e-8
SUPPORT_FACTOR = 10.0
SPECTRAL_N = 1024
RESAMPLE_TOL = 1e-4


@dataclass(frozen=True)
class DensityProfile:
    """Cell averages ``u`` on ``M`` uniform cells of [-1, 1] at flow time ``t``.

    ``grid`` holds the cell centres. ``clipped`` counts negative undershoots
    zeroed so far.
    """

    u: np.ndarray
    t: float = 0.0
    clipped: int = 0
    grid: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        u = np.array(self.u, dtype=float)
        if u.ndim != 1 or u.size < 4:
            raise ValueError("need a 1-D profile with at least 4 cells")
        if not np.all(np.isfinite(u)) or np.any(u < 0):
            raise ValueError("densities must be finite and nonnegative")
        if not 0 <= self.t < 1:
            raise ValueError("flow time must lie in [0, 1)")
        u.setflags(write=False)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "grid", cell_centers(u.size))

    @property
    def m(self) -> int:
        return self.u.size

    @property
    def dx(self) -> float:
        return 2.0 / self.u.size

    @property
    def edges(self) -> np.ndarray:
        return cell_edges(self.u.size)

    @property
    def mass(self) -> float:
        return float(self.u.sum() * self.dx)

    @property
    def eps(self) -> float:
        return EPS_REL * float(self.u.max())

    def support(self) -> tuple[int, int]:
        """Index range ``[i0, i1)`` of cells above the support threshold.

        A single interval is assumed; interior gaps are filled.
        """
        idx = np.flatnonzero(self.u > SUPPORT_FACTOR * self.eps)
        if idx.size == 0:
            raise InstabilityError("the density has no support left")
        return int(idx[0]), int(idx[-1]) + 1

    def cdf(self, x):
        """CDF normalised to unit mass.

        Cumulative cell masses are interpolated linearly in the angle
        ``arccos`` of the support-mapped coordinate, the variable in which
        the nonlocal term is resolved; this is exact for the arcsine profile
        and follows square-root edges without a boundary layer.
        """
        i0, i1 = self.support()
        e = self.edges
        lo, hi = e[i0], e[i1]
        cum = np.concatenate([[0.0], np.cumsum(self.u[i0:i1])])
        th_e = np.arccos(np.clip((2 * e[i0 : i1 + 1] - lo - hi) / (hi - lo), -1.0, 1.0))
        xi = np.clip((2 * np.asarray(x, dtype=float) - lo - hi) / (hi - lo), -1.0, 1.0)
        # theta decreases with x; interpolate on the reversed (increasing) table
        return np.interp(np.arccos(xi), th_e[::-1], (cum / cum[-1])[::-1])


def cell_edges(m: int) -> np.ndarray:
    return np.linspace(-1.0, 1.0, m + 1)


def cell_centers(m: int) -> np.ndarray:
    e = cell_edges(m)
    return 0.5 * (e[1:] + e[:-1])


def _averages_from_cdf(cdf, m: int) -> np.ndarray:
    return np.diff(cdf(cell_edges(m))) * (m / 2.0)


def arcsine_profile(m: int = DEFAULT_M) -> DensityProfile:
    """Exact cell averages of ``1 / (pi sqrt(1 - x^2))``."""
    return DensityProfile(_averages_from_cdf(arcsine_cdf, m))


def semicircle_profile(m: int = DEFAULT_M, radius: float = 1.0) -> DensityProfile:
    """Exact cell averages of ``(2 / (pi r^2)) sqrt(r^2 - x^2)``."""
    return DensityProfile(_averages_from_cdf(lambda x: semicircle_cdf(x, radius), m))


def profile_from_density(density, m: int = DEFAULT_M) -> DensityProfile:
    """Midpoint samples of a bounded density."""
    return DensityProfile(np.asarray(density(cell_centers(m)), dtype=float))


# --- the nonlocal term -------------------------------------------------------


@dataclass(frozen=True)
class _Spectral:
    lo: float
    hi: float
    a: ChebSeries  # T-series of u sqrt(1 - xi^2)
    hu: ChebSeries  # U-series of Hu in the mapped variable

    def xi(self, x):
        return (2 * np.asarray(x, dtype=float) - self.lo - self.hi) / (self.hi - self.lo)


def _spectral_model(d: DensityProfile, n: int = SPECTRAL_N, tol: float = RESAMPLE_TOL) -> _Spectral:
    i0, i1 = d.support()
    e = d.edges
    lo, hi = e[i0], e[i1]
    xi_e = np.clip((2 * e[i0 : i1 + 1] - lo - hi) / (hi - lo), -1.0, 1.0)
    th_e = np.arccos(xi_e)  # decreasing from pi to 0
    width = th_e[:-1] - th_e[1:]
    # cell mass in the mapped variable, spread over the cell's theta-width
    g = (2 * d.u[i0:i1] * d.dx / (hi - lo)) / width
    mid = 0.5 * (th_e[:-1] + th_e[1:])
    th, g = mid[::-1], g[::-1]
    # even reflections across theta = 0 and theta = pi
    knots = np.concatenate([-th[::-1], th, 2 * np.pi - th[::-1]])
    vals = np.concatenate([g[::-1], g, g[::-1]])
    spline = CubicSpline(knots, vals)
    a = analyze_T(spline(np.arccos(cheb_nodes(n))))
    mass = tail_mass(a)
    if mass > tol:
        raise ResolutionError(
            f"density resampling is oscillatory: tail mass {mass:.3e} exceeds {tol:.0e}", mass
        )
    return _Spectral(lo, hi, a, fht_coeff_map(a))


def _hilbert_at(d: DensityProfile, x, model: _Spectral | None = None) -> np.ndarray:
    model = _spectral_model(d) if model is None else model
    xi = model.xi(x)
    out = np.empty_like(xi)
    inside = np.abs(xi) < 1
    out[inside] = synth(model.hu, xi[inside])
    out[~inside] = _outside(model.a, xi[~inside])
    return out


def _outside(a: ChebSeries, xi):
    """Closed form off [-1, 1]: ``H[T_k / sqrt(1-y^2)] = s^(k+1) r^k / sqrt(xi^2 - 1)``.

    Here ``s = sign(xi)`` and ``r = |xi| - sqrt(xi^2 - 1) < 1``.
    """
    ax = np.abs(xi)
    root = np.sqrt(ax * ax - 1)
    r = ax - root
    s = np.sign(xi)
    k = np.arange(a.coeffs.size)
    terms = a.coeffs * np.power.outer(s * r, k)
    return s * terms.sum(axis=-1) / root


def hilbert_of_density(d: DensityProfile) -> np.ndarray:
    """``Hu`` at the cell centres.

    Inside the support the U-series is summed; off it the closed-form
    outer transform of each ``T_k`` term is used.
    """
    return _hilbert_at(d, d.grid)


def flux(d: DensityProfile, eps: float | None = None, model: _Spectral | None = None) -> np.ndarray:
    """Interface fluxes ``(1/pi) arctan(Hu / max(u, eps))``, ``M + 1`` values.

    Interfaces on or beyond the support boundary carry the saturated value
    ``sign(Hu) / 2``, i.e. ``-1/2`` on the left and ``+1/2`` on the right.
    """
    eps = d.eps if eps is None else float(eps)
    if not eps > 0:
        raise ValueError("eps must be positive")
    i0, i1 = d.support()
    m = d.m
    F = np.empty(m + 1)
    F[: i0 + 1] = -0.5
    F[i1:] = 0.5
    faces = np.arange(i0 + 1, i1)
    if faces.size:
        model = _spectral_model(d) if model is None else model
        hu = _hilbert_at(d, d.edges[faces], model)
        u_face = 0.5 * (d.u[faces - 1] + d.u[faces])
        F[faces] = np.arctan(hu / np.maximum(u_face, eps)) / np.pi
    return F


def step(d: DensityProfile, dt: float = DEFAULT_DT, eps: float | None = None) -> DensityProfile:
    """One conservative explicit update ``u -= dt/dx (F_{i+1/2} - F_{i-1/2})``."""
    if not 0 < dt <= d.dx:
        raise ValueError(f"dt={dt} violates 0 < dt <= dx={d.dx}")
    F = flux(d, eps)
    u = d.u - (dt / d.dx) * np.diff(F)
    if not np.all(np.isfinite(u)):
        raise InstabilityError(f"non-finite density at t={d.t + dt:.4f}")
    neg = u < 0
    u[neg] = 0.0
    out = DensityProfile(u, min(d.t + dt, np.nextafter(1.0, 0.0)), d.clipped + int(neg.sum()))
    loss = d.mass - out.mass
    if loss > 10 * dt:
        raise InstabilityError(f"mass dropped by {loss:.3e} in one step of dt={dt}")
    return out


def evolve(d: DensityProfile, t_end: float, dt: float = DEFAULT_DT) -> DensityProfile:
    """Step until ``t_end`` (rounded to a whole number of steps)."""
    for d in trajectory(d, t_end, dt):
        pass
    return d


def trajectory(d: DensityProfile, t_end: float, dt: float = DEFAULT_DT, every: int = 1) -> Iterator[DensityProfile]:
    """Yield the profile every ``every`` steps, ending at ``t_end``."""
    if not 0 < dt <= d.dx:
        raise ValueError(f"dt = {dt:g} must lie in (0, dx = {d.dx:g}]")
    steps = int(round((t_end - d.t) / dt))
    if steps < 0:
        raise ValueError("t_end precedes the current time")
    t0 = d.t
    for k in range(1, steps + 1):
        d = replace(step(d, dt), t=t0 + k * dt)
        if k % every == 0 or k == steps:
            yield d


def arcsine_drift(t_end: float = 0.1, m: int = DEFAULT_M, dt: float = DEFAULT_DT, window: float = 0.9) -> float:
    """Largest relative change of the arcsine profile on ``|x| <= window``."""
    d0 = arcsine_profile(m)
    mask = np.abs(d0.grid) <= window
    worst = 0.0
    for d in trajectory(d0, t_end, dt):
        worst = max(worst, float(np.max(np.abs(d.u[mask] / d0.u[mask] - 1))))
    return worst


# --- cross-validation against roots --------------------------------------------


INTERVAL_WEIGHTS = ("chebyshev", "legendre", "jacobi")


def empirical_roots(weight: str, t: float, n: int, a: float = 0.0, b: float = 0.0) -> RootSet:
    """Roots of the ``floor(t n)``-th derivative of the degree-``n`` polynomial.

    Hermite roots are scaled by ``1 / sqrt(2 n)`` so that ``H_n`` fills [-1, 1].
    """
    if weight == "hermite":
        rs = hermite_roots(n)
    else:
        rs = roots_via_jacobi(weight_recurrence(weight, n, a, b), n)
    return iterate_derivatives(rs, int(np.floor(t * n + 1e-9)))


def initial_profile(weight: str, m: int = DEFAULT_M) -> DensityProfile:
    if weight == "hermite":
        return semicircle_profile(m)
    if weight in INTERVAL_WEIGHTS:
        return arcsine_profile(m)
    raise ValueError(f"unknown weight {weight!r}")


def compare_to_empirical(
    weight: str,
    t: float,
    n: int,
    m: int = DEFAULT_M,
    dt: float = DEFAULT_DT,
    a: float = 0.0,
    b: float = 0.0,
) -> float:
    """KS distance between the evolved PDE profile and the derivative roots."""
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    d = evolve(initial_profile(weight, m), t, dt)
    rs = empirical_roots(weight, t, n, a, b)
    return ks_statistic(rs.roots, d.cdf)


def sweep(weight: str, ts: Sequence[float], n: int, workers: int = 1, **kw) -> list[float]:
    """``compare_to_empirical`` over several times; each run is independent."""
    if workers <= 1:
        return [compare_to_empirical(weight, t, n, **kw) for t in ts]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(lambda t: compare_to_empirical(weight, t, n, **kw), ts))


def chebyshev_exact_density(t: float, x):
    """Closed-form limit density for derivatives of ``T_n`` (unnormalised, mass ``1 - t``).

    ``sqrt(1 - t^2 - x^2) / (pi (1 - x^2))`` on ``|x| < sqrt(1 - t^2)``; the
    derivatives are Gegenbauer polynomials whose zero counting measure is
    known in closed form.
    """
    x = np.asarray(x, dtype=float)
    r2 = 1 - t * t - x * x
    return np.where(r2 > 0, np.sqrt(np.clip(r2, 0, None)) / (np.pi * (1 - x * x)), 0.0)


def hermite_exact_density(t: float, x):
    """Shrinking semicircle ``(2/pi) sqrt(1 - t - x^2)`` with mass ``1 - t``."""
    x = np.asarray(x, dtype=float)
    r2 = 1 - t - x * x
    return np.where(r2 > 0, (2 / np.pi) * np.sqrt(np.clip(r2, 0, None)), 0.0)
