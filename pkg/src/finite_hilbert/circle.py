"""Lifting (-1, 1) to the circle and the conjugate function.

A function ``f`` on (-1, 1) lifts to ``g(theta) = f(cos theta) |sin theta|``
on ``[-pi, pi)``. The lift is even, and its mean square equals
``(1/pi) int f(x)^2 sqrt(1 - x^2) dx``. With ``x = cos psi`` the finite
Hilbert transform is a rescaled conjugate function:

    Hf(cos psi) = -(1 / (2 sin psi)) p.v. (1/pi) int g(theta) cot((psi - theta)/2) dtheta
                = -g~(psi) / sin(psi),

where ``g~`` is the conjugate of ``g`` (Fourier multiplier ``-i sgn(k)``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError

DEFAULT_M = 1024
ENDPOINT_GUARD = 0.05


@dataclass(frozen=True)
class CircleFunction:
    """Samples at ``theta_j = -pi + 2 pi j / m``, ``m`` a power of two."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        m = v.size
        if v.ndim != 1 or m < 2 or m & (m - 1):
            raise ValueError("circle grids must be 1-D with a power-of-two size")
        if not np.all(np.isfinite(v)):
            raise ValueError("circle samples must be finite")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def m(self) -> int:
        return self.values.size

    @property
    def theta(self) -> np.ndarray:
        return circle_grid(self.m)

    @property
    def mean(self) -> float:
        return float(self.values.mean())

    def norm_sq(self) -> float:
        """Mean square ``(1/2pi) int g^2``, exact for trigonometric polynomials."""
        return float(np.mean(self.values**2))


def circle_grid(m: int) -> np.ndarray:
    return -np.pi + 2 * np.pi * np.arange(m) / m


def lift(f: Callable, m: int = DEFAULT_M) -> CircleFunction:
    """Sample ``f(cos theta) |sin theta|`` on the ``m``-point circle grid.

    When ``f`` carries ``weighted`` (``f(x) sqrt(1-x^2)``) that product is
    sampled directly, so functions blowing up like ``(1-x^2)^(-1/2)`` lift
    without touching the singularity. Otherwise non-finite samples raise
    ``ValueError``.
    """
    theta = circle_grid(m)
    x = np.cos(theta)
    h = getattr(f, "weighted", None)
    if h is not None:
        g = np.asarray(h(x), dtype=float) * np.ones(m)
    else:
        s = np.abs(np.sin(theta))
        s[0] = 0.0
        s[m // 2] = 0.0
        with np.errstate(divide="ignore", invalid="ignore"):
            g = np.asarray(f(x), dtype=float) * s
    if not np.all(np.isfinite(g)):
        raise ValueError("lift produced non-finite samples; supply f.weighted for endpoint singularities")
    return CircleFunction(g)


def _multiplier(m: int) -> np.ndarray:
    k = np.arange(m // 2 + 1)
    mult = -1j * np.sign(k).astype(complex)
    mult[-1] = 0.0  # Nyquist mode has no conjugate on the grid
    return mult


def conjugate(g: CircleFunction) -> CircleFunction:
    """Conjugate function via the Fourier multiplier ``-i sgn(k)``.

    The mean and the Nyquist mode are annihilated; ``cos(k.)`` maps to
    ``sin(k.)`` and ``sin(k.)`` to ``-cos(k.)``.
    """
    G = np.fft.rfft(g.values)
    return CircleFunction(np.fft.irfft(G * _multiplier(g.m), n=g.m))


def conjugate_at(g: CircleFunction, psi) -> np.ndarray:
    """Conjugate of the trigonometric interpolant of ``g`` at arbitrary angles."""
    m = g.m
    G = np.fft.rfft(g.values)[1 : m // 2]
    k = np.arange(1, m // 2)
    psi_a = np.asarray(psi, dtype=float)
    # grid starts at -pi, so phases are measured from there
    phase = np.exp(1j * np.multiply.outer(psi_a + np.pi, k))
    out = (2.0 / m) * np.real(-1j * phase @ G)
    return float(out) if np.ndim(out) == 0 else out


def conjugate_quadrature(g: Callable, psi: float, m: int = 4096) -> float:
    """Cotangent-kernel oracle ``(1/2pi) p.v. int g(theta) cot((psi - theta)/2) dtheta``.

    The kernel integrates to zero, so ``g(psi)`` is subtracted and the smooth
    periodic remainder is summed on a midpoint grid that straddles ``psi``.
    """
    theta = psi + 2 * np.pi * (np.arange(m) + 0.5) / m
    integrand = (g(theta) - g(psi)) / np.tan(0.5 * (psi - theta))
    return float(integrand.mean())


def fht_via_circle(f: Callable, psi: float, m: int = DEFAULT_M, guard: float = ENDPOINT_GUARD) -> float:
    """``Hf(cos psi)`` from the conjugate function of the lift.

    Requires ``guard <= psi <= pi - guard``; the ``1 / sin(psi)`` factor
    amplifies discretization error towards the endpoints.
    """
    psi = float(psi)
    if not guard <= psi <= np.pi - guard:
        raise DomainError(
            f"psi={psi:.4g} is within {guard} of an endpoint; 1/sin(psi) = {1 / max(abs(np.sin(psi)), 1e-300):.3g}"
        )
    g = lift(f, m)
    return -conjugate_at(g, psi) / np.sin(psi)
