"""Built-in test functions on (-1, 1).

Each entry is a :class:`WeightedFunction`, which carries both ``f`` and the
de-singularized product ``h(x) = f(x) sqrt(1 - x^2)``. Functions with an
inverse-square-root blow-up at the endpoints are awkward to sample at
``x = +-1``; ``h`` stays bounded there, and the circle lift and the
quadrature oracle use it whenever it is available.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import chebyshev as npcheb


def _sqrt1m(x):
    return np.sqrt(np.clip(1.0 - np.square(x), 0.0, None))


@dataclass(frozen=True)
class WeightedFunction:
    f: Callable
    weighted: Callable
    name: str = ""
    derivative: Optional[Callable] = None

    def __call__(self, x):
        return self.f(np.asarray(x, dtype=float))

    @classmethod
    def from_weighted(cls, h, name="", derivative=None):
        def f(x):
            x = np.asarray(x, dtype=float)
            return h(x) / _sqrt1m(x)

        return cls(f, h, name, derivative)

    @classmethod
    def from_function(cls, f, name="", derivative=None):
        def h(x):
            x = np.asarray(x, dtype=float)
            return f(x) * _sqrt1m(x)

        return cls(f, h, name, derivative)


def _const(c):
    return lambda x: np.full(np.shape(x), float(c))


def null_family(c: float = 1.0) -> WeightedFunction:
    """``c / sqrt(1 - x^2)``, whose transform vanishes on (-1, 1)."""
    return WeightedFunction.from_weighted(_const(c), f"null-family(c={c:g})")


def arcsine() -> WeightedFunction:
    """Arcsine probability density ``1 / (pi sqrt(1 - x^2))``."""
    return WeightedFunction.from_weighted(_const(1.0 / np.pi), "arcsine")


def polynomial_over_weight(coeffs, name: str = "") -> WeightedFunction:
    """``p(x) / sqrt(1 - x^2)`` with ``p = sum coeffs[k] T_k``."""
    c = np.array(coeffs, dtype=float)
    return WeightedFunction.from_weighted(lambda x: npcheb.chebval(x, c), name or "poly-over-weight")


def chebyshev_over_weight(k: int) -> WeightedFunction:
    """``T_k(x) / sqrt(1 - x^2)``."""
    c = np.zeros(k + 1)
    c[k] = 1.0
    return polynomial_over_weight(c, f"tk(k={k})")


def indicator() -> WeightedFunction:
    """The indicator of (-1, 1); its transform is ``log((1+x)/(1-x)) / pi``."""
    return WeightedFunction(_const(1.0), _sqrt1m, "indicator", _const(0.0))


def semicircle() -> WeightedFunction:
    """Semicircle probability density ``(2/pi) sqrt(1 - x^2)``."""
    return WeightedFunction(
        lambda x: (2 / np.pi) * _sqrt1m(x),
        lambda x: (2 / np.pi) * (1.0 - np.square(x)),
        "semicircle",
    )


def bump(width: float = 1.0, center: float = 0.0) -> WeightedFunction:
    """Smooth bump ``exp(-1 / (1 - s^2))``, ``s = (x - center) / (width / 2)``.

    The support is the open interval of length ``width`` around ``center``;
    it must lie inside (-1, 1).
    """
    half = 0.5 * float(width)
    if half <= 0 or center - half < -1 or center + half > 1:
        raise ValueError("bump support must be a non-empty subinterval of [-1, 1]")

    def _parts(x):
        s = (np.asarray(x, dtype=float) - center) / half
        inside = np.abs(s) < 1
        q = np.where(inside, 1.0 - s * s, 1.0)
        val = np.where(inside, np.exp(-1.0 / q), 0.0)
        return s, q, val

    def f(x):
        return _parts(x)[2]

    def df(x):
        s, q, val = _parts(x)
        return val * (-2.0 * s / (q * q)) / half

    return WeightedFunction.from_function(f, f"bump(width={width:g})", df)


CATALOG = {
    "null-family": null_family,
    "arcsine": arcsine,
    "tk": chebyshev_over_weight,
    "indicator": indicator,
    "semicircle": semicircle,
    "bump": bump,
}
