"""The airfoil equation ``H f = g`` on (-1, 1).

Expanding ``g = sum_j b_j U_j`` and inverting the coefficient map gives
``f(x) sqrt(1 - x^2) = c - sum_j b_j T_{j+1}(x)``. The constant ``c`` is
free: ``c / sqrt(1 - x^2)`` is invisible to ``H``, so every solution is a
particular one plus a multiple of the arcsine density.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebyshev import (
    TAIL_TOL,
    Basis,
    ChebSeries,
    GridFunction,
    Weight,
    analyze_U,
    node_sines,
    synth,
    synth_grid,
    tail_mass,
    weighted_norm_sq,
)
from .errors import ResolutionError
from .transform import FhtInput, fht_apply


@dataclass(frozen=True)
class AirfoilSolution:
    """A solution ``f = (sum a_k T_k) / sqrt(1 - x^2)``.

    ``particular`` holds ``a_k`` with ``a_0 = 0``; ``null_coefficient`` is
    the free ``a_0``.
    """

    particular: ChebSeries
    null_coefficient: float = 0.0

    @property
    def series(self) -> ChebSeries:
        """Full T-series of ``f sqrt(1 - x^2)``."""
        a = np.array(self.particular.coeffs)
        a[0] = self.null_coefficient
        return ChebSeries(a, Basis.FIRST)

    def weighted(self, x):
        """``f(x) sqrt(1 - x^2)``, bounded on [-1, 1]."""
        return synth(self.series, x)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.weighted(x) / np.sqrt(1.0 - x * x)

    def sample(self, n: int) -> GridFunction:
        """``f`` at the ``n`` Chebyshev-Gauss nodes."""
        return GridFunction(synth_grid(self.series, n).values / node_sines(n))


def airfoil_solve(g: GridFunction, c: float = 0.0, strict: bool = True, tol: float = TAIL_TOL) -> AirfoilSolution:
    """Solve ``H f = g`` with null-space coefficient ``c``.

    ``c = 0`` gives the solution of least ``sqrt(1-x^2)``-weighted norm.
    Raises :class:`ResolutionError` if the U-expansion of ``g`` has not
    converged on its grid (unless ``strict`` is off).
    """
    b = analyze_U(g)
    mass = tail_mass(b)
    if strict and mass > tol:
        raise ResolutionError(
            f"g is under-resolved on n={g.n}: U-tail mass {mass:.3e} exceeds {tol:.1e}",
            mass,
        )
    a = np.zeros(b.coeffs.size + 1)
    a[1:] = -b.coeffs
    return AirfoilSolution(ChebSeries(a, Basis.FIRST), float(c))


def airfoil_residual(sol: AirfoilSolution, g: GridFunction) -> float:
    """``sqrt(1-x^2)``-weighted L2 norm of ``H f - g`` on the grid of ``g``."""
    inp = FhtInput(sol.sample(g.n))
    hf = fht_apply(inp, strict=False)
    return float(np.sqrt(weighted_norm_sq(hf - g, Weight.SQRT)))
