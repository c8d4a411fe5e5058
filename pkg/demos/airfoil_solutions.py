"""Solving the airfoil equation H f = g, with the free null-space term.

Run: python demos/airfoil_solutions.py
"""

import numpy as np

from finite_hilbert.airfoil import airfoil_residual, airfoil_solve
from finite_hilbert.chebyshev import GridFunction, cheb_nodes

n = 129
x = cheb_nodes(n)
g = GridFunction(np.exp(x) * np.cos(3 * x))

print("  c        residual    f(0.5)")
for c in (0.0, 1.0, -2.0):
    sol = airfoil_solve(g, c)
    print(f"  {c:+.1f}    {airfoil_residual(sol, g):.1e}    {float(sol(0.5)):+.10f}")

sol = airfoil_solve(GridFunction(np.ones(n)))
probe = np.array([-0.5, 0.0, 0.5])
print("\ng = 1 is solved by -x / sqrt(1 - x^2):", np.round(sol(probe), 12), np.round(-probe / np.sqrt(1 - probe**2), 12))
