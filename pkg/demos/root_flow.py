"""Repeated differentiation of a polynomial moves its roots; a nonlocal
transport equation predicts the limiting density.

Run: python demos/root_flow.py   (about 20 s)
"""

import numpy as np

from finite_hilbert.flow import (
    arcsine_profile,
    chebyshev_exact_density,
    compare_to_empirical,
    evolve,
    hermite_exact_density,
    semicircle_profile,
)

print("Arcsine start (Chebyshev roots):")
d = arcsine_profile()
for t in (0.1, 0.3, 0.5):
    d = evolve(d, t)
    inner = np.abs(d.grid) <= 0.9 * np.sqrt(1 - t * t)
    exact = chebyshev_exact_density(t, d.grid[inner])
    print(f"  t={t:.1f}  mass {d.mass:.4f}  max rel. gap to closed form {np.max(np.abs(d.u[inner] / exact - 1)):.4f}")

print("\nSemicircle start (scaled Hermite roots):")
d = evolve(semicircle_profile(), 0.5)
inner = np.abs(d.grid) <= 0.6
print(f"  t=0.5  mass {d.mass:.4f}  max abs gap to shrunken semicircle {np.max(np.abs(d.u - hermite_exact_density(0.5, d.grid))[inner]):.4f}")

print("\nKS distance between the PDE and the roots of p_n^(tn):")
for weight, n in (("chebyshev", 400), ("legendre", 200), ("hermite", 200)):
    print(f"  {weight:9s} n={n}  t=0.5  KS {compare_to_empirical(weight, 0.5, n):.4f}")
