"""Roots of classical orthogonal polynomials and their distance to the arcsine law.

Run: python demos/root_statistics.py
"""

from finite_hilbert.roots import (
    chebyshev_recurrence,
    hermite_roots,
    ks_statistic,
    ks_to_arcsine,
    legendre_recurrence,
    roots_via_jacobi,
    semicircle_cdf,
    weight_recurrence,
)

print("Chebyshev T_n: KS distance is exactly 1/(2n)")
for n in (10, 100, 1000):
    print(f"  n={n:5d}  KS {ks_to_arcsine(roots_via_jacobi(chebyshev_recurrence(n), n)):.6f}  1/(2n) {1 / (2 * n):.6f}")

print("\nLegendre and Jacobi(0.5, -0.3): KS shrinks with n")
for n in (25, 100, 400):
    leg = ks_to_arcsine(roots_via_jacobi(legendre_recurrence(n), n))
    jac = ks_to_arcsine(roots_via_jacobi(weight_recurrence("jacobi", n, 0.5, -0.3), n))
    print(f"  n={n:4d}  Legendre {leg:.5f}  Jacobi {jac:.5f}")

print("\nScaled Hermite roots approach the semicircle instead")
for n in (50, 200, 800):
    print(f"  n={n:4d}  KS to semicircle {ks_statistic(hermite_roots(n).roots, semicircle_cdf):.5f}")
