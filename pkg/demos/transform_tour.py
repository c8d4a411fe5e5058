"""Finite Hilbert transform on (-1, 1) through its Chebyshev coefficient map.

Run: python demos/transform_tour.py
"""

import numpy as np

from finite_hilbert import catalog
from finite_hilbert.chebyshev import ChebSeries
from finite_hilbert.transform import (
    FhtInput,
    fht_eval,
    fht_quadrature_oracle,
    nullspace_residual,
    parseval_check,
)

x = np.array([-0.7, -0.2, 0.0, 0.4, 0.9])

print("T_k / sqrt(1 - x^2) maps to -U_{k-1}:")
for k in (1, 2, 3):
    wf = catalog.chebyshev_over_weight(k)
    spectral = fht_eval(FhtInput.from_callable(wf, 32), x)
    oracle = fht_quadrature_oracle(wf, x)
    print(f"  k={k}: spectral {np.round(spectral, 6)}  p.v. quadrature {np.round(oracle, 6)}")

print("\nThe kernel is one-dimensional, spanned by 1/sqrt(1 - x^2):")
for c in (1.0, 1e3, 1e-3):
    print(f"  c={c:g}: weighted norm of H(c/sqrt(1-x^2)) = {nullspace_residual(c):.2e}")

print("\nWeighted isometry on mean-zero data, and the a_0 correction otherwise:")
rng = np.random.default_rng(0)
a = rng.standard_normal(41)
for label, a0 in (("mean zero", 0.0), ("a_0 = 0.8", 0.8)):
    a[0] = a0
    r = parseval_check(FhtInput.from_series(ChebSeries(a), 128), strict=False)
    print(f"  {label}: lhs {r.lhs:.12f}  rhs {r.rhs:.12f}  pi*a0^2 {r.correction:.12f}  corrected gap {r.corrected_gap:.1e}")
