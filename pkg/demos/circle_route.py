"""A second route to Hf: lift to the circle and take the conjugate function.

Run: python demos/circle_route.py
"""

import numpy as np

from finite_hilbert import catalog
from finite_hilbert.circle import conjugate, fht_via_circle, lift
from finite_hilbert.transform import FhtInput, fht_eval

wf = catalog.polynomial_over_weight([0.3, -1.0, 0.5, 0.25, -0.1])
g = lift(wf)
gt = conjugate(g)
print(f"lifted samples: {g.m}, mean {g.mean:.12f} (equals a_0 = 0.3)")
print(f"mean square of g {g.norm_sq():.12f}, of its conjugate {gt.norm_sq():.12f}, difference {g.norm_sq() - gt.norm_sq():.12f} = a_0^2")

print("\n  psi      direct Hf        circle route     gap")
for psi in np.linspace(np.pi / 6, 5 * np.pi / 6, 5):
    direct = fht_eval(FhtInput.from_callable(wf, 64), np.cos(psi))
    circ = fht_via_circle(wf, psi)
    print(f"  {psi:.4f}  {direct:+.12f}  {circ:+.12f}  {abs(direct - circ):.1e}")
