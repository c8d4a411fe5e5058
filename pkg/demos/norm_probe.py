"""How small can Hf be on (-1, 1) relative to its size outside?

Narrowing bumps raise ||f'|| / ||f||; the log of the inner/outer ratio is
fit against that quantity.

Run: python demos/norm_probe.py
"""

import numpy as np

from finite_hilbert.transform import probe_sweep, superlinear_exponent

widths = [1.0, 0.5, 0.25, 0.125]
reps = probe_sweep(widths)
print("  width   ||f'||/||f||   inner        outer        log(inner/outer)")
for w, r in zip(widths, reps):
    print(f"  {w:<6g}  {r.ratio:12.4f}   {r.inner_norm:.4e}   {r.outer_norm:.4e}   {r.log_ratio:+.4f}")
ratios = [r.ratio for r in reps]
logs = [r.log_ratio for r in reps]
print(f"\naffine slope {np.polyfit(ratios, logs, 1)[0]:.4f}, super-linear exponent {superlinear_exponent(ratios, logs):.3f}")
