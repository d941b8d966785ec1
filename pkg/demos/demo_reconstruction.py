"""
Reconstructing a smooth jump function
=====================================

The jump function ``F1(x) = (x-1)^2 / (x^4 + x^3 + x^2 + x + 1)`` decays
like ``1/x^2``.  We compute its first 31 Taylor coefficients by quadrature,
pick the truncation index automatically and compare the reconstruction with
the truth.  Pushing the truncation index too far shows how quickly the
divergence takes over.
"""

import numpy as np

from cutplane import get_problem, reconstruct, relative_l2_error
from cutplane.pipeline import run_pipeline

p = get_problem("F1")
res = run_pipeline(p, N=30)
print(f"automatic k0 = {res.k0}, plateaus = {res.report.plateaus}")

# %%
# Sample values on ``[1, 10]``.

xs = np.array([1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 10.0])
rec = reconstruct(res.series, res.k0, xs)
for x, f, g in zip(xs, p.F(xs), rec.values):
    print(f"x={x:5.2f}  F={f:.6f}  F_rec={g:.6f}")

# %%
# Error as a function of the truncation index.

for k in (40, res.k0, 80, 90, 100):
    err = relative_l2_error(reconstruct(res.series, k), p, (1.0, 10.0))
    print(f"k0={k:3d}  relative L2 error on [1, 10] = {err:.3e}")
