"""
Checking a reconstruction through its Cauchy transform
=======================================================

A reconstructed jump function defines an analytic function through its
Cauchy transform.  Inside the unit disc that function should agree with the
Taylor data it was built from.  Here the jump function is the indicator of
``[1, 10]``.  Its reconstruction is visibly rough near the discontinuity,
and the transform misses the truncated Taylor sum by one or two percent.
"""

import numpy as np

from cutplane import cauchy_eval, get_problem
from cutplane.pipeline import cauchy_comparison, run_pipeline

p = get_problem("F3")

# %%
# For the exact indicator the transform is ``log((10 - z) / (1 - z))``.

for z in (0.0, 0.5, -0.3 + 0.4j):
    print(z, cauchy_eval(p.F, z, breakpoints=p.breakpoints), np.log((10 - z) / (1 - z)))

# %%
# Now the reconstruction.

res = run_pipeline(p)
zs, f_taylor, f_rec = cauchy_comparison(res, zs=np.linspace(-0.5, 0.5, 11))
for z, a, b in zip(zs, f_taylor, f_rec):
    print(f"z={z:+.1f}  Taylor={a:.6f}  Cauchy(F_rec)={b:.6f}")
