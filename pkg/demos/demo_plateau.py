"""
Partial energies and the plateau
================================

With exact Taylor data the partial energies ``M_k`` of the spectral
coefficients climb to the squared norm of the jump function and stay there
for a while.  Because only ``N + 1`` coefficients are available the
expansion eventually diverges like ``(2k)^(2N)``.  The truncation index is
the end of the last flat stretch before that growth sets in.
"""

import numpy as np

from cutplane import compute_spectral, detect_k0, envelope, forward_taylor, get_problem

p = get_problem("F2")
t = forward_taylor(p, 30)
s = compute_spectral(t, m_max=150)
E = envelope(t)

# %%
# A coarse look at the curve, next to the envelope.

for k in (0, 10, 20, 40, 60, 80, 90, 100, 120, 150):
    print(f"k={k:3d}  M_k={s.M[k]:12.6g}  E(k)={float(E(k)):10.3g}")

# %%
# The detector reports all flat runs below the onset of the asymptotic
# regime, and picks the last one.

rep = detect_k0(s.M, E)
print(rep.to_text())
print("squared norm 24/e =", 24 / np.e)
