"""
Pollaczek values on the imaginary axis
======================================

The spectral coefficients are weighted sums of Pollaczek polynomials at the
points ``-i(n + 1/2)``.  There the polynomials are real up to a phase
``i^m``, and the phase-reduced values are integers.  This script compares the
floating-point recurrence with the exact integer formula and then looks at
the large-degree behaviour.
"""

from math import factorial

from cutplane.specfun import pollaczek_imag_axis, pollaczek_oracle

# %%
# Recurrence against the integer oracle
# -------------------------------------
# ``q_m = (-1)^m S_m`` with ``S_m = sum_j C(n, j) C(n+m-j, m-j)``.

for n in range(4):
    q = pollaczek_imag_axis(n, 8)
    S = pollaczek_oracle(n, 8)
    print(f"n={n}  q={[int(v) for v in q]}")
    assert all(int(v) == (-1) ** m * s for m, (v, s) in enumerate(zip(q, S)))

# %%
# Large degrees
# -------------
# At fixed ``n`` the modulus grows like ``(2m)^n / n!``.  For ``n = 1`` the
# exact value is ``2m + 1``, so the relative error is ``1/(2m)``.

for n in (1, 2, 3):
    q = pollaczek_imag_axis(n, 1000, cap=1000)
    for m in (50, 200, 1000):
        ratio = abs(q[m]) * factorial(n) / (2 * m) ** n
        print(f"n={n} m={m:4d}  |q_m| n!/(2m)^n = {ratio:.6f}")
