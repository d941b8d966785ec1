"""
Logarithmic stability
=====================

With noisy coefficients the plateau shrinks.  Choosing the truncation index
from the known squared norm, the index grows only linearly in
``log10(1/eps)``: every extra decade of accuracy buys a fixed number of
extra terms.
"""

from cutplane import get_problem
from cutplane.pipeline import find_knee, log_fit, noise_sweep, sweep_averages

eps_list = [10.0 ** -k for k in range(2, 11)]
rows = noise_sweep(get_problem("F2"), eps_list, realizations=30)
avg = sweep_averages(rows)

for a in avg:
    print(f"eps={a['eps']:.0e}  SNR={a['snr_db']:6.1f} dB  k0={a['k0_norm']:5.1f}  "
          f"MSE={a['mse_norm']:.3e}  no plateau in {a['no_plateau']}/{a['realizations']}")

# %%
# Fit and knee of the error curve.

a0, slope, r2 = log_fit([a["eps"] for a in avg], [a["k0_norm"] for a in avg])
print(f"k0 = {a0:.2f} + {slope:.2f} log10(1/eps), R^2 = {r2:.3f}")
i, gap = find_knee([a["snr_db"] for a in avg], [a["mse_norm"] for a in avg])
print(f"knee at {avg[i]['snr_db']:.0f} dB")
