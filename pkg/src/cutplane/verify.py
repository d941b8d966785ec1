"""Self-checks of the special functions and the spectral machinery.

Each suite returns a :class:`Check` with the measured deviation and the
threshold it is held to.
"""

from dataclasses import dataclass
from math import factorial

import numpy as np
from scipy.special import roots_laguerre

from .data import forward_taylor, get_problem
from .reconstruct import basis_phi_real
from .specfun import pollaczek_imag_axis, pollaczek_oracle, pollaczek_real, pollaczek_weight
from .spectral import compute_spectral, envelope
from .truncation import detect_k0

ASYMPTOTIC_DEGREES = (50, 100, 200, 500, 1000)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    measured: float
    threshold: float
    detail: str = ""


def oracle_check(n_max=8, m_max=12):
    """Float recurrence against the exact integer closed form."""
    worst = 0
    for n in range(n_max + 1):
        q = pollaczek_imag_axis(n, m_max)
        S = pollaczek_oracle(n, m_max)
        diff = max(abs(int(round(qm)) - (-1) ** m * s) for m, (qm, s) in enumerate(zip(q, S)))
        worst = max(worst, diff)
    return Check("oracle", worst == 0, float(worst), 0.0,
                 f"n <= {n_max}, m <= {m_max}, integer comparison")


def asymptotic_table(ns=(0, 1, 2, 3), ms=ASYMPTOTIC_DEGREES, cap=None):
    """Rows ``(n, m, q_m, (2m)^n/n!, relative error)``."""
    cap = max(ms) if cap is None else cap
    rows = []
    for n in ns:
        q = pollaczek_imag_axis(n, max(ms), cap=cap)
        for m in ms:
            model = (2 * m) ** n / factorial(n)
            rows.append((n, m, float(q[m]), model, float(abs(abs(q[m]) / model - 1.0))))
    return rows


def asymptotic_check(ns=(0, 1, 2, 3), ms=ASYMPTOTIC_DEGREES, tol=0.02, cap=None):
    """Relative error of the large-degree form: decreasing in m, below ``tol`` at the end."""
    rows = asymptotic_table(ns, ms, cap=cap)
    ok = True
    worst_last = 0.0
    for n in ns:
        errs = [r[4] for r in rows if r[0] == n]
        if n > 0 and any(b >= a for a, b in zip(errs, errs[1:])):
            ok = False
        worst_last = max(worst_last, errs[-1])
    ok = bool(ok and worst_last <= tol)
    return Check("asymptotic", ok, worst_last, tol,
                 f"n in {tuple(ns)}, m in {tuple(ms)}")


def basis_gram(m_max=20, nodes=200):
    """Gram matrix of the real basis via ``u = 2/x`` and Gauss-Laguerre nodes.

    ``int_0^inf B_m B_k dx = int_0^inf B_m(2/u) B_k(2/u) (2/u^2) du``; the
    Gauss-Laguerre rule supplies ``exp(-u)``, so the integrand is multiplied
    by ``exp(u)``.  Nodes beyond ``u = 700`` carry weights below 1e-300 and
    are skipped.
    """
    u, w = roots_laguerre(nodes)
    keep = u < 700.0
    u, w = u[keep], w[keep]
    B = basis_phi_real(2.0 / u, m_max)
    scale = w * np.exp(u) * 2.0 / (u * u)
    return (B * scale) @ B.T


def basis_check(m_max=20, nodes=200, tol=1e-8):
    dev = float(np.max(np.abs(basis_gram(m_max, nodes) - np.eye(m_max + 1))))
    return Check("basis_orthonormality", bool(dev < tol), dev, tol,
                 f"m, k <= {m_max}, {nodes} Gauss-Laguerre nodes")


def pollaczek_gram(m_max=10, half_width=40.0, h=0.05):
    """Gram matrix of Pollaczek polynomials against ``sech(pi x)``.

    The integrand is analytic in the strip ``|Im x| < 1/2`` and decays
    exponentially, so the trapezoidal rule converges geometrically
    (error of order ``exp(-pi / h)``).
    """
    x = np.arange(-half_width, half_width + h / 2, h)
    P = pollaczek_real(x, m_max)
    return (P * (h * pollaczek_weight(x))) @ P.T


def pollaczek_check(m_max=10, tol=1e-8):
    dev = float(np.max(np.abs(pollaczek_gram(m_max) - np.eye(m_max + 1))))
    return Check("pollaczek_orthonormality", bool(dev < tol), dev, tol, f"m, k <= {m_max}")


def parseval_check(N=30, tol=0.01):
    """Plateau height of the noiseless F2 curve against ``24/e``."""
    p = get_problem("F2")
    t = forward_taylor(p, N)
    s = compute_spectral(t)
    rep = detect_k0(s.M, envelope(t, trim=True))
    rel = float(abs(rep.plateau_height / p.norm_sq - 1.0))
    return Check("parseval_F2", bool(rel <= tol), rel, tol,
                 f"k0 = {rep.k0}, height = {rep.plateau_height:.8g}, norm^2 = {p.norm_sq:.8g}")


def run_all(asymptotic_cap=None):
    return [oracle_check(), asymptotic_check(cap=asymptotic_cap), basis_check(),
            pollaczek_check(), parseval_check()]
