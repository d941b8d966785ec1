"""Test problems, forward Taylor coefficients, noise and error metrics."""

import csv
import warnings
from dataclasses import dataclass
from math import comb, expm1, fsum, log, log10
from typing import Callable, Optional

import mpmath
import numpy as np
from scipy import integrate

from .errors import DomainError, QuadratureError
from .spectral import TaylorData


@dataclass(frozen=True)
class TestProblem:
    """A jump function on ``[1, inf)`` together with what is known about it.

    Attributes
    ----------
    id : str
    F : callable
        Vectorized real function, finite on ``[1, inf)``.
    norm_sq : float or None
        ``int_1^inf F^2`` when known in closed form.
    exact_taylor : callable or None
        ``n -> a_n`` in closed form.
    breakpoints : tuple of float
        Points where ``F`` is not smooth (used to split quadratures).
    tail_rate : float or None
        Rate ``s`` of an ``exp(-s x)`` decay, used by the direct quadrature.
    """

    __test__ = False  # not a pytest class

    id: str
    F: Callable
    norm_sq: Optional[float] = None
    exact_taylor: Optional[Callable] = None
    breakpoints: tuple = ()
    tail_rate: Optional[float] = None
    description: str = ""


def _f1(x):
    # (x-1)^2 / (x^4+x^3+x^2+x+1) written in t = 1/x so large x cannot overflow
    t = 1.0 / np.asarray(x, dtype=float)
    return t * t * (1.0 - t) ** 2 / (1.0 + t * (1.0 + t * (1.0 + t * (1.0 + t))))


def _f2(x):
    x = np.asarray(x, dtype=float)
    return (x - 1.0) ** 2 * np.exp(-0.5 * x)


def _f3(x):
    x = np.asarray(x, dtype=float)
    return np.where((x >= 1.0) & (x <= 10.0), 1.0, 0.0)


def _f2_taylor(n, dps=40):
    # a_n = E_{n-1}(1/2) - 2 E_n(1/2) + E_{n+1}(1/2), E_p(s) = int_1^inf x^-p e^{-s x} dx
    with mpmath.workdps(dps):
        s = mpmath.mpf(1) / 2
        return float(mpmath.expint(n - 1, s) - 2 * mpmath.expint(n, s)
                     + mpmath.expint(n + 1, s))


def _f3_taylor(n):
    if n == 0:
        return log(10.0)
    return -expm1(-n * log(10.0)) / n


CATALOG = {
    "F1": TestProblem(
        id="F1", F=_f1,
        description="(x-1)^2 / (x^4 + x^3 + x^2 + x + 1)"),
    "F2": TestProblem(
        id="F2", F=_f2, norm_sq=24.0 / np.e, exact_taylor=_f2_taylor,
        tail_rate=0.5, description="(x-1)^2 exp(-x/2)"),
    "F3": TestProblem(
        id="F3", F=_f3, norm_sq=9.0, exact_taylor=_f3_taylor,
        breakpoints=(10.0,), description="1 on [1, 10], 0 elsewhere"),
}


def get_problem(name):
    try:
        return CATALOG[name]
    except KeyError:
        raise DomainError(
            f"unknown problem {name!r}; choose one of {sorted(CATALOG)}") from None


def load_custom(path, tail="zero"):
    """Tabulated jump function from a CSV with columns ``x, F``.

    Values are linearly interpolated between nodes.  Beyond the last node
    the declared ``tail`` is used: ``"zero"``, ``"power:p"`` for
    ``F(x_last) (x / x_last)^-p`` with ``p > 1/2``, or ``"exp:s"`` for
    ``F(x_last) exp(-s (x - x_last))``.
    """
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = [(float(r["x"]), float(r["F"])) for r in reader]
    if len(rows) < 2:
        raise DomainError("custom table needs at least two rows")
    xs, fs = map(np.array, zip(*sorted(rows)))
    if xs[0] > 1.0 or np.any(np.diff(xs) <= 0):
        raise DomainError("custom table must start at x <= 1 with distinct x values")
    kind, _, arg = tail.partition(":")
    x_last, f_last = xs[-1], fs[-1]
    if kind == "zero":
        def tail_fn(x):
            return np.zeros_like(x)
    elif kind == "power" and float(arg) > 0.5:
        p = float(arg)

        def tail_fn(x):
            return f_last * (x / x_last) ** -p
    elif kind == "exp" and float(arg) > 0:
        s = float(arg)

        def tail_fn(x):
            return f_last * np.exp(-s * (x - x_last))
    else:
        raise DomainError(f"unsupported tail declaration {tail!r}")

    def F(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= x_last, np.interp(x, xs, fs), tail_fn(np.maximum(x, x_last)))

    inner = tuple(float(x) for x in xs[1:-1] if x > 1.0) if xs.size <= 100 else ()
    return TestProblem(id="custom", F=F, breakpoints=inner + (float(x_last),),
                       tail_rate=float(arg) if kind == "exp" else None,
                       description=f"tabulated from {path}, tail {tail}")


def _quad(g, a, b, points, tol):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(g, a, b, points=points or None,
                                  epsabs=tol, epsrel=0.0, limit=400)
    if not err <= tol:
        raise QuadratureError(
            f"quadrature error {err:.3g} exceeds tolerance {tol:.3g}",
            estimate=val, error=err)
    return val


def taylor_coefficient(p, n, tol=1e-12, method="substitution"):
    """One moment ``a_n = int_1^inf x^(-n-1) F(x) dx`` by quadrature.

    ``method="substitution"`` integrates ``u^(n-1) F(1/u)`` over ``(0, 1]``
    (``x = 1/u``).  ``method="direct"`` integrates over ``[1, X]`` with
    ``X = 1 - ln(tol) / s`` for a problem with ``exp(-s x)`` decay, so the
    neglected tail is below ``tol``.
    """
    if method == "substitution":
        points = sorted(1.0 / b for b in p.breakpoints if b > 1.0)
        return _quad(lambda u: u ** (n - 1) * p.F(1.0 / u), 0.0, 1.0, points, tol)
    if method == "direct":
        if p.tail_rate is None:
            raise DomainError(f"problem {p.id} declares no exponential tail")
        x_far = 1.0 - log(tol) / p.tail_rate
        points = [b for b in p.breakpoints if 1.0 < b < x_far]
        return _quad(lambda x: x ** (-n - 1.0) * p.F(x), 1.0, x_far, points, tol)
    raise DomainError(f"unknown quadrature method {method!r}")


def forward_taylor(p, N, tol=1e-12, method="auto"):
    """Noiseless Taylor data ``a_0 .. a_N`` of problem ``p``.

    Closed forms are used when the problem provides them (``method="auto"``);
    otherwise, or when a quadrature method is requested explicitly, see
    :func:`taylor_coefficient`.
    """
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    if method == "auto":
        if p.exact_taylor is not None:
            return TaylorData(np.array([p.exact_taylor(n) for n in range(N + 1)]))
        method = "substitution"
    a = [taylor_coefficient(p, n, tol=tol, method=method) for n in range(N + 1)]
    return TaylorData(np.array(a))


def norm_squared(p, tol=1e-12):
    """``int_1^inf F(x)^2 dx``, from the closed form when available."""
    if p.norm_sq is not None:
        return p.norm_sq
    points = sorted(1.0 / b for b in p.breakpoints if b > 1.0)
    return _quad(lambda u: p.F(1.0 / u) ** 2 / (u * u), 0.0, 1.0, points, tol)


@dataclass(frozen=True)
class NoiseSpec:
    """Uniform white noise on ``[-eps, eps]`` from a seeded PCG64 stream."""

    eps: float
    seed: int = 0
    distribution: str = "uniform"

    def __post_init__(self):
        if not self.eps >= 0:
            raise DomainError(f"eps must be >= 0, got {self.eps}")
        if self.distribution != "uniform":
            raise DomainError(f"unsupported noise distribution {self.distribution!r}")


def realization_seed(base_seed, i):
    """Seed of realization ``i`` in a sweep: ``base_seed + i``."""
    return base_seed + i


def add_noise(t, spec):
    """Add i.i.d. uniform noise on ``[-eps, eps]`` to every coefficient."""
    if spec.eps == 0:
        return TaylorData(t.a.copy(), eps_bound=0.0)
    rng = np.random.default_rng(spec.seed)
    u = rng.uniform(-spec.eps, spec.eps, size=t.a.size)
    return TaylorData(t.a + u, eps_bound=spec.eps)


def _restrict(rec, interval):
    lo, hi = interval
    xs = np.asarray(rec.xs)
    span = hi - lo
    if xs[0] > lo + 1e-12 * span or xs[-1] < hi - 1e-12 * span:
        raise DomainError(
            f"reconstruction grid [{xs[0]}, {xs[-1]}] does not cover [{lo}, {hi}]")
    keep = (xs >= lo) & (xs <= hi)
    return xs[keep], np.asarray(rec.values)[keep]


def mse(rec, p, interval=(1.0, 20.0)):
    """Mean square error of the samples against ``p.F`` over ``interval``."""
    xs, vals = _restrict(rec, interval)
    return float(np.mean((vals - p.F(xs)) ** 2))


def relative_l2_error(rec, p, interval=(1.0, 20.0)):
    """``||F_rec - F|| / ||F||`` on ``interval`` (trapezoidal rule on the grid)."""
    xs, vals = _restrict(rec, interval)
    ft = p.F(xs)
    return float(np.sqrt(integrate.trapezoid((vals - ft) ** 2, xs) / integrate.trapezoid(ft ** 2, xs)))


def snr_db(t_clean, eps):
    """Mean coefficient power over noise variance ``eps^2 / 3``, in dB.

    ``eps = 0`` returns ``inf``.
    """
    if eps < 0:
        raise DomainError(f"eps must be >= 0, got {eps}")
    if eps == 0:
        return float("inf")
    power = float(np.mean(t_clean.a ** 2))
    return 10.0 * log10(power / (eps * eps / 3.0))


def forward_difference(f, k, n):
    """``Delta^k f_n = sum_m (-1)^m C(k, m) f_{n+k-m}``."""
    return fsum((-1) ** m * comb(k, m) * f[n + k - m] for m in range(k + 1))


def hausdorff_statistic(f, n, eps_exp=0.1):
    """Left-hand side of the Hausdorff moment condition at index ``n``.

    ``(n+1)^(1+e) sum_{i<=n} C(n,i)^(2+e) |Delta^i f_{n-i}|^(2+e)``.  A
    diagnostic only: boundedness in ``n`` suggests the condition holds.
    """
    f = np.asarray(f, dtype=float)
    if f.size < n + 1:
        raise DomainError(f"need at least {n + 1} values, got {f.size}")
    if not eps_exp > 0:
        raise DomainError("eps_exp must be positive")
    q = 2.0 + eps_exp
    terms = [comb(n, i) ** q * abs(forward_difference(f, i, n - i)) ** q
             for i in range(n + 1)]
    return (n + 1) ** (1.0 + eps_exp) * fsum(terms)
