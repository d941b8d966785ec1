"""Finite noisy spectral coefficients and their partial energies.

Given Taylor data ``a_0 .. a_N`` the spectral coefficients are

    c_m = sqrt(2) * sum_n (-1)^n a_n P_m[-i(n+1/2)] / n!

With ``P_m[-i(n+1/2)] = i^m q_m(n)`` this is ``c_m = i^m r_m`` where

    r_m = sqrt(2) * sum_n (-1)^n a_n q_m(n) / n!

is real.  Only ``r`` is stored; ``|c_m| = |r_m|`` so every energy sum is
unchanged.
"""

from dataclasses import dataclass, field
from math import factorial, fsum, lgamma, log, sqrt

import numpy as np

from .errors import DomainError, EnvelopeUndefinedError
from .specfun import DEGREE_CAP, pollaczek_imag_axis_table

#: Default number of spectral coefficients for experiments.
DEFAULT_M_MAX = 150


@dataclass(frozen=True)
class TaylorData:
    """Taylor coefficients ``a_0 .. a_N`` and their per-coefficient noise bound."""

    a: np.ndarray
    eps_bound: float = 0.0

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        if a.ndim != 1 or a.size == 0:
            raise DomainError("Taylor data must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(a)):
            raise DomainError("Taylor data must be finite")
        if not self.eps_bound >= 0:
            raise DomainError(f"noise bound must be >= 0, got {self.eps_bound}")
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    @property
    def N(self):
        return self.a.size - 1

    def effective_N(self):
        """Index of the last nonzero coefficient (``-1`` if all vanish)."""
        nz = np.flatnonzero(self.a)
        return int(nz[-1]) if nz.size else -1


@dataclass(frozen=True)
class SpectralSeries:
    """Phase-reduced spectral coefficients ``r_m`` and partial energies ``M_k``."""

    r: np.ndarray
    M: np.ndarray = field(default=None)

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        r.setflags(write=False)
        object.__setattr__(self, "r", r)
        if self.M is None:
            object.__setattr__(self, "M", partial_energy(r))

    @property
    def m_max(self):
        return self.r.size - 1

    @property
    def c(self):
        """Complex coefficients ``c_m = i^m r_m``."""
        return (1j) ** (np.arange(self.r.size) % 4) * self.r


@dataclass(frozen=True)
class Envelope:
    """Asymptotic growth ``E(k) = (b_N / N!)^2 (2k)^(2N)`` of ``|c_k|^2``.

    ``b_N = sqrt(2) a_N / N!``.  For ``N = 0`` the envelope is the constant
    ``2 a_0^2``.
    """

    N: int
    a_N: float

    def __call__(self, k):
        k = np.asarray(k, dtype=float)
        if self.N == 0:
            return np.full(k.shape, 2.0 * self.a_N ** 2)
        log_scale = 2.0 * (log(sqrt(2.0) * abs(self.a_N)) - 2.0 * lgamma(self.N + 1.0))
        with np.errstate(divide="ignore"):
            logs = log_scale + 2.0 * self.N * np.log(2.0 * k)
        return np.exp(logs)


def compute_spectral(t, m_max=DEFAULT_M_MAX, cap=DEGREE_CAP):
    """Spectral coefficients ``r_0 .. r_{m_max}`` of Taylor data ``t``.

    The sum over ``n`` alternates in sign and spans many orders of
    magnitude, so each ``r_m`` is accumulated with :func:`math.fsum`.

    Parameters
    ----------
    t : TaylorData
    m_max : int, optional
        Highest spectral index.
    cap : int, optional
        Degree cap passed to the Pollaczek evaluator.

    Returns
    -------
    SpectralSeries
    """
    ns = np.arange(t.N + 1)
    inv_fact = np.array([1.0 / factorial(n) for n in ns])
    # q_m(n) / n!
    table = pollaczek_imag_axis_table(ns, m_max, cap=cap, scale=inv_fact)
    signed = np.where(ns % 2, -t.a, t.a)
    terms = table * signed
    r = np.array([sqrt(2.0) * fsum(row) for row in terms])
    return SpectralSeries(r=r)


def partial_energy(s):
    """Running energies ``M_k = sum_{m <= k} r_m^2``.

    Accepts a :class:`SpectralSeries` or a plain sequence of ``r_m``.
    """
    r = s.r if isinstance(s, SpectralSeries) else np.asarray(s, dtype=float)
    M = np.cumsum(r * r)
    M.setflags(write=False)
    return M


def envelope(t, trim=False):
    """Growth envelope of ``|c_k|^2`` for finite data ``t``.

    Parameters
    ----------
    t : TaylorData
    trim : bool, optional
        If true, trailing zero coefficients are dropped and the envelope is
        built from the last nonzero one.  Otherwise a zero ``a_N`` raises.

    Raises
    ------
    EnvelopeUndefinedError
        If the highest coefficient is zero (and ``trim`` is false), or if
        all coefficients vanish.
    """
    N = t.effective_N() if trim else t.N
    if N < 0 or t.a[N] == 0.0:
        raise EnvelopeUndefinedError(
            "highest Taylor coefficient is zero; drop trailing zeros so that "
            "N is the index of the last nonzero coefficient")
    return Envelope(N=N, a_N=float(t.a[N]))
