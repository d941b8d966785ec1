"""Pollaczek and Laguerre polynomials.

The Pollaczek family used throughout is the Meixner-Pollaczek family with
``lambda = 1/2`` and ``phi = pi/2``: generating function

    G(t, x) = (1 - i t)^(i x - 1/2) (1 + i t)^(-i x - 1/2),

three-term recurrence ``(m+1) P_{m+1}(x) = 2x P_m(x) - m P_{m-1}(x)`` and
weight ``w(x) = Gamma(1/2 + ix) Gamma(1/2 - ix) / pi = sech(pi x)``, with
respect to which the polynomials are orthonormal on the real line.

On the imaginary points ``x = -i(n + 1/2)`` the polynomials carry a pure
phase, ``P_m[-i(n+1/2)] = i^m q_m(n)`` with ``q_m(n)`` real (in fact an
integer).  All downstream arithmetic works with ``q``.
"""

from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from .errors import DegreeCapError, DomainError

#: Largest polynomial degree accepted by the evaluators.
DEGREE_CAP = 512


def _check_degree(m_max, cap):
    if m_max < 0:
        raise DomainError(f"degree must be non-negative, got {m_max}")
    if m_max > cap:
        raise DegreeCapError(
            f"degree {m_max} exceeds the configured cap {cap}", degree=m_max)


def _first_nonfinite(values):
    bad = ~np.isfinite(values)
    if bad.ndim > 1:
        bad = bad.reshape(bad.shape[0], -1).any(axis=1)
    return int(np.argmax(bad)) if bad.any() else None


@dataclass(frozen=True)
class AsymptoticValue:
    """Large-degree approximation of ``P_m[-i(n+1/2)]``.

    The approximation is ``phase * modulus`` with ``modulus = (2m)^n / n!``
    and ``phase = (-1)^m i^m``.
    """

    m: int
    n: int
    modulus: float

    @property
    def phase(self):
        return (-1j) ** (self.m % 4)

    @property
    def value(self):
        return self.phase * self.modulus

    @property
    def q(self):
        """The approximation in phase-reduced form (sign ``(-1)^m``)."""
        return (-1.0) ** self.m * self.modulus


def pollaczek_imag_axis(n, m_max, cap=DEGREE_CAP):
    """Phase-reduced Pollaczek values ``q_m`` on the point ``-i(n + 1/2)``.

    Parameters
    ----------
    n : int
        Imaginary-axis index, ``n >= 0``.
    m_max : int
        Highest degree returned.
    cap : int, optional
        Degree cap; defaults to :data:`DEGREE_CAP`.

    Returns
    -------
    numpy.ndarray
        ``q_0 .. q_{m_max}`` with ``P_m[-i(n+1/2)] = i^m q_m``.

    Raises
    ------
    DegreeCapError
        If ``m_max`` exceeds ``cap`` or some ``q_m`` overflows.
    """
    if n < 0:
        raise DomainError(f"index n must be non-negative, got {n}")
    return pollaczek_imag_axis_table(np.array([n]), m_max, cap=cap)[:, 0]


def pollaczek_imag_axis_table(ns, m_max, cap=DEGREE_CAP, scale=None):
    """Values ``q_m(n)`` for several indices at once.

    The recurrence ``(m+1) q_{m+1} = -(2n+1) q_m + m q_{m-1}`` is run for
    all ``n`` in parallel.  It is linear, so a per-column ``scale`` (e.g.
    ``1/n!``) can be applied to the starting values without changing the
    arithmetic; this keeps large ``n`` inside floating-point range.

    Returns an array of shape ``(m_max + 1, len(ns))``.
    """
    _check_degree(m_max, cap)
    ns = np.asarray(ns, dtype=float)
    q = np.empty((m_max + 1, ns.size))
    q[0] = 1.0 if scale is None else scale
    if m_max >= 1:
        q[1] = -(2.0 * ns + 1.0) * q[0]
    with np.errstate(over="ignore", invalid="ignore"):
        for m in range(1, m_max):
            q[m + 1] = (-(2.0 * ns + 1.0) * q[m] + m * q[m - 1]) / (m + 1)
    bad = _first_nonfinite(q)
    if bad is not None:
        raise DegreeCapError(
            f"Pollaczek value overflowed at degree m={bad}", degree=bad)
    return q


def pollaczek_oracle(n, m_max):
    """Exact integers ``S_m`` with ``P_m[-i(n+1/2)] = (-i)^m S_m``.

    At ``x = -i(n+1/2)`` the generating function reduces to
    ``(1 - it)^n (1 + it)^(-n-1)``; extracting the coefficient of ``t^m``
    gives ``S_m = sum_j C(n, j) C(n+m-j, m-j)``.  Pure integer arithmetic,
    independent of the floating-point recurrence.
    """
    if n < 0 or m_max < 0:
        raise DomainError("n and m_max must be non-negative")
    return [sum(comb(n, j) * comb(n + m - j, m - j) for j in range(min(n, m) + 1))
            for m in range(m_max + 1)]


def pollaczek_real(x, m_max, cap=DEGREE_CAP):
    """Pollaczek polynomials ``P_0(x) .. P_{m_max}(x)`` at real ``x``.

    ``x`` may be a scalar or an array; the result has shape
    ``(m_max + 1,) + numpy.shape(x)``.
    """
    _check_degree(m_max, cap)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("x must be finite")
    p = np.empty((m_max + 1,) + x.shape)
    p[0] = 1.0
    if m_max >= 1:
        p[1] = 2.0 * x
    with np.errstate(over="ignore", invalid="ignore"):
        for m in range(1, m_max):
            p[m + 1] = (2.0 * x * p[m] - m * p[m - 1]) / (m + 1)
    bad = _first_nonfinite(p)
    if bad is not None:
        raise DegreeCapError(
            f"Pollaczek polynomial overflowed at degree m={bad}", degree=bad)
    return p


def pollaczek_weight(x):
    """Orthogonality weight ``sech(pi x)``.

    Equal to ``Gamma(1/2 + ix) Gamma(1/2 - ix) / pi`` by the reflection
    formula.  Written in terms of ``exp(-pi |x|)`` so that it underflows
    quietly to zero instead of overflowing ``cosh``.
    """
    e = np.exp(-np.pi * np.abs(np.asarray(x, dtype=float)))
    return 2.0 * e / (1.0 + e * e)


def laguerre(u, m_max, cap=DEGREE_CAP):
    """Laguerre polynomials ``L_0(u) .. L_{m_max}(u)`` by forward recurrence.

    Returns an array of shape ``(m_max + 1,) + numpy.shape(u)``.
    """
    _check_degree(m_max, cap)
    u = np.asarray(u, dtype=float)
    if np.any(u < 0) or not np.all(np.isfinite(u)):
        raise DomainError("Laguerre argument must be finite and non-negative")
    L = np.empty((m_max + 1,) + u.shape)
    L[0] = 1.0
    if m_max >= 1:
        L[1] = 1.0 - u
    for m in range(1, m_max):
        L[m + 1] = ((2 * m + 1 - u) * L[m] - m * L[m - 1]) / (m + 1)
    return L


def pollaczek_asymptotic(m, n):
    """Leading large-``m`` behaviour of ``P_m[-i(n+1/2)]`` at fixed ``n``.

    ``P_m[-i(n+1/2)] ~ (-1)^m i^m (2m)^n / n!``.  Exact for ``n = 0``; for
    ``n = 1`` the relative error is ``1/(2m)``.
    """
    if m < 1:
        raise DomainError(f"asymptotic form needs m >= 1, got {m}")
    if n < 0:
        raise DomainError(f"index n must be non-negative, got {n}")
    try:
        # exact integer ratio, correctly rounded
        modulus = (2 * m) ** n / factorial(n)
    except OverflowError:
        raise DegreeCapError(
            f"(2m)^n/n! overflows for m={m}, n={n}", degree=m) from None
    return AsymptoticValue(m=m, n=n, modulus=modulus)
