"""Basis functions, the truncated reconstruction and the Cauchy transform."""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import DomainError, QuadratureError
from .specfun import DEGREE_CAP, laguerre

DEFAULT_GRID = (1.0, 20.0, 512)


def default_grid(x_min=DEFAULT_GRID[0], x_max=DEFAULT_GRID[1], points=DEFAULT_GRID[2]):
    return np.linspace(x_min, x_max, points)


def basis_phi_real(x, m_max, cap=DEGREE_CAP):
    """Phase-stripped basis ``sqrt(2) L_m(2/x) exp(-1/x) / x``.

    The complex basis is ``phi_m(x) = i^m`` times these values.  They are
    orthonormal on ``(0, inf)``: with ``u = 2/x`` the Gram integral becomes
    ``int L_m L_k exp(-u) du``.

    Returns an array of shape ``(m_max + 1,) + numpy.shape(x)``.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("basis functions are defined for x > 0")
    return np.sqrt(2.0) * laguerre(2.0 / x, m_max, cap=cap) * (np.exp(-1.0 / x) / x)


@dataclass(frozen=True)
class JumpSamples:
    """Reconstructed jump function sampled on a grid."""

    xs: np.ndarray
    values: np.ndarray
    k0_used: int
    provenance: object = field(default=None, repr=False, compare=False)


def _check_k0(series, k0):
    if not 0 <= k0 <= series.m_max:
        raise DomainError(f"k0 = {k0} outside [0, {series.m_max}]")


def jump_function(series, k0):
    """Callable ``F(x) = sum_{m <= k0} (-1)^m r_m Btilde_m(x)``.

    The phases of ``c_m = i^m r_m`` and ``phi_m = i^m Btilde_m`` combine to
    ``(-1)^m``, so the result is real.
    """
    _check_k0(series, k0)
    w = np.where(np.arange(k0 + 1) % 2, -1.0, 1.0) * series.r[:k0 + 1]

    def F(x):
        x = np.asarray(x, dtype=float)
        return np.tensordot(w, basis_phi_real(x, k0), axes=1)

    return F


def reconstruct(series, k0, xs=None):
    """Regularized jump function truncated after ``k0`` terms.

    Parameters
    ----------
    series : SpectralSeries
    k0 : int
        Truncation index, at most ``series.m_max``.
    xs : array_like, optional
        Strictly increasing grid with ``xs[0] >= 1``.  Defaults to 512
        uniform points on ``[1, 20]``.

    Returns
    -------
    JumpSamples
    """
    xs = default_grid() if xs is None else np.asarray(xs, dtype=float)
    if xs.ndim != 1 or xs.size == 0 or xs[0] < 1 or np.any(np.diff(xs) <= 0):
        raise DomainError("grid must be strictly increasing and start at x >= 1")
    values = jump_function(series, k0)(xs)
    return JumpSamples(xs=xs, values=values, k0_used=k0, provenance=series)


def _quad_real(g, points, tol, limit):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(g, 0.0, 1.0, points=points or None,
                                  epsabs=tol, epsrel=0.0, limit=limit)
    if not err <= tol:
        raise QuadratureError(
            f"quadrature reached only {err:.3g} (requested {tol:.3g})",
            estimate=val, error=err)
    return val


def cauchy_eval(F, z, tol=1e-10, breakpoints=(), limit=200):
    """Cauchy transform ``f(z) = int_1^inf F(x) / (x - z) dx``.

    The substitution ``x = 1/u`` maps the half-line onto ``(0, 1]``:

        f(z) = int_0^1 F(1/u) / (u (1 - z u)) du

    which is a finite-interval integral for any ``F`` decaying at least
    like ``1/x``, so no tail cut-off is needed.

    Parameters
    ----------
    F : callable
        Real jump function on ``[1, inf)``.
    z : complex
        Evaluation point off the cut ``[1, inf)``.
    tol : float, optional
        Absolute tolerance, applied separately to real and imaginary parts.
    breakpoints : sequence of float, optional
        Points ``x > 1`` where ``F`` is not smooth.

    Raises
    ------
    DomainError
        If ``z`` lies on the cut.
    QuadratureError
        If the requested tolerance is not met.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real >= 1.0:
        raise DomainError(f"z = {z} lies on the cut [1, inf)")
    points = sorted(1.0 / b for b in breakpoints if b > 1.0)

    def G(u):
        return F(1.0 / u) / u

    re = _quad_real(lambda u: (G(u) / (1.0 - z * u)).real, points, tol, limit)
    if z.imag == 0.0:
        return complex(re, 0.0)
    im = _quad_real(lambda u: (G(u) / (1.0 - z * u)).imag, points, tol, limit)
    return complex(re, im)


def taylor_partial(t, z, N=None):
    """Truncated Taylor sum ``sum_{n <= N} a_n z^n`` (Horner's rule).

    ``N`` defaults to the full data length.  Works elementwise on arrays of
    ``z``.  Points with ``|z| >= 1`` lie outside the disc of convergence and
    trigger a warning.
    """
    a = t.a if N is None else t.a[:N + 1]
    z = np.asarray(z)
    if np.any(np.abs(z) >= 1):
        warnings.warn("|z| >= 1: the Taylor series does not converge there",
                      RuntimeWarning, stacklevel=2)
    out = np.zeros_like(z, dtype=np.result_type(z, float))
    for coef in a[::-1]:
        out = out * z + coef
    return out[()] if out.ndim == 0 else out
