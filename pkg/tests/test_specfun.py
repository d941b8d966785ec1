from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate
from scipy.special import eval_laguerre

from cutplane.errors import DegreeCapError, DomainError
from cutplane.specfun import (DEGREE_CAP, laguerre, pollaczek_asymptotic,
                              pollaczek_imag_axis, pollaczek_oracle, pollaczek_real,
                              pollaczek_weight)


# -- imaginary-axis values ---------------------------------------------------

def test_imag_axis_n0_alternates():
    np.testing.assert_array_equal(pollaczek_imag_axis(0, 4), [1, -1, 1, -1, 1])


def test_imag_axis_n1_odd_integers():
    np.testing.assert_array_equal(pollaczek_imag_axis(1, 3), [1, -3, 5, -7])


def test_imag_axis_first_step():
    assert pollaczek_imag_axis(2, 1)[1] == -5


def test_imag_axis_matches_oracle_exactly():
    for n in range(9):
        q = pollaczek_imag_axis(n, 12)
        S = pollaczek_oracle(n, 12)
        assert [int(round(v)) for v in q] == [(-1) ** m * s for m, s in enumerate(S)]


def test_imag_axis_cap_and_overflow():
    with pytest.raises(DegreeCapError) as info:
        pollaczek_imag_axis(0, DEGREE_CAP + 1)
    assert info.value.degree == DEGREE_CAP + 1
    # central Delannoy numbers grow like 5.83^n and leave double range near n = m = 400
    with pytest.raises(DegreeCapError) as info:
        pollaczek_imag_axis(500, 500)
    assert 0 < info.value.degree <= 500


def test_imag_axis_rejects_negative_index():
    with pytest.raises(DomainError):
        pollaczek_imag_axis(-1, 3)


# -- integer oracle ------------------------------------------------------------

def test_oracle_values():
    assert pollaczek_oracle(0, 6) == [1] * 7
    assert pollaczek_oracle(1, 3)[3] == 7
    assert pollaczek_oracle(1, 0) == [1]


def test_oracle_matches_generating_function():
    # coefficient of t^m in (1 - i t)^n (1 + i t)^(-n-1), times i^m
    n, m_max = 3, 8
    coeffs = []
    for m in range(m_max + 1):
        c = 0
        for j in range(min(n, m) + 1):
            k = m - j
            # binomial series of (1 + i t)^(-n-1): C(n+k, k) (-i)^k
            c += comb(n, j) * (-1j) ** j * comb(n + k, k) * (-1j) ** k
        coeffs.append(c)
    S = pollaczek_oracle(n, m_max)
    for m, (c, s) in enumerate(zip(coeffs, S)):
        assert c == pytest.approx((-1j) ** m * s)


@given(st.integers(0, 20), st.integers(0, 30))
def test_oracle_positive_and_symmetric(n, m):
    # S_m(n) are the Delannoy numbers, symmetric in (n, m) and positive
    assert pollaczek_oracle(n, m)[m] == pollaczek_oracle(m, n)[n] > 0


# -- real-axis polynomials -----------------------------------------------------

def test_real_low_degrees():
    P = pollaczek_real(0.0, 2)
    np.testing.assert_allclose(P, [1.0, 0.0, -0.5])
    x = np.array([-1.3, 0.2, 4.0])
    np.testing.assert_allclose(pollaczek_real(x, 1)[1], 2 * x)


def test_real_parity_examples():
    for x in (0.5, 1.0, 2.0):
        assert pollaczek_real(-x, 3)[3] == pytest.approx(-pollaczek_real(x, 3)[3], rel=1e-12)


@given(st.floats(-5, 5, allow_nan=False))
def test_real_parity(x):
    P = pollaczek_real(x, 20)
    Q = pollaczek_real(-x, 20)
    sign = (-1.0) ** np.arange(21)
    np.testing.assert_allclose(Q, sign * P, rtol=1e-12, atol=1e-12 * np.max(np.abs(P)))


def test_real_rejects_nonfinite():
    with pytest.raises(DomainError):
        pollaczek_real(np.inf, 3)


def test_real_overflow_reports_degree():
    with pytest.raises(DegreeCapError):
        pollaczek_real(1e300, 5)


# -- weight --------------------------------------------------------------------

def test_weight_values():
    assert pollaczek_weight(0.0) == 1.0
    x = np.linspace(0, 6, 13)
    np.testing.assert_allclose(pollaczek_weight(x), 1 / np.cosh(np.pi * x), rtol=1e-14)
    np.testing.assert_array_equal(pollaczek_weight(-x), pollaczek_weight(x))
    assert pollaczek_weight(1e6) == 0.0


def test_weight_integrates_to_one():
    val, err = integrate.quad(pollaczek_weight, -np.inf, np.inf, epsabs=1e-12)
    assert val == pytest.approx(1.0, abs=1e-10)


# -- Laguerre ------------------------------------------------------------------

def test_laguerre_examples():
    assert laguerre(7.3, 0)[0] == 1.0
    assert laguerre(3.0, 1)[1] == -2.0
    assert laguerre(2.0, 2)[2] == pytest.approx(-1.0, abs=1e-15)


@given(st.floats(0, 50, allow_nan=False))
@settings(max_examples=50)
def test_laguerre_against_scipy(u):
    L = laguerre(u, 30)
    ref = eval_laguerre(np.arange(31), u)
    np.testing.assert_allclose(L, ref, rtol=1e-9, atol=1e-9 * np.max(np.abs(ref)))


@given(st.floats(0, 30, allow_nan=False))
def test_laguerre_recurrence_residual(u):
    L = laguerre(u, 40)
    m = np.arange(1, 40)
    res = (m + 1) * L[2:] - (2 * m + 1 - u) * L[1:-1] + m * L[:-2]
    scale = (m + 1) * np.abs(L[2:]) + (2 * m + 1 + u) * np.abs(L[1:-1]) + m * np.abs(L[:-2])
    assert np.all(np.abs(res) <= 8 * np.finfo(float).eps * scale)


def test_laguerre_rejects_negative():
    with pytest.raises(DomainError):
        laguerre(-0.1, 3)


# -- large-degree form ---------------------------------------------------------

def test_asymptotic_n0_is_exact():
    for m in (1, 2, 7, 50):
        a = pollaczek_asymptotic(m, 0)
        assert a.modulus == 1.0
        assert a.value == pytest.approx((-1j) ** m)
        assert a.q == pollaczek_imag_axis(0, m)[m]


def test_asymptotic_n1_errors():
    a = pollaczek_asymptotic(100, 1)
    assert a.modulus == 200.0
    assert abs(pollaczek_imag_axis(1, 100)[100]) == 201.0
    a = pollaczek_asymptotic(1000, 1)
    exact = abs(pollaczek_imag_axis(1, 1000, cap=1000)[1000])
    assert exact / a.modulus - 1 == pytest.approx(1 / 2000, rel=1e-12)


def test_asymptotic_modulus_formula():
    assert pollaczek_asymptotic(10, 3).modulus == pytest.approx(20 ** 3 / factorial(3))


def test_asymptotic_overflow_and_domain():
    with pytest.raises(DegreeCapError):
        pollaczek_asymptotic(10 ** 6, 100)
    with pytest.raises(DomainError):
        pollaczek_asymptotic(0, 1)
