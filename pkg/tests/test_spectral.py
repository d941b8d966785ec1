from math import factorial, sqrt

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cutplane.data import forward_taylor, get_problem
from cutplane.errors import DomainError, EnvelopeUndefinedError
from cutplane.specfun import pollaczek_oracle
from cutplane.spectral import (Envelope, SpectralSeries, TaylorData, compute_spectral,
                               envelope, partial_energy)

# sqrt(2) (E_1(0.1) - E_1(1)), evaluated with mpmath at 30 digits
F3_R0 = 2.2677480497826361


def test_taylor_data_validation():
    t = TaylorData([1.0, 2.0])
    assert t.N == 1
    with pytest.raises(ValueError):
        t.a[0] = 5.0
    with pytest.raises(DomainError):
        TaylorData([])
    with pytest.raises(DomainError):
        TaylorData([1.0, np.nan])
    with pytest.raises(DomainError):
        TaylorData([1.0], eps_bound=-1.0)
    assert TaylorData([1.0, 0.0, 0.0]).effective_N() == 0
    assert TaylorData([0.0]).effective_N() == -1


def test_unit_data_gives_alternating_coefficients():
    s = compute_spectral(TaylorData([1.0] + [0.0] * 9), m_max=40)
    np.testing.assert_allclose(s.r, sqrt(2) * (-1.0) ** np.arange(41), rtol=1e-15)
    np.testing.assert_allclose(np.abs(s.c) ** 2, 2.0)
    np.testing.assert_allclose(s.M, 2.0 * (np.arange(41) + 1))


def test_zero_data():
    s = compute_spectral(TaylorData(np.zeros(8)), m_max=20)
    assert not s.r.any() and not s.M.any()


def test_f3_first_coefficient():
    s = compute_spectral(forward_taylor(get_problem("F3"), 30), m_max=5)
    assert s.r[0] == pytest.approx(F3_R0, rel=1e-5)


def test_exact_coefficients_small_case():
    # r_m = sqrt(2) sum_n (-1)^n a_n q_m(n) / n!  with q_m(n) = (-1)^m S_m(n)
    a = [0.3, -1.1, 0.7, 2.0]
    s = compute_spectral(TaylorData(a), m_max=6)
    S = [pollaczek_oracle(n, 6) for n in range(4)]
    for m in range(7):
        ref = sqrt(2) * sum((-1) ** (n + m) * a[n] * S[n][m] / factorial(n) for n in range(4))
        assert s.r[m] == pytest.approx(ref, rel=1e-13)


def test_partial_energy_examples():
    assert partial_energy([3.0])[0] == 9.0
    s = SpectralSeries(r=[1.0, -2.0, 0.5])
    np.testing.assert_array_equal(partial_energy(s), [1.0, 5.0, 5.25])
    np.testing.assert_array_equal(s.M, [1.0, 5.0, 5.25])
    assert s.m_max == 2
    np.testing.assert_allclose(s.c, [1.0, -2j, -0.5])


@given(arrays(float, st.integers(1, 12), elements=st.floats(-10, 10)))
def test_energy_monotone_and_dominates(a):
    s = compute_spectral(TaylorData(a), m_max=60)
    assert np.all(np.isfinite(s.r))
    assert np.all(np.diff(s.M) >= 0)
    assert np.all(s.M >= s.r ** 2)


@given(arrays(float, st.integers(1, 10), elements=st.floats(-5, 5)),
       st.floats(-3, 3), st.floats(-3, 3))
def test_linear_in_data(a, alpha, beta):
    b = np.roll(a, 1)
    sa = compute_spectral(TaylorData(a), 30).r
    sb = compute_spectral(TaylorData(b), 30).r
    sab = compute_spectral(TaylorData(alpha * a + beta * b), 30).r
    scale = np.abs(alpha * sa).max() + np.abs(beta * sb).max() + 1.0
    np.testing.assert_allclose(sab, alpha * sa + beta * sb, atol=1e-12 * scale)


def test_bit_reproducible():
    t = forward_taylor(get_problem("F2"), 30)
    assert compute_spectral(t).r.tobytes() == compute_spectral(t).r.tobytes()


def test_envelope_examples():
    E = envelope(TaylorData([1.0]))
    np.testing.assert_array_equal(E(np.arange(5)), 2.0)
    E = envelope(TaylorData([0.4, 1.0]))
    k = np.arange(1, 20)
    np.testing.assert_allclose(E(k), 8.0 * k ** 2, rtol=1e-13)
    t = forward_taylor(get_problem("F2"), 30)
    E = envelope(t)
    assert E(20.0) / E(10.0) == pytest.approx(2.0 ** 60, rel=1e-10)


def test_envelope_formula():
    a_N = -0.37
    E = Envelope(N=4, a_N=a_N)
    b = sqrt(2) * a_N / factorial(4)
    assert E(7) == pytest.approx((b / factorial(4)) ** 2 * 14 ** 8, rel=1e-12)


def test_envelope_trailing_zero():
    t = TaylorData([1.0, 2.0, 0.0])
    with pytest.raises(EnvelopeUndefinedError, match="trailing zeros"):
        envelope(t)
    assert envelope(t, trim=True).N == 1
    with pytest.raises(EnvelopeUndefinedError):
        envelope(TaylorData([0.0, 0.0]), trim=True)


def test_envelope_matches_tail_of_truncated_data():
    # noiseless F2 truncated at N = 5: |c_k|^2 / E(k) -> 1 with an O(1/k) defect
    t = forward_taylor(get_problem("F2"), 5)
    s = compute_spectral(t, m_max=400)
    k = np.array([50, 100, 200, 400])
    defect = np.abs(s.r[k] ** 2 / envelope(t)(k) - 1)
    assert np.all(np.diff(defect) < 0)
    assert defect[-1] / defect[-2] == pytest.approx(0.5, abs=0.05)
