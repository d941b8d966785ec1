import warnings
from math import e, log, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutplane.data import CATALOG, forward_taylor, get_problem
from cutplane.errors import DomainError, QuadratureError
from cutplane.reconstruct import (basis_phi_real, cauchy_eval, default_grid, jump_function,
                                  reconstruct, taylor_partial)
from cutplane.spectral import SpectralSeries, TaylorData
from cutplane.verify import basis_gram


def test_basis_examples():
    assert basis_phi_real(1.0, 0)[0] == pytest.approx(sqrt(2) / e, rel=1e-15)
    assert basis_phi_real(2.0, 1)[1] == pytest.approx(0.0, abs=1e-16)
    with pytest.raises(DomainError):
        basis_phi_real(0.0, 3)


def test_basis_shape():
    assert basis_phi_real(np.linspace(1, 5, 7), 4).shape == (5, 7)


def test_basis_orthonormal():
    G = basis_gram(m_max=20, nodes=200)
    assert np.max(np.abs(G - np.eye(21))) < 1e-8


def test_reconstruct_examples():
    xs = default_grid()
    rec = reconstruct(SpectralSeries(np.zeros(10)), 9, xs)
    assert not rec.values.any() and rec.k0_used == 9
    rec = reconstruct(SpectralSeries([1.0, 0.0]), 1, np.array([1.0, 2.0]))
    assert rec.values[0] == pytest.approx(sqrt(2) / e, rel=1e-15)


def test_reconstruct_is_real_and_signed():
    s = SpectralSeries([0.5, 0.25, -0.125])
    xs = np.linspace(1, 8, 9)
    rec = reconstruct(s, 2, xs)
    assert rec.values.dtype == np.float64
    # the sum of c_m phi_m, done in complex arithmetic
    B = basis_phi_real(xs, 2)
    ref = sum(s.c[m] * (1j) ** m * B[m] for m in range(3))
    np.testing.assert_allclose(ref.imag, 0.0, atol=1e-15)
    np.testing.assert_allclose(rec.values, ref.real, rtol=1e-14)


def test_reconstruct_validation():
    s = SpectralSeries(np.ones(4))
    with pytest.raises(DomainError):
        reconstruct(s, 4)
    with pytest.raises(DomainError):
        reconstruct(s, -1)
    with pytest.raises(DomainError):
        reconstruct(s, 2, np.array([0.5, 1.0]))
    with pytest.raises(DomainError):
        reconstruct(s, 2, np.array([1.0, 3.0, 2.0]))


def test_default_grid():
    xs = default_grid()
    assert xs.size == 512 and xs[0] == 1.0 and xs[-1] == 20.0


def test_cauchy_examples():
    F3 = get_problem("F3")
    assert cauchy_eval(lambda x: np.zeros_like(x), 0.3) == 0
    assert cauchy_eval(F3.F, 0.0, breakpoints=(10.0,)).real == pytest.approx(log(10), abs=1e-10)
    assert cauchy_eval(F3.F, 0.5, breakpoints=(10.0,)).real == pytest.approx(log(19), abs=1e-10)


def test_cauchy_complex_point():
    F3 = get_problem("F3")
    z = -0.3 + 0.4j
    ref = np.log((10 - z) / (1 - z))
    assert cauchy_eval(F3.F, z, breakpoints=(10.0,)) == pytest.approx(ref, abs=1e-10)


def test_cauchy_on_cut_rejected():
    with pytest.raises(DomainError):
        cauchy_eval(get_problem("F2").F, 3.0)


def test_cauchy_tolerance_not_met():
    def rough(x):
        return np.sin(1e4 * x) / np.sqrt(x - 1 + 1e-300)

    with pytest.raises(QuadratureError) as info:
        cauchy_eval(rough, 0.0, tol=1e-14, limit=5)
    assert info.value.error is not None and info.value.estimate is not None


@pytest.mark.parametrize("pid", sorted(CATALOG))
def test_cauchy_at_zero_is_first_moment(pid):
    p = CATALOG[pid]
    a0 = forward_taylor(p, 0).a[0]
    assert cauchy_eval(p.F, 0.0, breakpoints=p.breakpoints).real == pytest.approx(a0, abs=1e-9)


def test_taylor_partial_examples():
    t = TaylorData([1.0, 1.0])
    assert taylor_partial(t, 0.0) == 1.0
    assert taylor_partial(t, 0.5) == 1.5
    assert taylor_partial(t, 0.5, N=0) == 1.0
    f3 = forward_taylor(get_problem("F3"), 30)
    assert taylor_partial(f3, 0.5) == pytest.approx(log(19), abs=1e-6)


def test_taylor_partial_warns_outside_disc():
    with pytest.warns(RuntimeWarning):
        taylor_partial(TaylorData([1.0, 1.0]), 1.2)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        taylor_partial(TaylorData([1.0, 1.0]), np.array([0.5, -0.9j]))


@given(st.lists(st.floats(-2, 2), min_size=1, max_size=15),
       st.floats(-0.9, 0.9))
@settings(max_examples=50)
def test_taylor_partial_matches_polyval(a, z):
    ref = np.polyval(a[::-1], z)
    assert taylor_partial(TaylorData(a), z) == pytest.approx(ref, abs=1e-12)


def test_jump_function_matches_samples():
    s = SpectralSeries(np.linspace(1, -1, 8))
    xs = np.linspace(1, 20, 33)
    np.testing.assert_array_equal(jump_function(s, 5)(xs), reconstruct(s, 5, xs).values)
