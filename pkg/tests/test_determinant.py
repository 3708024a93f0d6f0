import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from tangherlini import determinant as det
from tangherlini.errors import DomainError
from tangherlini.params import SpacetimeParams, time_period

UNIT = SpacetimeParams(3, 1.0, 0.0, 2.0)
params = st.builds(SpacetimeParams, st.integers(3, 9), st.floats(0.1, 10.0), st.floats(-5.0, 5.0),
                   st.floats(0.1, 100.0))


def test_eigenvalue_examples():
    assert det.eigenvalue(UNIT, 2) == 1.0
    assert det.eigenvalue(UNIT, 0) == 0.0
    for i in range(1, 8):
        assert det.eigenvalue(UNIT, i) / det.eigenvalue(UNIT, 1) == pytest.approx(i * i, rel=1e-15)


@pytest.mark.parametrize("s", [-1.0, -0.5, 0.0, 0.3, 1.5, 2.0, 3.7, 6.0])
def test_riemann_zeta_against_mpmath(s):
    assert det.riemann_zeta(s) == pytest.approx(float(mpmath.zeta(s)), rel=1e-12, abs=1e-13)


def test_zeta_examples():
    c1 = SpacetimeParams(3, 0.5, 0.0, 2.0)
    assert det.spectral_scale(c1) == pytest.approx(1.0)
    assert det.zeta(c1, 1) == pytest.approx(math.pi ** 2 / 6, rel=1e-13)
    assert det.zeta(c1, 0) == pytest.approx(-0.5, rel=1e-13)
    c4 = SpacetimeParams(3, 0.25, 0.0, 2.0)
    assert det.zeta(c4, 1) == pytest.approx(math.pi ** 2 / 24, rel=1e-13)


def test_poles_and_domain():
    with pytest.raises(DomainError):
        det.zeta(UNIT, 0.5)
    with pytest.raises(DomainError):
        det.riemann_zeta(1)
    bad = SpacetimeParams(3, 1.0, 0.0, -2.0)
    for fn in (det.spectral_scale, det.zeta_prime_zero, det.det_laplacian):
        with pytest.raises(DomainError):
            fn(bad)
    with pytest.raises(DomainError):
        det.eigenvalue(bad, 1)


def test_zeta_prime_zero_examples():
    assert det.zeta_prime_zero(UNIT) == pytest.approx(-2.5310242, abs=1e-7)
    p = SpacetimeParams(5, 3.0, 0.0, 7.0)
    q = SpacetimeParams(5, 1.5, 0.0, 28.0)
    assert det.zeta_prime_zero(p) == pytest.approx(det.zeta_prime_zero(q), rel=1e-14)
    assert abs(det.zeta_prime_numeric(UNIT) - det.zeta_prime_zero(UNIT)) < 1e-6


def test_determinant_examples():
    assert det.det_laplacian(UNIT) == pytest.approx(4 * math.pi, rel=1e-14)
    assert det.det_laplacian(SpacetimeParams(3, 2.0, 0.0, 2.0)) == pytest.approx(8 * math.pi, rel=1e-14)
    assert det.det_laplacian(UNIT) == pytest.approx(time_period(UNIT), abs=1e-12)


@given(params)
def test_log_det_is_minus_zeta_prime(p):
    assert math.log(det.det_laplacian(p)) == pytest.approx(-det.zeta_prime_zero(p), rel=1e-13, abs=1e-13)


@given(params)
def test_det_over_period_is_sqrt_kappa(p):
    assert det.det_laplacian(p) / time_period(p) == pytest.approx(math.sqrt(p.kappa_h), rel=1e-12)


@given(params)
def test_finite_difference_derivative(p):
    assert abs(det.zeta_prime_numeric(p) - det.zeta_prime_zero(p)) < 1e-6


@pytest.mark.parametrize("s", [0.6, 0.8, 1.0, 1.5, 2.0, 3.0])
def test_continuation_against_literal_sum(s):
    p = SpacetimeParams(4, 0.7, 0.0, 3.0)
    c = det.spectral_scale(p)
    N = 10 ** 6
    gap = det.zeta(p, s) - det.zeta_partial_sum(p, s, N)
    bound = c ** -s / (2 * s - 1) * N ** (1 - 2 * s)
    # double-precision summation of 10^6 terms leaves ~1e-13 relative noise on top of the tail
    assert 0 <= gap + 1e-13 * abs(det.zeta(p, s))
    assert gap <= bound + 1e-13 * abs(det.zeta(p, s))
