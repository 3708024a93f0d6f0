import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from tangherlini import closed_forms as cf
from tangherlini import frobenius as fr
from tangherlini.errors import DomainError, PoleError
from tangherlini.params import hypersphere
from tangherlini.radial_ode import coefficients_x, residual, residual_r

GRID = np.linspace(0.05, 0.9, 50)


def test_polynomial_examples():
    assert cf.polynomial_solution(0) == [1]
    assert cf.polynomial_solution(1) == [1, Fraction(-1, 2)]
    assert cf.polynomial_solution(2) == [1, -1, Fraction(1, 6)]


def test_polynomial_l2_alternative_value_is_not_a_solution():
    """[1, -4/5, 2/15] (a hand-product miscount) leaves a non-zero exact residual."""
    p, m = hypersphere(3, 2)
    x = Fraction(1, 3)
    c = [1, Fraction(-4, 5), Fraction(2, 15)]
    f = sum(ci * x ** (i - 2) for i, ci in enumerate(c))
    fp = sum(ci * (i - 2) * x ** (i - 3) for i, ci in enumerate(c))
    fpp = sum(ci * (i - 2) * (i - 3) * x ** (i - 4) for i, ci in enumerate(c))
    assert residual(p, m, f, fp, fpp, x) != 0


@pytest.mark.parametrize("l", range(6))
def test_polynomial_exact_residual(l):
    p, m = hypersphere(3, l)
    for x in (Fraction(1, 20), Fraction(1, 2), Fraction(9, 10)):
        vals = [cf.polynomial_value(l, x, d) for d in (0, 1, 2)]
        assert residual(p, m, *vals, x) == 0


def test_gamma_series_examples():
    assert cf.gamma_series(cf.HypersphereSpec(4, 0), "plus", 20).a == tuple(Fraction(1, i + 1) for i in range(21))
    s = cf.gamma_series(cf.HypersphereSpec(3, 1), "plus", 20)
    assert list(s.a) == [Fraction(6 * (1 + i), (2 + i) * (3 + i)) for i in range(21)]
    s0 = cf.gamma_series(cf.HypersphereSpec(3, 0), "plus", 40)
    assert s0.e == 1 and s0.a[:5] == tuple(Fraction(1, i + 1) for i in range(5))
    assert float(fr.eval_series(s0, 0.4).value) == pytest.approx(-math.log(0.6), rel=1e-14)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("l", [0, 1, 2, 3])
@pytest.mark.parametrize("branch", ["minus", "plus"])
def test_gamma_ratio_matches_direct_gamma(n, l, branch):
    try:
        a = cf.gamma_ratio_coefficients(n, l, branch, 12)
    except PoleError:
        return
    for i, c in enumerate(a):
        if c == 0:
            continue
        try:
            direct = cf.gamma_coefficient_direct(n, l, branch, i)
        except (ValueError, ZeroDivisionError):
            continue
        assert direct == pytest.approx(float(c), rel=1e-10)


def test_pole_branch_raises():
    with pytest.raises(PoleError):
        cf.gamma_ratio_coefficients(4, 1, "minus", 10)


def test_log_solution_examples():
    assert cf.log_solution(0, 0.4) == pytest.approx(-math.log(0.6), rel=1e-15)
    p, m = hypersphere(3, 1, exact=False)
    assert abs(residual(p, m, *(cf.log_solution(1, 0.5, d) for d in (0, 1, 2)), 0.5)) < 1e-10
    for l in range(6):
        small = cf.log_solution(l, 1e-4)
        assert math.isfinite(small) and abs(small) < 1e-3
    with pytest.raises(DomainError):
        cf.log_solution(1, 1.0)


@pytest.mark.parametrize("l", range(4))
def test_log_solution_is_the_plus_gamma_series(l):
    """The proportionality constant between the two printings is exactly 1."""
    assert cf.log_solution_coefficients(l, 30) == cf.gamma_ratio_coefficients(3, l, "plus", 30)
    s = cf.gamma_series(cf.HypersphereSpec(3, l), "plus", 300)
    for x in (0.1, 0.5, 0.8):
        assert cf.log_solution(l, x) / float(fr.eval_series(s, x).value) == pytest.approx(1, rel=1e-9)


def _mp_log_solution(l, x, d):
    """High-precision reference for the logarithmic solution and its first two derivatives."""
    x = mpmath.mpf(x)
    K0 = mpmath.factorial(2 * l + 1) / mpmath.factorial(l) ** 2
    total = mpmath.mpf(0)
    for i in range(l + 1):
        Ci = mpmath.factorial(l + i) / (mpmath.factorial(i) ** 2 * mpmath.factorial(l - i))
        g = lambda t, i=i: t ** -i * (mpmath.log(1 - t) + sum(t ** j / j for j in range(1, l + i + 1)))
        total += (-1) ** i * Ci * mpmath.diff(g, x, d)
    return -((-1) ** l) * K0 * total


@pytest.mark.parametrize("l", range(6))
def test_log_solution_residual_high_precision(l):
    with mpmath.workdps(40):
        p, m = hypersphere(3, l)
        for x in GRID[::7]:
            xq = Fraction(x)
            c = coefficients_x(p, m, xq)
            f, fp, fpp = (_mp_log_solution(l, mpmath.mpf(xq.numerator) / xq.denominator, d) for d in (0, 1, 2))
            r = fpp - mpmath.mpf(c.Q.numerator) / c.Q.denominator * f - mpmath.mpf(c.P.numerator) / c.P.denominator * fp
            assert abs(r) < 1e-9
            for d, ref in enumerate((f, fp, fpp)):
                assert cf.log_solution(l, float(xq), d) == pytest.approx(float(ref), rel=1e-11)


@pytest.mark.parametrize("l", range(4))
def test_log_solution_residual_double(l):
    p, m = hypersphere(3, l, exact=False)
    for x in GRID:
        assert abs(residual(p, m, *(cf.log_solution(l, x, d) for d in (0, 1, 2)), x)) < 1e-9


def test_l1_closed_form_examples():
    assert cf.l1_closed_form(0.5) == pytest.approx(6 * (-2 + 3 * math.log(2)), rel=1e-15)
    assert cf.l1_closed_form(0.5) == pytest.approx(0.4766491, abs=1e-6)
    assert abs(cf.l1_closed_form(1e-4)) < 1e-7
    s = cf.gamma_series(cf.HypersphereSpec(3, 1), "plus", 200)
    assert abs(float(fr.eval_series(s, 0.9).value) - cf.l1_closed_form(0.9)) < 1e-6


def test_l1_chain_partial_sums():
    for x in np.linspace(0.05, 0.9, 18):
        assert abs(cf.l1_chain_partial_sum(x, 200) - cf.l1_closed_form(x)) < 1e-6


def test_stability_mode_examples():
    assert all(cf.stability_mode(0, t) == 1 for t in (1.0, 2.5, 40.0))
    assert cf.stability_mode(1, 2.0) == 1.5


@pytest.mark.parametrize("l", range(6))
def test_stability_mode_solves_radial_equation(l):
    p, m = hypersphere(3, l, exact=False)
    for r in np.linspace(1.1, 10, 50):
        assert abs(residual_r(p, m, *(cf.stability_mode(l, r, d) for d in (0, 1, 2)), r)) < 1e-9


@pytest.mark.parametrize("l", range(6))
def test_polynomial_and_log_are_independent(l):
    x = 0.5
    w = cf.polynomial_value(l, x) * cf.log_solution(l, x, 1) - cf.polynomial_value(l, x, 1) * cf.log_solution(l, x)
    assert abs(w) > 1e-3


@given(st.integers(0, 5), st.floats(1.0, 50.0))
def test_stability_is_polynomial_in_inverse(l, t):
    assert cf.stability_mode(l, t) == pytest.approx(cf.polynomial_value(l, 1 / t), rel=1e-12, abs=1e-12)
