import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tangherlini.errors import UnclassifiableError
from tangherlini.params import (CaseTag, ModeParams, SpacetimeParams, classify_case, horizon_residual, hypersphere,
                                metric_coefficient, params_from_mapping, parse_config, time_period)

ns = st.integers(min_value=3, max_value=9)
pos = st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=50)
reals = st.fractions(min_value=-10, max_value=10, max_denominator=50)


@pytest.mark.parametrize("n,R_h,r,expected", [(3, 2, 1, 0), (3, 2, 2, Fraction(1, 2)), (4, 6, 2, Fraction(3, 4))])
def test_metric_coefficient_examples(n, R_h, r, expected):
    p = SpacetimeParams(n, Fraction(1), Fraction(0), Fraction(R_h))
    assert metric_coefficient(p, Fraction(r)) == expected


@pytest.mark.parametrize("n,rho,R_h,expected", [(3, 1, 2, 0), (5, 2, 12, 0), (3, 1, 4, 1)])
def test_horizon_residual_examples(n, rho, R_h, expected):
    assert horizon_residual(SpacetimeParams(n, Fraction(rho), Fraction(0), Fraction(R_h))) == expected


@pytest.mark.parametrize("rho,expected", [(1, 4 * math.pi), (0.5, 2 * math.pi), (2, 8 * math.pi)])
def test_time_period(rho, expected):
    assert time_period(SpacetimeParams(3, rho, 0.0, 2.0)) == pytest.approx(expected, rel=1e-15)


def test_classify_examples():
    assert classify_case(SpacetimeParams(4, 1.0, 1.0, 6.0), ModeParams(0.3, 7.0, -2.0)) is CaseTag.CASE1
    assert classify_case(SpacetimeParams(5, 1.0, 0.0, 12.0), ModeParams(3.0, 0.0, 3.0)) is CaseTag.CASE2
    with pytest.raises(UnclassifiableError):
        classify_case(SpacetimeParams(5, 1.0, 0.0, 12.0), ModeParams(1.0, 0.0, 3.0))


def test_n3_case2_needs_nu_zero():
    assert classify_case(*hypersphere(3, 2)) is CaseTag.CASE2
    with pytest.raises(UnclassifiableError):
        classify_case(SpacetimeParams(3, 1.0, 0.0, 2.0), ModeParams(1.0, 0.0, 2.0))


def test_validation():
    with pytest.raises(ValueError):
        SpacetimeParams(2, 1.0)
    with pytest.raises(ValueError):
        SpacetimeParams(3, -1.0)
    with pytest.raises(ValueError):
        SpacetimeParams(3, float("nan"))
    with pytest.raises(ValueError):
        classify_case(*hypersphere(3, 1), tol=-1)


@given(ns, pos, reals)
def test_horizon_family(n, rho, R_g):
    p0 = SpacetimeParams(n, rho, R_g, Fraction(1))
    R_h = (n - 2) * (n - 1) * (1 + rho ** 2 * p0.kappa_g)
    assert horizon_residual(SpacetimeParams(n, rho, R_g, R_h)) == 0


@given(ns, pos, reals, reals)
def test_metric_continuity_at_horizon(n, rho, R_g, R_h):
    p = SpacetimeParams(n, float(rho), float(R_g), float(R_h))
    eps = 1e-9
    assert metric_coefficient(p, p.rho * (1 + eps)) == pytest.approx(float(horizon_residual(p)), abs=1e-6)


@settings(max_examples=200)
@given(ns, pos, reals, reals, reals, reals, reals)
def test_classify_total_and_deterministic(n, rho, R_g, R_h, lam, mu, nu):
    p, m = SpacetimeParams(n, rho, R_g, R_h), ModeParams(lam, mu, nu)
    outcomes = []
    for _ in range(2):
        try:
            outcomes.append(classify_case(p, m))
        except UnclassifiableError as exc:
            outcomes.append(exc.kind)
    assert outcomes[0] == outcomes[1]
    assert outcomes[0] in (CaseTag.CASE1, CaseTag.CASE2, "unclassifiable")


def test_parse_config():
    text = "# comment\nn = 4\nrho: 1.5\nR_h = 6  # trailing\nmu = 0.25\n"
    d = parse_config(text)
    assert d == {"n": 4, "rho": Fraction(3, 2), "R_h": Fraction(6), "mu": Fraction(1, 4)}
    p, m = params_from_mapping(d, exact=True)
    assert p.rho == Fraction(3, 2) and m.mu == Fraction(1, 4) and m.lam == 0
    with pytest.raises(ValueError):
        parse_config("colour = 3")
    with pytest.raises(ValueError):
        parse_config("n 3")


def test_hypersphere_data():
    p, m = hypersphere(5, 2)
    assert p.R_h == 12 and p.kappa_h == 1 and m.mu == 10 and m.lam == 0 and m.nu == 0
    assert m.as_dict()["lambda"] == 0
