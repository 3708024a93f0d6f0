"""Explicit solutions on the round hypersphere (lambda = nu = R_g = 0).

All coefficient sequences are produced by telescoping ratios in exact
rationals; Gamma functions are only evaluated in
:func:`gamma_coefficient_direct`, which exists as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .errors import DomainError, PoleError
from .frobenius import FrobeniusSeries
from .params import CaseTag, hypersphere

N3 = 3


@dataclass(frozen=True)
class HypersphereSpec:
    n: int
    l: int

    def __post_init__(self):
        if self.n < 3 or self.l < 0:
            raise ValueError("need n >= 3 and l >= 0")

    @property
    def m(self):
        return self.n - 2

    @property
    def mu(self):
        return self.l * (self.l + self.n - 2)

    def params(self, rho=1, exact=True):
        return hypersphere(self.n, self.l, rho=rho, exact=exact)

    def exponent(self, branch):
        return -self.l if branch == "minus" else self.n - 2 + self.l


def gamma_ratio_coefficients(n, l, branch, N):
    """Coefficients a_0..a_N (a_0 = 1) of the Gamma-ratio series, exact.

    minus: a_{i+1}/a_i = (i - l/m)^2 / ((i - 2l/m)(i + 1))
    plus:  a_{i+1}/a_i = (i + 1 + l/m)^2 / ((i + 2 + 2l/m)(i + 1))

    A vanishing numerator terminates the series before any pole is reached;
    a pole with non-zero numerator raises PoleError (logarithmic branch).
    """
    m = n - 2
    t = Fraction(l, m)
    a = [Fraction(1)]
    for i in range(N):
        if branch == "minus":
            num, den = (i - t) ** 2, (i - 2 * t) * (i + 1)
        elif branch == "plus":
            num, den = (i + 1 + t) ** 2, (i + 2 + 2 * t) * (i + 1)
        else:
            raise ValueError(f"unknown branch {branch!r}")
        if a[-1] == 0:
            a.append(Fraction(0))
            continue
        if num == 0:
            a.append(Fraction(0))
            continue
        if den == 0:
            raise PoleError(
                f"Gamma argument hits a non-positive integer at i = {i + 1} (n={n}, l={l}, {branch})",
                location=i + 1,
            )
        a.append(a[-1] * num / den)
    return a


def gamma_coefficient_direct(n, l, branch, i):
    """Float evaluation of a single coefficient straight from the Gamma quotient."""
    t = l / (n - 2)
    if branch == "plus":
        return (math.gamma(2 + 2 * t) * math.gamma(i + 1 + t) ** 2
                / (math.gamma(i + 2 + 2 * t) * math.gamma(1 + t) ** 2 * math.factorial(i)))
    return (math.gamma(-2 * t) * math.gamma(i - t) ** 2
            / (math.gamma(i - 2 * t) * math.gamma(-t) ** 2 * math.factorial(i)))


def gamma_series(spec: HypersphereSpec, branch="plus", N=64, rho=1) -> FrobeniusSeries:
    a = gamma_ratio_coefficients(spec.n, spec.l, branch, N)
    p, modes = spec.params(rho=rho)
    terminated = len(a) >= 2 and a[-1] == 0 and a[-2] == 0
    return FrobeniusSeries(Fraction(spec.exponent(branch)), spec.m, tuple(a), CaseTag.CASE2, p, modes,
                           exact_tail=terminated)


def polynomial_solution(l):
    """Coefficients of x^-l * sum_{i<=l} c_i x^i for n = 3 (the terminating branch)."""
    coeffs = []
    prod = Fraction(1)
    for i in range(l + 1):
        if i:
            prod *= Fraction((1 - i + l) ** 2, -1 + i - 2 * l)
        coeffs.append(prod / math.factorial(i))
    return coeffs


def polynomial_series(l, rho=1) -> FrobeniusSeries:
    p, modes = hypersphere(N3, l, rho=rho)
    return FrobeniusSeries(Fraction(-l), 1, tuple(polynomial_solution(l)), CaseTag.CASE2, p, modes,
                           exact_tail=True)


def polynomial_value(l, x, derivative_order=0):
    """Value (or derivative) at x; exact when x is a Fraction."""
    conv = (lambda c: c) if isinstance(x, Fraction) else float
    total = 0
    for i, c in enumerate(polynomial_solution(l)):
        k = i - l
        fall = 1
        for j in range(derivative_order):
            fall *= k - j
        if fall:
            total += conv(c) * fall * x ** (k - derivative_order)
    return total


def stability_mode(l, t, derivative_order=0):
    """sum_i c_i t^(l-i) / i!, the static mode in t = r/rho; equals the n = 3 polynomial at x = 1/t."""
    total = 0.0
    for i, c in enumerate(polynomial_solution(l)):
        k = l - i
        fall = 1
        for j in range(derivative_order):
            fall *= k - j
        if fall:
            total += float(c) * fall * t ** (k - derivative_order)
    return total


def _check_unit_interval(x):
    if not 0 < x < 1:
        raise DomainError(f"x = {x} outside (0, 1)", location=x)


def _log_partial(K, x):
    """T_K(x) = log(1-x) + sum_{j<=K} x^j/j and its first two derivatives."""
    if x <= 0.5:
        # tail form avoids the cancellation between log(1-x) and the partial sum
        T, j, term = 0.0, K + 1, x ** (K + 1)
        while True:
            contrib = term / j
            T -= contrib
            if abs(contrib) <= 1e-18 * abs(T):
                break
            j += 1
            term *= x
    else:
        T = math.log1p(-x) + sum(x ** j / j for j in range(1, K + 1))
    T1 = -x ** K / (1 - x)
    T2 = -x ** (K - 1) * (K - (K - 1) * x) / (1 - x) ** 2
    return T, T1, T2


def _log_prefactors(l):
    K0 = Fraction(math.factorial(2 * l + 1), math.factorial(l) ** 2)
    C = [Fraction(math.factorial(l + i), math.factorial(i) ** 2 * math.factorial(l - i)) for i in range(l + 1)]
    return K0, C


SERIES_SWITCH = 0.9
_SERIES_TERMS = 420


@lru_cache(maxsize=None)
def _log_taylor(l):
    return tuple(float(c) for c in log_solution_coefficients(l, _SERIES_TERMS))


def log_solution(l, x, derivative_order=0):
    """-(-1)^l (2l+1)!/l!^2 sum_i (-1)^i (l+i)!/(i!^2 (l-i)!) x^-i (log(1-x) + sum_{j<=l+i} x^j/j).

    The alternating sum cancels badly for larger l, so for x <= SERIES_SWITCH
    the (all-positive) Taylor expansion is summed instead.
    """
    _check_unit_interval(x)
    if x <= SERIES_SWITCH:
        total = 0.0
        for k, c in enumerate(_log_taylor(l)):
            p = l + 1 + k
            fall = 1
            for j in range(derivative_order):
                fall *= p - j
            total += c * fall * x ** (p - derivative_order)
        return total
    K0, C = _log_prefactors(l)
    total = 0.0
    for i in range(l + 1):
        T, T1, T2 = _log_partial(l + i, x)
        if derivative_order == 0:
            g = x ** -i * T
        elif derivative_order == 1:
            g = -i * x ** (-i - 1) * T + x ** -i * T1
        else:
            g = i * (i + 1) * x ** (-i - 2) * T - 2 * i * x ** (-i - 1) * T1 + x ** -i * T2
        total += (-1) ** i * float(C[i]) * g
    return -((-1) ** l) * float(K0) * total


def log_solution_coefficients(l, N):
    """Exact Taylor coefficients of the logarithmic solution: value = sum_k c_k x^(l+1+k)."""
    K0, C = _log_prefactors(l)
    sign = (-1) ** l
    return [sign * K0 * sum((-1) ** i * C[i] / (l + 1 + k + i) for i in range(l + 1)) for k in range(N + 1)]


def log_solution_series(l, N=40, rho=1) -> FrobeniusSeries:
    p, modes = hypersphere(N3, l, rho=rho)
    return FrobeniusSeries(Fraction(l + 1), 1, tuple(log_solution_coefficients(l, N)), CaseTag.CASE2, p, modes)


def l1_closed_form(x):
    """6(-2 + (1 - 2/x) log(1-x)): the n = 3, l = 1 regular solution summed in closed form."""
    _check_unit_interval(x)
    return 6 * (-2 + (1 - 2 / x) * math.log1p(-x))


def l1_chain_partial_sum(x, N=200):
    """6 sum_{i<N} (1+i) x^(2+i) / ((2+i)(3+i)), the series the closed form resums."""
    return 6 * sum((1 + i) * x ** (2 + i) / ((2 + i) * (3 + i)) for i in range(N))
