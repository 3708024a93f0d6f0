"""The radial eigenvalue equation in r and in the inverse variable x = rho/r.

Convention in x: ``f'' = Q(x) f + P(x) f'``.  In r: ``R'' + P R' + Q R = 0``.
Both are evaluated with whatever number type the inputs carry, so passing
Fractions gives exact rational coefficients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import FormulaMismatchError, SingularPointError
from .params import CaseTag, ModeParams, SpacetimeParams, classify_case, metric_coefficient


@dataclass(frozen=True)
class OdeCoefficients:
    P: object
    Q: object
    variable: str  # "inverse_x" or "radial_r"


@dataclass(frozen=True)
class IndicialData:
    l1: object
    l2: object
    e_minus: object
    e_plus: object
    case: CaseTag

    @property
    def exponents(self):
        return (self.e_minus, self.e_plus)


def denominator_x(p: SpacetimeParams, x):
    """D(x) = x^(n+2) + kappa_g rho^2 x^2 - kappa_h x^4."""
    n = p.n
    return x ** (n + 2) + p.kappa_g * p.rho ** 2 * x ** 2 - p.kappa_h * x ** 4


def _inner_metric(p: SpacetimeParams, x):
    # metric coefficient written in x
    return p.kappa_h - x ** (p.n - 2) - p.rho ** 2 * p.kappa_g / x ** 2


def coefficients_x(p: SpacetimeParams, m: ModeParams, x) -> OdeCoefficients:
    if x == 0:
        raise SingularPointError("x = 0 is the singular point at infinity", location=x)
    n, rho = p.n, p.rho
    D = denominator_x(p, x)
    if D == 0:
        raise SingularPointError("D(x) vanishes", location=x)
    num_q = m.lam - m.mu * x ** 2 / rho ** 2
    if m.nu != 0:
        F = _inner_metric(p, x)
        if F == 0:
            raise SingularPointError("metric coefficient vanishes (nu term)", location=x)
        num_q = num_q - m.nu / F
    Q = rho ** 2 * num_q / D
    P = -(x ** n + (1 - n) * rho ** 2 * p.kappa_g + (n - 3) * p.kappa_h * x ** 2) / (
        x ** (n + 1) + p.kappa_g * rho ** 2 * x - p.kappa_h * x ** 3
    )
    return OdeCoefficients(P, Q, "inverse_x")


def coefficients_r(p: SpacetimeParams, m: ModeParams, r) -> OdeCoefficients:
    n, rho = p.n, p.rho
    F = metric_coefficient(p, r)
    if F == 0:
        raise SingularPointError("metric coefficient vanishes", location=r)
    P = (rho ** (n - 2) / r ** (n - 1) + r * p.R_g / n - p.R_h / ((n - 2) * r)) / (-F)
    Q = (m.mu / r ** 2 + m.nu / F - m.lam) / (-F)
    return OdeCoefficients(P, Q, "radial_r")


def residual(p, m, f, fp, fpp, x):
    """``f'' - Q f - P f'`` in the x variable; zero for exact solutions."""
    c = coefficients_x(p, m, x)
    return fpp - c.Q * f - c.P * fp


def residual_r(p, m, R, Rp, Rpp, r):
    """``R'' + P R' + Q R`` in the r variable.

    For R(r) = f(rho/r) this equals (x^4 / rho^2) * residual(...) at x = rho/r.
    """
    c = coefficients_r(p, m, r)
    return Rpp + c.P * Rp + c.Q * R


def limit_integrands(p: SpacetimeParams, m: ModeParams, x):
    """The two expressions whose x -> 0 limits define l1 and l2 (i.e. -x P and -x^2 Q)."""
    c = coefficients_x(p, m, x)
    return -x * c.P, -x * x * c.Q


def _neville_at_zero(xs, ys):
    ys = list(ys)
    k = len(xs)
    for level in range(1, k):
        for i in range(k - level):
            xa, xb = xs[i], xs[i + level]
            ys[i] = (xb * ys[i] - xa * ys[i + 1]) / (xb - xa)
    return ys[0]


def extrapolated_limits(p, m, xs: Sequence = (1e-3, 1e-4, 1e-5, 1e-6)):
    """Extrapolate (-xP, -x^2 Q) to x = 0 by polynomial (Richardson) extrapolation.

    Evaluated in exact rational arithmetic on the exact images of ``xs``, so
    the cancellations near x = 0 do not lose digits.
    """
    pe, me = p.exact(), m.exact()
    xq = [Fraction(x) for x in xs]
    vals = [limit_integrands(pe, me, x) for x in xq]
    l1 = _neville_at_zero(xq, [v[0] for v in vals])
    l2 = _neville_at_zero(xq, [v[1] for v in vals])
    return float(l1), float(l2)


def singular_limits(p: SpacetimeParams, m: ModeParams, case: CaseTag):
    n = p.n
    if case is CaseTag.CASE1:
        return 1 - n, -n * (1 + n) * m.lam / p.R_g
    l2 = -(n - 2) * (n - 1) * m.mu / p.R_h
    if n == 4:
        l2 = l2 - 216 * m.nu * p.rho ** 2 / p.R_h ** 3
    return 3 - n, l2


def _exact_sqrt(q: Fraction):
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _quadratic_roots(b, c):
    # roots of e^2 + b e + c
    disc = b * b - 4 * c
    if isinstance(disc, Fraction):
        s = _exact_sqrt(disc)
        if s is not None:
            return (-b - s) / 2, (-b + s) / 2
        disc, b = float(disc), float(b)
    s = math.sqrt(disc) if disc >= 0 else cmath.sqrt(disc)
    return (-b - s) / 2, (-b + s) / 2


def printed_exponents(p: SpacetimeParams, m: ModeParams, case: CaseTag):
    """The explicit +/- formulas for the characteristic exponents, in complex floats."""
    n = p.n
    if case is CaseTag.CASE1:
        Rg = float(p.R_g)
        half = cmath.sqrt(n) * cmath.sqrt(4 * (1 + n) * float(m.lam) + n * Rg) / (2 * cmath.sqrt(Rg))
        return n / 2 - half, n / 2 + half
    Rh = float(p.R_h)
    extra = 432 * float(m.nu) * float(p.rho) ** 2 / Rh ** 2 if n == 4 else 0.0
    root = cmath.sqrt(n - 2) * cmath.sqrt(4 * (n - 1) * float(m.mu) + extra + (n - 2) * Rh) / cmath.sqrt(Rh)
    return (n - 2 - root) / 2, (n - 2 + root) / 2


def indicial_exponents(p: SpacetimeParams, m: ModeParams, case: CaseTag | None = None, tol=1e-10) -> IndicialData:
    if case is None:
        case = classify_case(p, m)
    l1, l2 = singular_limits(p, m, case)
    e1, e2 = _quadratic_roots(l1 - 1, l2)
    if complex(e1).real > complex(e2).real:
        e1, e2 = e2, e1
    printed = printed_exponents(p, m, case)
    ours = sorted((complex(e1), complex(e2)), key=lambda z: (z.real, z.imag))
    theirs = sorted(printed, key=lambda z: (z.real, z.imag))
    scale = 1 + max(abs(z) for z in ours)
    if any(abs(a - b) > tol * scale for a, b in zip(ours, theirs)):
        raise FormulaMismatchError(
            f"quadratic roots {ours} disagree with the explicit exponent formula {theirs}",
            location="indicial_exponents",
        )
    return IndicialData(l1, l2, e1, e2, case)
