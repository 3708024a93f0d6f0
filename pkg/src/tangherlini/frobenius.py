"""Frobenius series x^e * sum_i a_i x^(i*m) about x = 0 (spatial infinity).

Two recurrences live here:

* the separated two-step recurrence used to *build* strided series, with
  bracket factors evaluated at ``y = e + i*m`` (``literal_index=True`` uses
  ``e + i`` instead, which does not reproduce the known closed forms);
* the five-term master relation on absolute power offsets, used to *audit*
  a series: the coefficient of x^(e+i) after clearing denominators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import DivergenceError, DomainError, ResonanceError
from .params import CaseTag, ModeParams, SpacetimeParams

ZERO_RTOL = 1e-12


def stride(case: CaseTag, n: int) -> int:
    return n if case is CaseTag.CASE1 else n - 2


@dataclass(frozen=True)
class FrobeniusSeries:
    e: object
    m: int
    a: tuple
    case: CaseTag
    params: SpacetimeParams
    modes: ModeParams
    exact_tail: bool = False  # coefficients past len(a) are known to vanish
    literal_index: bool = field(default=False, compare=False)

    @property
    def N(self):
        return len(self.a) - 1

    @property
    def is_exact(self):
        return all(isinstance(c, (Fraction, int)) for c in self.a) and isinstance(self.e, (Fraction, int))

    def coefficient_at(self, j):
        """Coefficient of x^(e+j) on the absolute grid; None if beyond the truncation."""
        if j < 0:
            return 0
        k, r = divmod(j, self.m)
        if k > self.N:
            return 0 if self.exact_tail else None
        return 0 if r else self.a[k]


def _is_zero(value, *parts):
    if isinstance(value, Fraction) or isinstance(value, int):
        return value == 0
    scale = sum(abs(p) for p in parts)
    return abs(value) <= ZERO_RTOL * scale


def two_step_brackets(p: SpacetimeParams, modes: ModeParams, case: CaseTag, y):
    """Return (B, A, parts) with y^2 a_i = B a_{i+1} + A a_{i+2}; ``parts`` sizes A's cancellation."""
    n = p.n
    s = stride(case, n)
    if case is CaseTag.CASE1:
        kg = p.kappa_g
        B = p.rho ** 2 * (modes.lam - kg * (y + s) * (2 * y + s))
        t = kg * (y + s) * (y + 2 * s)
        A = p.rho ** 4 * kg * (modes.lam - t)
        return B, A, (modes.lam, t)
    kh = p.kappa_h
    B = kh * (y + s) * (2 * y + s) - modes.mu
    t = kh * (y + s) * (y + 2 * s)
    A = kh * (modes.mu - t)
    return B, A, (modes.mu, t)


def _promote(p, modes, e, exact):
    if exact is None:
        exact = isinstance(e, (Fraction, int)) and not isinstance(e, bool) and isinstance(p.rho, Fraction)
    if exact:
        return p.exact(), modes.exact(), Fraction(e), True
    if isinstance(e, complex):
        return p, modes, e, False
    return p, modes, float(e), False


def build_series(p: SpacetimeParams, modes: ModeParams, case: CaseTag, e, N=64, *,
                 literal_index=False, exact=None) -> FrobeniusSeries:
    """Solve the separated recurrence forward for a_1..a_N with a_0 = 1.

    At a resonance (vanishing A) a zero right-hand side leaves the coefficient
    free; it is set to zero, which selects the terminating solution.  A
    non-zero right-hand side means a logarithmic solution and raises.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    p, modes, e, exact = _promote(p, modes, e, exact)
    m = stride(case, p.n)
    one = Fraction(1) if exact else 1.0
    a = [one]
    a_m1 = 0 * one
    amax = 1.0
    for k in range(1, N + 1):
        i = k - 2
        y = e + (i if literal_index else i * m)
        B, A, parts = two_step_brackets(p, modes, case, y)
        a_km2 = a[k - 2] if k >= 2 else a_m1
        a_km1 = a[k - 1]
        lhs = y * y * a_km2
        num = lhs - B * a_km1
        if _is_zero(A, *parts):
            # judged against the series' own scale: a terminated series carries rounding noise
            if _is_zero(num, (abs(y * y) + abs(B)) * amax):
                a.append(0 * one)
                continue
            raise ResonanceError(
                f"leading coefficient vanishes at step {k} with non-zero right-hand side "
                f"(logarithmic solution, e = {e})",
                location=k,
            )
        ak = num / A
        if not exact and not math.isfinite(abs(ak)):
            raise DivergenceError(f"coefficient a_{k} overflowed", location=k)
        if not exact:
            amax = max(amax, abs(ak))
        a.append(ak)
    return FrobeniusSeries(e, m, tuple(a), case, p, modes, literal_index=literal_index)


def master_terms(p: SpacetimeParams, modes: ModeParams, e, i):
    """The five (name, offset, bracket) triples on the right of (e+i)^2 a_i = sum bracket * a_{i+offset}."""
    n, rho = p.n, p.rho
    kg, kh = p.kappa_g, p.kappa_h
    lam, mu, nu = modes.lam, modes.mu, modes.nu
    y = e + i
    return [
        ("lambda_1", n, rho ** 2 * (lam - kg * (y + n) * (2 * y + n))),
        ("lambda_2", 2 * n, rho ** 4 * kg * (lam - kg * (y + n) * (y + 2 * n))),
        ("mu_1", n - 2, -(mu - kh * (y + n - 2) * (2 * y + n - 2))),
        ("mu_2", 2 * (n - 2), kh * (mu - kh * (y + n - 2) * (y + 2 * (n - 2)))),
        ("mixed", 2 * (n - 1), mixed_term(p, modes, e, i)),
    ]


def mixed_term(p: SpacetimeParams, modes: ModeParams, e, i_abs):
    """Bracket multiplying a_{i+2(n-1)}; the only place nu appears."""
    n = p.n
    y = e + i_abs
    return p.rho ** 2 * (
        modes.nu
        - modes.mu * p.kappa_g
        - modes.lam * p.kappa_h
        + 2 * p.kappa_g * p.kappa_h * (y + n - 1) * (y + 2 * (n - 1))
    )


def master_relation_residual(series: FrobeniusSeries, i_abs: int):
    """LHS minus RHS of the master relation at absolute offset ``i_abs``.

    Raises ValueError if a needed coefficient lies beyond the truncation.
    """
    p, modes, e = series.params, series.modes, series.e
    ci = series.coefficient_at(i_abs)
    total = (e + i_abs) ** 2 * ci if ci else 0
    for _, off, bracket in master_terms(p, modes, e, i_abs):
        c = series.coefficient_at(i_abs + off)
        if c is None:
            if bracket == 0:
                continue
            raise ValueError(f"offset {i_abs + off} is beyond the truncation")
        if c:
            total -= bracket * c
    return total


def checkable_offsets(series: FrobeniusSeries):
    """Absolute offsets where the master relation can be evaluated from stored coefficients."""
    n = series.params.n
    hi = series.N * series.m if not series.exact_tail else series.N * series.m + 2 * n
    out = []
    for i in range(-2 * n, hi + 1):
        try:
            master_relation_residual(series, i)
        except ValueError:
            continue
        out.append(i)
    return out


@dataclass
class SeparationReport:
    offending: list  # (offset, term name, magnitude)
    max_residual: float  # largest master-relation residual relative to the largest term
    checked: int

    @property
    def exact(self):
        return not self.offending


def _separated_terms(case):
    return {"lambda_1", "lambda_2"} if case is CaseTag.CASE1 else {"mu_1", "mu_2"}


def audit_series(series: FrobeniusSeries) -> SeparationReport:
    """Report master-relation terms outside the separated recurrence that act on the series."""
    p, modes, e = series.params, series.modes, series.e
    keep = _separated_terms(series.case)
    rows = []
    for i in checkable_offsets(series):
        ci = series.coefficient_at(i)
        lhs = (e + i) ** 2 * ci if ci else 0
        products = []
        for name, off, bracket in master_terms(p, modes, e, i):
            c = series.coefficient_at(i + off)
            products.append((name, bracket * c if c else 0))
        rows.append((i, lhs, products))
    global_scale = max((float(abs(lhs)) + sum(float(abs(v)) for _, v in prods) for _, lhs, prods in rows),
                       default=0.0)
    offending, worst = [], 0.0
    for i, lhs, products in rows:
        worst = max(worst, float(abs(lhs - sum(v for _, v in products))))
        for name, v in products:
            if name in keep or v == 0:
                continue
            if not isinstance(v, Fraction) and abs(v) <= ZERO_RTOL * global_scale:
                continue
            offending.append((i, name, float(abs(v))))
    return SeparationReport(offending, worst / global_scale if global_scale else 0.0, len(rows))


def strided_consistency(p, modes, case, e, N=64, **kw) -> SeparationReport:
    return audit_series(build_series(p, modes, case, e, N, **kw))


class SeriesValue(NamedTuple):
    value: object
    tail: float


def _falling(k, d):
    out = 1
    for j in range(d):
        out = out * (k - j)
    return out


def eval_series(series: FrobeniusSeries, x, derivative_order=0) -> SeriesValue:
    """Sum the truncated series (or its first/second derivative) at x in (0, 1).

    ``tail`` bounds the neglected terms geometrically with ratio
    max(last observed term ratio, x^m); the x^m floor covers coefficient
    ratios that creep up to 1 (nearest singularity at x = 1).  An observed
    ratio >= 1 raises DivergenceError.
    """
    if derivative_order not in (0, 1, 2):
        raise ValueError("derivative_order must be 0, 1 or 2")
    if not 0 < x < 1:
        raise DomainError(f"x = {x} outside (0, 1)", location=x)
    e, m = series.e, series.m
    exact = series.is_exact and isinstance(x, Fraction) and Fraction(e).denominator == 1
    if not exact:
        x = float(x)
        e = complex(e) if isinstance(e, complex) else float(e)
    terms = []
    for i, c in enumerate(series.a):
        k = e + i * m
        if not c:
            terms.append(0)
            continue
        if exact:
            k = int(k)
            terms.append(c * _falling(k, derivative_order) * x ** (k - derivative_order))
        else:
            terms.append(complex(c) * _falling(k, derivative_order) * x ** (k - derivative_order)
                         if isinstance(c, complex) or isinstance(e, complex)
                         else float(c) * _falling(k, derivative_order) * x ** (k - derivative_order))
    value = sum(terms)
    tail = 0.0
    if not series.exact_tail:
        nz = [abs(complex(t)) for t in terms if t]
        if len(nz) >= 2 and terms[-1]:
            ratio = nz[-1] / nz[-2]
            if ratio >= 1:
                raise DivergenceError(f"term ratio {ratio:.3g} >= 1 at x = {float(x)}", location=float(x))
            ratio = max(ratio, abs(x) ** m)
            tail = nz[-1] * ratio / (1 - ratio)
    return SeriesValue(value, tail)


def wronskian(s1: FrobeniusSeries, s2: FrobeniusSeries, x):
    f1, d1 = eval_series(s1, x).value, eval_series(s1, x, 1).value
    f2, d2 = eval_series(s2, x).value, eval_series(s2, x, 1).value
    return f1 * d2 - d1 * f2


def _num_to_json(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    return v


def series_to_dict(series: FrobeniusSeries) -> dict:
    d = {
        "e": _num_to_json(series.e),
        "m": series.m,
        "case": str(series.case),
        "params": {k: _num_to_json(v) for k, v in series.params.as_dict().items()},
        "modes": {k: _num_to_json(v) for k, v in series.modes.as_dict().items()},
        "coefficients": [_num_to_json(c) for c in series.a],
    }
    return d
