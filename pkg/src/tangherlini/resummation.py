"""Three-term recurrence a_{i+2} = q a_{i+1} + b_i a_i and its path-sum resummation.

Unrolling the recurrence from a_1 is a sum over lattice paths of +1 steps
(weight q) and +2 steps (weight b_k, k the starting index).  Grouping paths
by their +2 steps gives

    sum_i a_i x^i = x/(1-qx) * (1 + sum_{i>=1, j>=0} a_{i,j} q^j x^(2i+j))

where a_{i,j} sums prod b_k over index sets k_1 < ... < k_i with gaps >= 2
whose *largest* element equals 2i+j-1.  ``literal=True`` instead pins the
smallest element to 1 and leaves the top free; that reading already fails
at a_{1,1}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Union

from .errors import DivergenceError, ResonanceError
from .frobenius import build_series, stride, two_step_brackets
from .params import CaseTag, ModeParams, SpacetimeParams

SEEDS = {"A": (0, 1), "B": (1, 0)}


@dataclass(frozen=True)
class ThreeTermSpec:
    q: Union[object, Sequence]  # constant, or per-index sequence q_i
    b: tuple
    seed: Union[str, tuple] = "A"

    def q_at(self, i):
        if isinstance(self.q, (tuple, list)):
            return self.q[i]
        return self.q

    @property
    def start(self):
        return SEEDS[self.seed] if isinstance(self.seed, str) else tuple(self.seed)


def appendix_q(p: SpacetimeParams, case: CaseTag):
    """The single constant q proposed for the resummation: 1/kappa_g/rho^2 (Case 1) or 1/kappa_h (Case 2)."""
    if case is CaseTag.CASE1:
        return p.n * (1 + p.n) / (p.rho ** 2 * p.R_g)
    return (p.n - 2) * (p.n - 1) / p.R_h


def appendix_b(p: SpacetimeParams, modes: ModeParams, case: CaseTag, y):
    """The bracketed reciprocal at raw argument y (callers pass e+i or e+i*m)."""
    n = p.n
    if case is CaseTag.CASE1:
        bracket = modes.lam / y ** 2 - p.kappa_g * (1 + n / y) * (1 + 2 * n / y)
        pref = n * (1 + n) / (p.rho ** 4 * p.R_g)
    else:
        bracket = modes.mu / y ** 2 - p.kappa_h * (1 + (n - 2) / y) * (1 + 2 * (n - 2) / y)
        pref = (n - 2) * (n - 1) / p.R_h
    if bracket == 0:
        raise ResonanceError(f"bracket vanishes at argument {y}", location=y)
    return pref / bracket


def iterate(spec: ThreeTermSpec, N):
    if N < 2:
        raise ValueError("N must be >= 2")
    a = list(spec.start)
    for i in range(N - 1):
        a.append(spec.q_at(i) * a[i + 1] + spec.b[i] * a[i])
    return a


def _index_sets(i, top, literal):
    for ks in combinations(range(1, top + 1), i):
        if any(ks[t + 1] - ks[t] < 2 for t in range(i - 1)):
            continue
        if literal:
            if ks[0] != 1:
                continue
        elif ks[-1] != top:
            continue
        yield ks


def path_coefficient(spec: ThreeTermSpec, i, j, seed=None, literal=False):
    """a_{i,j} (seed A) or b_{i,j} (seed B): sum over gap-2 index sets in {1..2i+j-1}."""
    if i < 1 or j < 0:
        raise ValueError("need i >= 1, j >= 0")
    seed = seed or (spec.seed if isinstance(spec.seed, str) else "A")
    shift = 0 if seed == "A" else 1
    total = 0
    for ks in _index_sets(i, 2 * i + j - 1, literal):
        prod = 1
        for k in ks:
            prod = prod * spec.b[k + shift]
        total = total + prod
    return total


def _poly_mul(a, b, order):
    out = [0] * (order + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] = out[i + j] + x * y
    return out


def resummed_coefficients(spec: ThreeTermSpec, order, literal=False):
    """Power-series coefficients (degree 0..order) of the resummed generating function."""
    if isinstance(spec.q, (tuple, list)):
        raise ValueError("resummation needs a constant q")
    q = spec.q
    seed = spec.seed
    if seed not in SEEDS:
        raise ValueError("resummation is defined for seeds 'A' and 'B'")
    geometric = [q ** k for k in range(order + 1)]
    inner = [0] * (order + 1)
    inner[0] = 1
    lead = 1 if seed == "A" else 2  # x or b_0 x^2 in front
    for i in range(1, order // 2 + 1):
        for j in range(order + 1):
            deg = 2 * i + j
            if deg + lead > order:
                break
            inner[deg] = inner[deg] + path_coefficient(spec, i, j, seed, literal) * q ** j
    body = _poly_mul(geometric, inner, order)
    out = [0] * (order + 1)
    if seed == "A":
        for d in range(order):
            out[d + 1] = body[d]
    else:
        out[0] = 1
        for d in range(order - 1):
            out[d + 2] = spec.b[0] * body[d]
    return out


def resummed_value(spec: ThreeTermSpec, x, order, literal=False):
    if isinstance(spec.q, (tuple, list)):
        raise ValueError("resummation needs a constant q")
    if abs(spec.q * x) >= 1:
        raise DivergenceError(f"|q x| = {abs(spec.q * x)} >= 1", location=x)
    return sum(c * x ** k for k, c in enumerate(resummed_coefficients(spec, order, literal)))


def random_spec(rng: random.Random, order, seed="A"):
    def r():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    q = r()
    while q == 0:
        q = r()
    return ThreeTermSpec(q, tuple(r() for _ in range(order + 2)), seed)


def check_identity(count=100, order=12, rng_seed=0):
    """Compare resummed coefficients with the recurrence on random rational specs.

    Returns (passed, failures) where each failure is (spec, degree, iterate, resummed).
    """
    rng = random.Random(rng_seed)
    failures, passed = [], 0
    for k in range(count):
        spec = random_spec(rng, order, seed="AB"[k % 2])
        want = iterate(spec, order)
        got = resummed_coefficients(spec, order)
        bad = [(d, want[d], got[d]) for d in range(order + 1) if want[d] != got[d]]
        if bad:
            failures.append((spec, *bad[0]))
        else:
            passed += 1
    return passed, failures


def literal_mismatch_report(spec: ThreeTermSpec, order=8):
    """Where the literal S_{i,j} reading disagrees with the recurrence.

    Each entry: i, j, literal and corrected a_{i,j}, plus the first degree at
    which the literal generating function departs from iterate().
    """
    entries = []
    for i in range(1, order // 2 + 1):
        for j in range(order - 2 * i):
            lit = path_coefficient(spec, i, j, literal=True)
            cor = path_coefficient(spec, i, j)
            if lit != cor:
                entries.append({"i": i, "j": j, "literal": lit, "corrected": cor})
    want = iterate(spec, order)
    lit_coeffs = resummed_coefficients(spec, order, literal=True)
    first = next((d for d in range(order + 1) if lit_coeffs[d] != want[d]), None)
    return {"entries": entries, "first_bad_degree": first,
            "iterate": want[first] if first is not None else None,
            "literal_resummed": lit_coeffs[first] if first is not None else None}


def frobenius_two_step(p, modes, case, e, N):
    """Index-dependent (q_i, b_i) such that the strided coefficients obey a_{i+2} = q_i a_{i+1} + b_i a_i."""
    m = stride(case, p.n)
    qs, bs = [], []
    for i in range(N):
        y = e + i * m
        B, A, _ = two_step_brackets(p, modes, case, y)
        qs.append(-B / A)
        bs.append(y * y / A)
    return qs, bs


def adjudicate_constant_q(p: SpacetimeParams, modes: ModeParams, case: CaseTag, e, N=20):
    """Compare the constant-q recurrence with the Frobenius coefficients.

    Returns a dict with the Frobenius coefficients, those from the
    constant-q recurrence (b at e+i*m), those from the index-dependent q_i,
    and the largest deviations.
    """
    series = build_series(p, modes, case, e, N)
    a = list(series.a)
    m = series.m
    b = tuple(appendix_b(series.params, series.modes, case, series.e + i * m) for i in range(N))
    q = appendix_q(series.params, case)
    constant = iterate(ThreeTermSpec(q, b, (a[0], a[1])), N)
    qs, bs = frobenius_two_step(series.params, series.modes, case, series.e, N)
    variable = iterate(ThreeTermSpec(tuple(qs), tuple(bs), (a[0], a[1])), N)
    return {
        "frobenius": a,
        "constant_q": constant,
        "index_dependent_q": variable,
        "b_matches": all(bs[i] == b[i] for i in range(N)),
        "max_dev_constant_q": max(abs(float(x - y)) for x, y in zip(a, constant)),
        "max_dev_variable_q": max(abs(float(x - y)) for x, y in zip(a, variable)),
        "q_constant": q,
        "q_index_dependent": qs,
    }
