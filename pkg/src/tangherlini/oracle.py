"""Numerical ground truth for the x-equation: adaptive integration and finite differences.

Integration is delegated to scipy's DOP853 (an embedded 8(5,3) Runge-Kutta
pair); nothing here shares code with the series machinery except the ODE
coefficients themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from .errors import IntegrationError, SingularPointError
from .frobenius import FrobeniusSeries, eval_series
from .params import ModeParams, SpacetimeParams
from .radial_ode import coefficients_x

SAFETY_MARGIN = 1e-4


@dataclass(frozen=True)
class IvpState:
    x: float
    f: complex
    fp: complex
    tol: float = 1e-12
    error: float = 0.0


def _floated(p: SpacetimeParams, m: ModeParams):
    return (SpacetimeParams(p.n, float(p.rho), float(p.R_g), float(p.R_h)),
            ModeParams(float(m.lam), float(m.mu), float(m.nu)))


def singular_points(p: SpacetimeParams):
    """Real roots in (0, 1] of x^n - kappa_h x^2 + rho^2 kappa_g, where D(x) and the metric vanish."""
    n = p.n
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    coeffs[n - 2] -= float(p.kappa_h)
    coeffs[n] += float(p.rho ** 2 * p.kappa_g)
    roots = np.roots(coeffs)
    real = roots[np.abs(roots.imag) < 1e-9].real
    return sorted(r for r in real if 0 < r <= 1)


def check_regular_interval(p: SpacetimeParams, a, b, delta=SAFETY_MARGIN):
    lo, hi = min(a, b), max(a, b)
    if lo < delta or hi > 1 - delta:
        raise SingularPointError(f"[{lo}, {hi}] is within {delta} of x = 0 or x = 1", location=(lo, hi))
    for r in singular_points(p):
        if lo - delta <= r <= hi + delta:
            raise SingularPointError(f"interval [{lo}, {hi}] meets a root of D at x = {r}", location=r)


def _rhs(p, m):
    def fun(x, y):
        c = coefficients_x(p, m, x)
        return [y[1], c.Q * y[0] + c.P * y[1]]
    return fun


def _solve(p, m, x0, y0, x_end, tol, t_eval=None):
    scale = max(abs(y0[0]), abs(y0[1]), 1e-300)
    sol = solve_ivp(_rhs(p, m), (x0, x_end), y0, method="DOP853", rtol=tol, atol=tol * 1e-6 * scale,
                    t_eval=t_eval)
    if sol.status != 0:
        raise IntegrationError(f"integration from {x0} to {x_end} failed: {sol.message}", location=x0)
    return sol


def integrate(p: SpacetimeParams, m: ModeParams, start: IvpState, x_end) -> IvpState:
    """Advance (f, f') from start.x to x_end; ``error`` compares runs at tol and tol/10."""
    check_regular_interval(p, start.x, x_end)
    pf, mf = _floated(p, m)
    y0 = np.array([start.f, start.fp], dtype=complex if np.iscomplexobj([start.f, start.fp]) else float)
    coarse = _solve(pf, mf, start.x, y0, x_end, start.tol).y[:, -1]
    fine = _solve(pf, mf, start.x, y0, x_end, start.tol / 10).y[:, -1]
    err = float(np.max(np.abs(coarse - fine)))
    return replace(start, x=x_end, f=fine[0], fp=fine[1], error=start.error + err)


def trajectory(p, m, x0, f0, fp0, xs, tol=1e-12):
    """Values of the solution through (x0, f0, fp0) at each x in xs (either side of x0)."""
    xs = np.asarray(xs, dtype=float)
    check_regular_interval(p, xs.min(), xs.max())
    check_regular_interval(p, x0, x0)
    pf, mf = _floated(p, m)
    y0 = np.array([f0, fp0], dtype=complex if np.iscomplexobj([f0, fp0]) else float)
    out = np.empty(xs.shape, dtype=y0.dtype)
    left, right = xs < x0, xs >= x0
    for mask in (left, right):
        if not mask.any():
            continue
        pts = xs[mask]
        end = pts.min() if mask is left else pts.max()
        if end == x0:
            out[mask] = f0
            continue
        order = np.argsort(pts)[::-1] if mask is left else np.argsort(pts)
        sol = _solve(pf, mf, x0, y0, end, tol, t_eval=pts[order])
        vals = np.empty(pts.shape, dtype=y0.dtype)
        vals[order] = sol.y[0]
        out[mask] = vals
    return out


class Comparison(NamedTuple):
    deviation: float
    passed: bool


def compare_to_callable(f: Callable, fp: Callable, p, m, interval=(0.1, 0.6), anchor=0.3, tol=1e-6,
                        npts=41, ode_tol=1e-12) -> Comparison:
    """Seed the integrator from (f, f') at the anchor and measure the sup-norm relative deviation."""
    xs = np.linspace(interval[0], interval[1], npts)
    ref = np.array([f(x) for x in xs])
    ode = trajectory(p, m, anchor, f(anchor), fp(anchor), xs, tol=ode_tol)
    dev = float(np.max(np.abs(ode - ref)) / np.max(np.abs(ref)))
    return Comparison(dev, dev < tol)


def compare_to_series(series: FrobeniusSeries, interval=(0.1, 0.6), anchor=0.3, tol=1e-6, npts=41,
                      ode_tol=1e-12) -> Comparison:
    return compare_to_callable(
        lambda x: eval_series(series, x).value,
        lambda x: eval_series(series, x, 1).value,
        series.params, series.modes, interval, anchor, tol, npts, ode_tol,
    )


def fd_residual(fn: Callable, p, m, x, h=1e-3, coefficients=None):
    """Central-difference residual f'' - Q f - P f'; O(h^2).  ``coefficients`` overrides (P, Q)."""
    f0, fp_, fm = fn(x), fn(x + h), fn(x - h)
    d1 = (fp_ - fm) / (2 * h)
    d2 = (fp_ - 2 * f0 + fm) / (h * h)
    if coefficients is None:
        c = coefficients_x(*_floated(p, m), x)
        P, Q = c.P, c.Q
    else:
        P, Q = coefficients
    return d2 - Q * f0 - P * d1
