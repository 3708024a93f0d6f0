"""Background and mode parameters for the Euclidean Schwarzschild-Tangherlini metric.

Every real may be a ``float`` or a ``fractions.Fraction``; the latter keeps
recurrence checks exact.  Use :meth:`SpacetimeParams.exact` and
:meth:`ModeParams.exact` to switch a parameter set to rational arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path

from .errors import UnclassifiableError


def to_exact(value):
    """Convert an int/float/str/Fraction to an exact Fraction (floats are converted bit-exactly)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float) and not math.isfinite(value):
        raise ValueError(f"cannot represent {value!r} exactly")
    return Fraction(value)


@dataclass(frozen=True)
class SpacetimeParams:
    n: int
    rho: float
    R_g: float = 0.0
    R_h: float = 2.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise ValueError(f"space dimension n must be an integer >= 3, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not self.rho > 0:
            raise ValueError(f"horizon radius rho must be positive, got {self.rho!r}")
        for name in ("rho", "R_g", "R_h"):
            v = getattr(self, name)
            if not isinstance(v, Fraction) and not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")

    @property
    def kappa_h(self):
        """Sectional curvature R_h / ((n-2)(n-1)) of the Einstein variety."""
        return self.R_h / ((self.n - 2) * (self.n - 1))

    @property
    def kappa_g(self):
        return self.R_g / (self.n * (self.n + 1))

    def exact(self) -> "SpacetimeParams":
        return replace(self, rho=to_exact(self.rho), R_g=to_exact(self.R_g), R_h=to_exact(self.R_h))

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class ModeParams:
    lam: float = 0.0
    mu: float = 0.0
    nu: float = 0.0

    def __post_init__(self):
        for name in ("lam", "mu", "nu"):
            v = getattr(self, name)
            if not isinstance(v, Fraction) and not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")

    def exact(self) -> "ModeParams":
        return replace(self, lam=to_exact(self.lam), mu=to_exact(self.mu), nu=to_exact(self.nu))

    def as_dict(self):
        return {"lambda": self.lam, "mu": self.mu, "nu": self.nu}


class CaseTag(enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"

    def __str__(self):
        return self.value


def hypersphere(n, l, rho=1, exact=True):
    """Round-sphere data: R_h = (n-2)(n-1), mu = l(l+n-2), lambda = nu = R_g = 0."""
    R_h = (n - 2) * (n - 1)
    mu = l * (l + n - 2)
    if exact:
        return SpacetimeParams(n, Fraction(rho), Fraction(0), Fraction(R_h)), ModeParams(
            Fraction(0), Fraction(mu), Fraction(0)
        )
    return SpacetimeParams(n, float(rho), 0.0, float(R_h)), ModeParams(0.0, float(mu), 0.0)


def metric_coefficient(p: SpacetimeParams, r):
    """The dt^2 coefficient kappa_h - (rho/r)^(n-2) - r^2 kappa_g."""
    if r == 0:
        raise ZeroDivisionError("metric coefficient is singular at r = 0")
    return p.kappa_h - (p.rho / r) ** (p.n - 2) - r * r * p.kappa_g


def horizon_residual(p: SpacetimeParams):
    """Zero exactly when r = rho is a root of the metric coefficient."""
    return p.kappa_h - 1 - p.rho ** 2 * p.kappa_g


def time_period(p: SpacetimeParams):
    """Period of the imaginary-time circle required by regularity at r = rho."""
    return 4 * math.pi * p.rho


def classify_case(p: SpacetimeParams, m: ModeParams, tol=0.0) -> CaseTag:
    """Decide which of the two regular-at-infinity cases applies.

    Raises UnclassifiableError when neither holds; infinity is then an
    irregular singular point of the radial equation.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    if abs(p.R_g) > tol:
        return CaseTag.CASE1
    if abs(p.R_h) <= tol:
        raise UnclassifiableError("R_g and R_h both vanish", location="classify_case")
    relation = m.lam * p.R_h - (p.n - 2) * (p.n - 1) * m.nu
    if abs(relation) > tol:
        raise UnclassifiableError(
            f"R_g = 0 but lambda*R_h - (n-2)(n-1)*nu = {float(relation):.6g} != 0",
            location="classify_case",
        )
    if p.n == 3 and m.nu != 0:
        raise UnclassifiableError("n = 3 with R_g = 0 is regular only for nu = 0", location="classify_case")
    return CaseTag.CASE2


_KEYS = {"n", "rho", "R_g", "R_h", "lambda", "mu", "nu"}


def parse_config(text: str) -> dict:
    """Parse flat ``key = value`` (or ``key: value``) lines; '#' starts a comment.

    Values are decimal literals and are returned as exact Fractions (``n`` as int).
    """
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else ":"
        if sep not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split(sep, 1))
        if key not in _KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        out[key] = int(value) if key == "n" else Fraction(value)
    return out


def load_config(path) -> dict:
    return parse_config(Path(path).read_text())


def params_from_mapping(d: dict, exact=False):
    """Build (SpacetimeParams, ModeParams) from a mapping with the config-file keys."""
    conv = Fraction if exact else float
    sp = SpacetimeParams(
        int(d["n"]),
        conv(d.get("rho", 1)),
        conv(d.get("R_g", 0)),
        conv(d.get("R_h", (int(d["n"]) - 2) * (int(d["n"]) - 1))),
    )
    mp = ModeParams(conv(d.get("lambda", 0)), conv(d.get("mu", 0)), conv(d.get("nu", 0)))
    return sp, mp
