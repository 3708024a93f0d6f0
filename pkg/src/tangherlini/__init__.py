"""Frobenius-series analysis of the Laplace eigenvalue equation on a Euclidean
Schwarzschild-Tangherlini background, with an independent ODE oracle."""

from .params import CaseTag, ModeParams, SpacetimeParams, classify_case, hypersphere

__all__ = ["CaseTag", "ModeParams", "SpacetimeParams", "classify_case", "hypersphere"]
__version__ = "0.1.0"
