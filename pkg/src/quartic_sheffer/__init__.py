"""Exact and asymptotic tools for the Sheffer sequence generated by exp(xz + az^2 + bz^4)."""

from .poly_core import (
    ExactPoly,
    Params,
    build_explicit,
    build_recurrence,
    c_coeff,
    coefficient,
    derivative,
    evaluate,
)

__all__ = [
    "ExactPoly",
    "Params",
    "build_explicit",
    "build_recurrence",
    "c_coeff",
    "coefficient",
    "derivative",
    "evaluate",
]

__version__ = "0.1.0"
