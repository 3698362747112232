"""Exact coefficients of Airy-type uniform asymptotic expansions.

The package computes the coefficient pairs of compound Airy expansions of
integrals with two coalescing saddle points by an exact integration-by-parts
recursion, cross-checks them against a residue-calculus oracle, applies the
machinery to the Weber parabolic cylinder function, and validates the
resulting expansion numerically against a high-precision quadrature
reference.
"""

from .ring import MultiPoly, PoleError, RatFunc, Rational, parse_ratfunc

__all__ = [
    "MultiPoly",
    "PoleError",
    "RatFunc",
    "Rational",
    "parse_ratfunc",
]

__version__ = "0.1.0"
