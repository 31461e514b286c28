"""Centralized numerical tolerances.

All magic thresholds used across the package live in one frozen record so
they can be audited and, where needed, overridden per call.  Everything is
double precision; the defaults assume inputs of moderate size (edge lengths
up to a few units).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Package-wide tolerance constants.

    boundary
        A signed slack within ``boundary * (1 + scale)`` of zero is treated
        as sitting on a degenerate boundary rather than failing a strict
        inequality.
    sqrt_clamp
        Square-root arguments that are provably nonnegative may come out
        slightly negative in floating point; values down to ``-sqrt_clamp``
        are clamped to zero, anything lower is an internal error.
    cos_clamp
        Cosines may exceed 1 in magnitude by at most this much before the
        value is considered inconsistent rather than a rounding artifact.
    identity_rel
        Relative tolerance for algebraic identity residuals (cofactor
        expansion, determinant identities).
    pivot
        Pivot threshold below which the hyperboloid factorization reports a
        rank drop instead of extrapolating.
    bounds_match
        Required agreement between the two independent expressions for the
        lower integration limit of the volume integral.
    """

    boundary: float = 1e-12
    sqrt_clamp: float = 1e-10
    cos_clamp: float = 1e-12
    identity_rel: float = 1e-10
    pivot: float = 1e-10
    bounds_match: float = 1e-12


DEFAULT_TOL = Tolerances()
