"""Dihedral angles from edge-matrix cofactors, and the angle Gram matrix.

The cosine rule implemented here reads the dihedral angle along an edge off
the cofactors of the edge matrix at the *opposite* edge's vertex pair: for
the edge joining vertices k and l, with (i, j) the complementary pair,

    cos(theta_kl) = -c_ij / sqrt(c_ii * c_jj).

Geometric origin: the rows of the inverse of the vertex Gram matrix (-E)
are the outward face normals, the normal of face i being orthogonal to the
three vertices other than i; faces i and j meet along the edge joining the
two remaining vertices, which is why the cofactor index pair and the edge
pair are complementary.  The positivity of the diagonal cofactors is
exactly the condition that every vertex figure is a genuine spherical
triangle.

Note the complementary-pair map fixes the index pairs {1,4} and {2,3} as a
set but swaps them with each other, so the pairing matters for scalene
configurations; it is cross-validated against coordinate geometry by the
oracle module's independent route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .core import EDGE_PAIRS, CofactorSet, opposite_pair
from .errors import DomainError, NotATetrahedronError, NumericalError

__all__ = ["DihedralAngles", "GramMatrix", "dihedral_angles", "gram_from_angles"]

ANGLE_KEYS = ("th12", "th13", "th14", "th23", "th24", "th34")


@dataclass(frozen=True)
class DihedralAngles:
    """The six dihedral angles, radians, each in [0, pi].

    Interior angles of a solid tetrahedron lie strictly in (0, pi); the
    closed endpoints occur only for flat configurations.  ``clamped`` is
    set when a cosine marginally outside [-1, 1] was clamped, which happens
    only within rounding distance of a flat configuration.
    """

    th12: float
    th13: float
    th14: float
    th23: float
    th24: float
    th34: float
    clamped: bool = False

    def as_dict(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in ANGLE_KEYS}

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, k) for k in ANGLE_KEYS)

    def angle(self, i: int, j: int) -> float:
        """Angle along the edge joining 0-based vertices i and j."""
        i, j = min(i, j), max(i, j)
        return getattr(self, f"th{i + 1}{j + 1}")


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Symmetric 4x4 matrix with unit diagonal and entries -cos(theta_ij)."""

    g: np.ndarray


def dihedral_angles(
    C: CofactorSet, tol: Tolerances = DEFAULT_TOL
) -> DihedralAngles:
    """All six dihedral angles from a cofactor set.

    Requires every diagonal cofactor to be positive; a nonpositive one
    means the edge data does not describe a compact solid tetrahedron
    (flat folds drive two diagonal cofactors to zero).  A cosine beyond
    [-1, 1] by more than ``cos_clamp`` raises NumericalError; within that
    window it is clamped and the result flagged.
    """
    diag = C.diagonal
    bad = [i for i in range(4) if diag[i] <= 0.0]
    if bad:
        raise NotATetrahedronError(
            "diagonal cofactor c%d%d = %r is not positive; the configuration "
            "is flat or not realizable" % (bad[0] + 1, bad[0] + 1, diag[bad[0]])
        )

    clamped = False
    values = {}
    for (k, l), key in zip(EDGE_PAIRS, ANGLE_KEYS):
        i, j = opposite_pair(k, l)
        cos_th = -C.entry(i, j) / math.sqrt(diag[i] * diag[j])
        if abs(cos_th) > 1.0:
            if abs(cos_th) > 1.0 + tol.cos_clamp:
                raise NumericalError(
                    f"cosine of the angle along edge {k + 1}-{l + 1} is "
                    f"{cos_th!r}, inconsistent beyond tolerance"
                )
            cos_th = math.copysign(1.0, cos_th)
            clamped = True
        values[key] = math.acos(cos_th)
    return DihedralAngles(**values, clamped=clamped)


def gram_from_angles(angles: DihedralAngles) -> GramMatrix:
    """Gram matrix with entry (i, j) = -cos of the angle along edge i-j."""
    g = np.eye(4)
    for (i, j), key in zip(EDGE_PAIRS, ANGLE_KEYS):
        th = getattr(angles, key)
        if not 0.0 <= th <= math.pi:
            raise DomainError(f"angle {key} = {th!r} outside [0, pi]")
        g[i, j] = g[j, i] = -math.cos(th)
    return GramMatrix(g=g)
