"""Edge-length data model, edge matrix, cofactors, and determinant identities.

A compact hyperbolic tetrahedron is determined up to isometry by its six
edge lengths l12, l13, l14, l23, l24, l34 (lij joins vertices i and j,
vertices numbered 1..4).  The computational engine of the whole package is
the symmetric 4x4 edge matrix

    E[i][j] = cosh(lij),   E[i][i] = 1,

together with its sixteen cofactors c_ij = (-1)^(i+j) * minor_ij(E) and its
determinant.  Everything downstream (existence bounds, dihedral angles, the
volume integrand) is a function of these.

Vertices are numbered 1..4 in documentation and 0..3 in array indices; the
field ``lij`` always has i < j.  The edge opposite lij joins the remaining
two vertices, see :func:`opposite_pair`.

Cofactors are computed by explicit 3x3 minor expansion rather than through
an inverse, so they stay well defined when the determinant approaches zero
(flat configurations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import DomainError

EDGE_KEYS = ("l12", "l13", "l14", "l23", "l24", "l34")

# 0-based vertex pairs in the same order as EDGE_KEYS
EDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def opposite_pair(i: int, j: int) -> tuple[int, int]:
    """Return the 0-based vertex pair of the edge opposite edge (i, j)."""
    k, l = (m for m in range(4) if m not in (i, j))
    return k, l


@dataclass(frozen=True)
class EdgeLengths:
    """The six edge lengths of a tetrahedron, in hyperbolic length units.

    All fields must be finite and nonnegative.  Strictly positive lengths
    describe a genuine tetrahedron candidate; zeros are admitted so that
    boundary-degenerate configurations (coinciding vertices, flat folds)
    can be represented and flagged by the existence module instead of being
    unrepresentable.
    """

    l12: float
    l13: float
    l14: float
    l23: float
    l24: float
    l34: float

    def __post_init__(self):
        for name in EDGE_KEYS:
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise DomainError(f"edge length {name} must be finite, got {value!r}")
            if value < 0:
                raise DomainError(f"edge length {name} must be nonnegative, got {value!r}")
            object.__setattr__(self, name, float(value))

    @classmethod
    def from_dict(cls, d: dict) -> "EdgeLengths":
        missing = [k for k in EDGE_KEYS if k not in d]
        if missing:
            raise DomainError(f"missing edge lengths: {', '.join(missing)}")
        return cls(**{k: d[k] for k in EDGE_KEYS})

    def as_dict(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in EDGE_KEYS}

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, k) for k in EDGE_KEYS)

    def length_matrix(self) -> np.ndarray:
        """Symmetric 4x4 matrix of pairwise lengths, zero diagonal."""
        m = np.zeros((4, 4))
        for (i, j), key in zip(EDGE_PAIRS, EDGE_KEYS):
            m[i, j] = m[j, i] = getattr(self, key)
        return m

    def with_l34(self, value: float) -> "EdgeLengths":
        return replace(self, l34=value)

    def relabel(self, sigma: Sequence[int]) -> "EdgeLengths":
        """Apply a vertex permutation: new vertex k is old vertex sigma[k]."""
        if sorted(sigma) != [0, 1, 2, 3]:
            raise DomainError(f"relabeling must be a permutation of 0..3, got {sigma!r}")
        m = self.length_matrix()
        values = {key: m[sigma[i], sigma[j]] for (i, j), key in zip(EDGE_PAIRS, EDGE_KEYS)}
        return EdgeLengths(**values)


@dataclass(frozen=True, eq=False)
class EdgeMatrix:
    """Symmetric 4x4 matrix of hyperbolic cosines of the edge lengths.

    ``shifted`` caches E minus the all-ones matrix with entries computed as
    2 sinh^2(l/2), which is exact for short edges where cosh(l) - 1 would
    round away; the cofactor routines work in this shifted form.
    """

    e: np.ndarray
    shifted: np.ndarray | None = None

    def entry(self, i: int, j: int) -> float:
        return float(self.e[i, j])

    def shift(self) -> np.ndarray:
        if self.shifted is not None:
            return self.shifted
        return self.e - 1.0


@dataclass(frozen=True, eq=False)
class CofactorSet:
    """All sixteen cofactors of an edge matrix and its determinant.

    For a valid compact tetrahedron the diagonal cofactors are positive and
    the determinant is negative; both facts are checked downstream rather
    than here, because this container is also used for arbitrary symmetric
    matrices when testing determinant identities.
    """

    c: np.ndarray
    delta: float

    def entry(self, i: int, j: int) -> float:
        return float(self.c[i, j])

    @property
    def diagonal(self) -> tuple[float, float, float, float]:
        return tuple(float(self.c[i, i]) for i in range(4))


@dataclass(frozen=True)
class JacobiResiduals:
    """Residuals of the fourteen quadratic cofactor identities.

    For any symmetric unit-diagonal 4x4 matrix written as cosh of an edge
    configuration, products of complementary 2x2 cofactor minors equal the
    determinant times a complementary minor of the matrix itself.  The
    fourteen instances used by the volume machinery are evaluated here as
    |lhs - rhs|, in a fixed documented order; ``scales`` holds
    max(1, |lhs|) for relative comparison.

    These are algebraic identities: they hold for any symmetric matrix with
    unit diagonal, not only for matrices of actual tetrahedra.
    """

    residuals: tuple[float, ...]
    scales: tuple[float, ...]

    @property
    def max_relative(self) -> float:
        return max(r / s for r, s in zip(self.residuals, self.scales))


def _det3(m) -> float:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def cofactor4(m, i: int, j: int) -> float:
    """Signed cofactor of a 4x4 matrix given as nested sequences."""
    rows = [r for r in range(4) if r != i]
    cols = [c for c in range(4) if c != j]
    minor = [[m[r][c] for c in cols] for r in rows]
    sign = -1.0 if (i + j) % 2 else 1.0
    return sign * _det3(minor)


def det4(m) -> float:
    """Determinant of a 4x4 matrix by cofactor expansion along row 0."""
    return (m[0][0] * cofactor4(m, 0, 0) + m[0][1] * cofactor4(m, 0, 1)
            + m[0][2] * cofactor4(m, 0, 2) + m[0][3] * cofactor4(m, 0, 3))


def edge_matrix_from_lengths(lengths: EdgeLengths) -> EdgeMatrix:
    """Build E[i][j] = cosh(lij) with unit diagonal."""
    e = np.ones((4, 4))
    shifted = np.zeros((4, 4))
    for (i, j), key in zip(EDGE_PAIRS, EDGE_KEYS):
        value = getattr(lengths, key)
        gap = 2.0 * math.sinh(0.5 * value) ** 2
        shifted[i, j] = shifted[j, i] = gap
        e[i, j] = e[j, i] = 1.0 + gap
    return EdgeMatrix(e=e, shifted=shifted)


def _det_ones_plus(u) -> float:
    """det(J + U) for square U, J the all-ones matrix.

    By multilinearity in the columns, and because any two ones-columns make
    the determinant vanish, det(J + U) = det(U) + sum over columns of
    det(U with that column replaced by ones).  Evaluating in the shifted
    variable keeps full relative precision when the entries of U are tiny
    (short edges), where forming J + U first would destroy the cofactors.
    """
    n = len(u)
    det = _det3 if n == 3 else _det4_plain
    total = det(u)
    for j in range(n):
        replaced = [row[:j] + [1.0] + row[j + 1:] for row in u]
        total += det(replaced)
    return total


def _det4_plain(m) -> float:
    return (m[0][0] * cofactor4(m, 0, 0) + m[0][1] * cofactor4(m, 0, 1)
            + m[0][2] * cofactor4(m, 0, 2) + m[0][3] * cofactor4(m, 0, 3))


def cofactors(E: EdgeMatrix) -> CofactorSet:
    """All cofactors and the determinant of an edge matrix.

    Each cofactor is an explicit 3x3 minor (no inverse anywhere), expanded
    in the shifted variable U = E - ones so that configurations with short
    edges, where every minor is a small difference of near-unit products,
    keep their full relative accuracy.
    """
    u = E.shift().tolist()
    c = np.empty((4, 4))
    for i in range(4):
        rows = [u[r] for r in range(4) if r != i]
        for j in range(4):
            minor = [[row[col] for col in range(4) if col != j] for row in rows]
            sign = -1.0 if (i + j) % 2 else 1.0
            c[i, j] = sign * _det_ones_plus(minor)
    delta = _det_ones_plus(u)
    return CofactorSet(c=c, delta=float(delta))


def jacobi_residuals(E: EdgeMatrix, C: CofactorSet) -> JacobiResiduals:
    """Evaluate the fourteen cofactor-determinant identities.

    Writing a_ij = E[i][j] (so a_ij = cosh lij) and sh2_ij = a_ij^2 - 1,
    the identities are, in order:

        c11 c22 - c12^2 = -delta sh2_34      c11 c33 - c13^2 = -delta sh2_24
        c22 c33 - c23^2 = -delta sh2_14      c33 c44 - c34^2 = -delta sh2_12
        c22 c44 - c24^2 = -delta sh2_13      c11 c44 - c14^2 = -delta sh2_23
        c14 c23 - c12 c34 =  delta (a14 a23 - a12 a34)
        c13 c24 - c12 c34 =  delta (a13 a24 - a12 a34)
        c13 c44 - c14 c34 = -delta (a13 - a12 a23)
        c13 c14 - c11 c34 =  delta (a34 - a23 a24)
        c33 c14 - c34 c13 = -delta (a14 - a12 a24)
        c23 c24 - c34 c22 =  delta (a34 - a13 a14)
        c23 c44 - c24 c34 = -delta (a23 - a12 a13)
        c33 c24 - c34 c23 = -delta (a24 - a12 a14)

    Indices here are the 1-based vertex labels of the documentation.
    """
    a = E.e
    c = C.c
    d = C.delta

    def sh2(i, j):
        return a[i, j] * a[i, j] - 1.0

    rows = (
        (c[0, 0] * c[1, 1] - c[0, 1] ** 2, -d * sh2(2, 3)),
        (c[0, 0] * c[2, 2] - c[0, 2] ** 2, -d * sh2(1, 3)),
        (c[1, 1] * c[2, 2] - c[1, 2] ** 2, -d * sh2(0, 3)),
        (c[2, 2] * c[3, 3] - c[2, 3] ** 2, -d * sh2(0, 1)),
        (c[1, 1] * c[3, 3] - c[1, 3] ** 2, -d * sh2(0, 2)),
        (c[0, 0] * c[3, 3] - c[0, 3] ** 2, -d * sh2(1, 2)),
        (c[0, 3] * c[1, 2] - c[0, 1] * c[2, 3],
         d * (a[0, 3] * a[1, 2] - a[0, 1] * a[2, 3])),
        (c[0, 2] * c[1, 3] - c[0, 1] * c[2, 3],
         d * (a[0, 2] * a[1, 3] - a[0, 1] * a[2, 3])),
        (c[0, 2] * c[3, 3] - c[0, 3] * c[2, 3],
         -d * (a[0, 2] - a[0, 1] * a[1, 2])),
        (c[0, 2] * c[0, 3] - c[0, 0] * c[2, 3],
         d * (a[2, 3] - a[1, 2] * a[1, 3])),
        (c[2, 2] * c[0, 3] - c[2, 3] * c[0, 2],
         -d * (a[0, 3] - a[0, 1] * a[1, 3])),
        (c[1, 2] * c[1, 3] - c[2, 3] * c[1, 1],
         d * (a[2, 3] - a[0, 2] * a[0, 3])),
        (c[1, 2] * c[3, 3] - c[1, 3] * c[2, 3],
         -d * (a[1, 2] - a[0, 1] * a[0, 2])),
        (c[2, 2] * c[1, 3] - c[2, 3] * c[1, 2],
         -d * (a[1, 3] - a[0, 1] * a[0, 3])),
    )
    residuals = tuple(abs(lhs - rhs) for lhs, rhs in rows)
    scales = tuple(max(1.0, abs(lhs)) for lhs, _ in rows)
    return JacobiResiduals(residuals=residuals, scales=scales)


def expansion_residual(E: EdgeMatrix, C: CofactorSet) -> float:
    """Worst deviation of sum_j E[i][j] c[k][j] from delta * [i == k]."""
    prod = E.e @ C.c.T
    target = C.delta * np.eye(4)
    return float(np.max(np.abs(prod - target)))
