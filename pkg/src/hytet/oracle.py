"""Independent geometric verification routes.

Everything in this module deliberately avoids the cofactor machinery used
by the primary computations, so agreement between the two sides is a real
check and not a tautology:

* ``embed_vertices`` realizes the edge matrix as four points on the
  hyperboloid sheet <v, v> = -1 in Minkowski space (signature -+++), by a
  Minkowski analogue of Cholesky factorization.  The vertex Gram matrix of
  the embedding equals -E by construction, and round-tripping distances
  through arccosh(-<vi, vj>) recovers the input lengths.

* ``dihedral_angles_geometric`` intersects the tetrahedron with a small
  sphere about a vertex: the face angles at that vertex are the sides of a
  spherical triangle whose angles are dihedral angles, so one application
  of the hyperbolic law of cosines (for the face angles) and one of the
  spherical law of cosines (for the triangle's angle) produce each dihedral
  angle from coordinates alone.

* ``volume_monte_carlo`` maps the vertices to the Klein ball, where
  geodesics are straight so the solid is an ordinary Euclidean tetrahedron,
  samples it uniformly, and averages the Klein volume density
  (1 - |x|^2)^(-2).  Sampling is counter-based: sample i always consumes
  block i of a Philox stream keyed by the seed, and partial sums are
  accumulated over fixed-size index blocks, so the estimate depends only on
  (seed, samples), not on chunking or parallel scheduling.

* ``euclidean_volume_cm`` and ``lobachevsky`` supply the flat-limit and
  ideal-limit reference values used to sandwich the hyperbolic volume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angles import DihedralAngles
from .config import DEFAULT_TOL, Tolerances
from .core import EDGE_PAIRS, EdgeLengths, EdgeMatrix
from .errors import DegenerateError, DomainError, NotATetrahedronError
from .volume import VolumeResult

__all__ = [
    "VertexEmbedding",
    "MonteCarloConfig",
    "embed_vertices",
    "dihedral_angles_geometric",
    "volume_monte_carlo",
    "euclidean_volume_cm",
    "lobachevsky",
]

# Minkowski signature (-, +, +, +)
_METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])

# samples are reduced over fixed blocks of this many, independent of the
# processing chunk size, so that sums associate identically for any chunking
_REDUCE_BLOCK = 4096


def _mdot(u: np.ndarray, v: np.ndarray) -> float:
    return float(-u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3])


@dataclass(frozen=True, eq=False)
class VertexEmbedding:
    """Four hyperboloid points realizing an edge matrix.

    ``vertices`` has one Minkowski 4-vector per row, first coordinate
    positive, <vi, vi> = -1 and <vi, vj> = -cosh(lij).  ``gram_resid`` is
    the largest deviation of those inner products from their targets.
    """

    vertices: np.ndarray
    gram_resid: float

    def length(self, i: int, j: int) -> float:
        """Hyperbolic distance between embedded vertices i and j."""
        return math.acosh(max(1.0, -_mdot(self.vertices[i], self.vertices[j])))


@dataclass(frozen=True)
class MonteCarloConfig:
    """Sampling parameters for the Klein-model volume estimator.

    ``chunk`` only limits how many samples are processed per batch (memory
    control); it never changes the estimate.  Identical (seed, samples)
    give bit-identical results for any chunk size.
    """

    seed: int
    samples: int
    chunk: int = 65536

    def __post_init__(self):
        if self.samples < 1:
            raise DomainError(f"samples must be >= 1, got {self.samples!r}")
        if self.chunk < 1:
            raise DomainError(f"chunk must be >= 1, got {self.chunk!r}")


def embed_vertices(
    E: EdgeMatrix, tol: Tolerances = DEFAULT_TOL
) -> VertexEmbedding:
    """Realize an edge matrix as vertices on the hyperboloid.

    Vertex 1 is pinned at (1, 0, 0, 0) and each later vertex is solved from
    its inner products with the previous ones, consuming one new spatial
    coordinate per vertex.  A pivot below the rank tolerance means the
    configuration is flat (or has coinciding vertices) and the embedding
    refuses with the achieved rank; a negative pivot beyond tolerance means
    the matrix is not realizable on the hyperboloid at all.
    """
    a = E.e
    v = np.zeros((4, 4))
    v[0] = (1.0, 0.0, 0.0, 0.0)

    scale = float(np.max(a))

    def pivot(value: float, rank: int) -> float:
        if value <= tol.pivot * scale * scale:
            if value < -tol.sqrt_clamp * scale * scale:
                raise NotATetrahedronError(
                    "edge matrix is not realizable: a hyperboloid pivot is "
                    f"negative ({value!r})"
                )
            raise DegenerateError(
                f"flat configuration: embedding rank {rank} of 4", rank=rank
            )
        return math.sqrt(value)

    sh12 = pivot(a[0, 1] ** 2 - 1.0, 1)
    v[1] = (a[0, 1], sh12, 0.0, 0.0)

    p = a[0, 2]
    q = (a[0, 1] * p - a[1, 2]) / sh12
    r = pivot(p * p - q * q - 1.0, 2)
    v[2] = (p, q, r, 0.0)

    s = a[0, 3]
    u = (a[0, 1] * s - a[1, 3]) / sh12
    w = (p * s - q * u - a[2, 3]) / r
    z = pivot(s * s - u * u - w * w - 1.0, 3)
    v[3] = (s, u, w, z)

    resid = 0.0
    for i in range(4):
        for j in range(i, 4):
            target = -1.0 if i == j else -a[i, j]
            resid = max(resid, abs(_mdot(v[i], v[j]) - target))
    return VertexEmbedding(vertices=v, gram_resid=resid)


def dihedral_angles_geometric(
    emb: VertexEmbedding, tol: Tolerances = DEFAULT_TOL
) -> DihedralAngles:
    """Dihedral angles from coordinates via the vertex-sphere construction.

    For the edge joining vertices i and j, work at vertex j: the face
    angles between the edges leaving j come from the hyperbolic law of
    cosines on the faces, and the spherical law of cosines on the vertex
    figure turns them into the dihedral angle along the edge toward i.
    Never consults cofactors, so it is a genuinely independent check of
    the algebraic angle route.
    """
    n = emb.vertices
    lm = np.zeros((4, 4))
    for i in range(4):
        for j in range(i + 1, 4):
            lm[i, j] = lm[j, i] = math.acosh(max(1.0, -_mdot(n[i], n[j])))

    ch = np.cosh(lm)
    sh = np.sinh(lm)

    def face_angle(x: int, v: int, y: int) -> float:
        denom = sh[v, x] * sh[v, y]
        if denom <= tol.pivot:
            raise DegenerateError("coinciding vertices in the embedding")
        c = (ch[v, x] * ch[v, y] - ch[x, y]) / denom
        return math.acos(min(1.0, max(-1.0, c)))

    values = {}
    for (i, j) in EDGE_PAIRS:
        k, l = (m for m in range(4) if m not in (i, j))
        side_kl = face_angle(k, j, l)
        side_ki = face_angle(k, j, i)
        side_li = face_angle(l, j, i)
        denom = math.sin(side_ki) * math.sin(side_li)
        if denom <= tol.pivot:
            raise DegenerateError("flat vertex figure in the embedding")
        c = (math.cos(side_kl) - math.cos(side_ki) * math.cos(side_li)) / denom
        values[f"th{i + 1}{j + 1}"] = math.acos(min(1.0, max(-1.0, c)))
    return DihedralAngles(**values)


def _klein_vertices(emb: VertexEmbedding) -> np.ndarray:
    return emb.vertices[:, 1:] / emb.vertices[:, :1]


def volume_monte_carlo(
    emb: VertexEmbedding, cfg: MonteCarloConfig
) -> VolumeResult:
    """Monte Carlo volume in the Klein model.

    Uniform points in the Euclidean image tetrahedron are drawn by
    normalizing four exponential variates into barycentric weights (one
    Philox block of four uniforms per sample), and the hyperbolic volume is
    the Euclidean volume times the mean of (1 - |x|^2)^(-2).  The returned
    ``error_estimate`` is one standard error.
    """
    k = _klein_vertices(emb)
    vol_eucl = abs(float(np.linalg.det(k[1:] - k[0]))) / 6.0

    n = cfg.samples
    block_sums: list[float] = []
    block_sumsq: list[float] = []
    # whole reduce-blocks per batch; cfg.chunk is only a memory hint
    blocks_per_batch = max(1, cfg.chunk // _REDUCE_BLOCK)
    start = 0
    while start < n:
        stop = min(n, start + blocks_per_batch * _REDUCE_BLOCK)
        count = stop - start
        gen = np.random.Generator(np.random.Philox(key=cfg.seed, counter=[start, 0, 0, 0]))
        uniforms = gen.random((count, 4))
        weights = -np.log1p(-uniforms)
        bary = weights / weights.sum(axis=1, keepdims=True)
        pts = bary @ k
        density = (1.0 - np.einsum("ij,ij->i", pts, pts)) ** -2.0
        for off in range(0, count, _REDUCE_BLOCK):
            piece = density[off:off + _REDUCE_BLOCK]
            block_sums.append(float(np.sum(piece)))
            block_sumsq.append(float(np.sum(piece * piece)))
        start = stop

    total = float(np.sum(np.asarray(block_sums)))
    total_sq = float(np.sum(np.asarray(block_sumsq)))
    mean = total / n
    variance = max(total_sq / n - mean * mean, 0.0)
    value = vol_eucl * mean
    stderr = vol_eucl * math.sqrt(variance / n)
    return VolumeResult(
        value=value,
        error_estimate=stderr,
        evaluations=n,
        route="monte_carlo",
        diagnostics={"euclidean_volume": vol_eucl, "seed": cfg.seed},
    )


def euclidean_volume_cm(
    lengths: EdgeLengths, tol: Tolerances = DEFAULT_TOL
) -> float:
    """Euclidean tetrahedron volume from the squared-distance determinant.

    The 5x5 bordered determinant of squared pairwise distances equals
    288 V^2 for a Euclidean tetrahedron; a negative value (beyond rounding)
    means the lengths are not Euclidean-realizable.
    """
    lm = lengths.length_matrix()
    m = np.ones((5, 5))
    m[0, 0] = 0.0
    m[1:, 1:] = lm ** 2
    cm = float(np.linalg.det(m))
    scale = float(np.max(lm)) ** 6 + 1.0
    if cm < 0.0:
        if cm < -tol.sqrt_clamp * scale:
            raise DomainError(
                f"lengths are not Euclidean-realizable (determinant {cm!r})"
            )
        cm = 0.0
    return math.sqrt(cm / 288.0)


def lobachevsky(x: float, rel_tol: float = 1e-12) -> float:
    """The log-sine integral L(x) = -integral 0..x of log|2 sin u| du.

    Evaluated by its Fourier sine series sum_n sin(2 n x) / (2 n^2) after
    reduction to [0, pi/2] using that the function is odd and pi-periodic.
    Partial sums are extended in blocks until the oscillatory tail bound
    (Abel summation against the bounded sine partial sums) drops below the
    requested relative tolerance; small arguments switch to the duplication
    identity L(x) = L(2x)/2 + L(pi/2 - x) to keep the series short, and
    below 1e-9 to the leading asymptote x (1 - log 2x).
    """
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x!r}")
    y = math.fmod(x, math.pi)
    if y < 0.0:
        y += math.pi
    sign = 1.0
    if y > 0.5 * math.pi:
        y = math.pi - y
        sign = -1.0
    if y == 0.0:
        return 0.0
    if y < 1e-9:
        return sign * (y - y * math.log(2.0 * y))
    if y < 0.15:
        # duplication: both arguments land in fast-converging territory
        return sign * (0.5 * lobachevsky(2.0 * y, rel_tol)
                       + lobachevsky(0.5 * math.pi - y, rel_tol))

    total = 0.0
    block = 1 << 15
    n0 = 1
    bound = 1.0 / abs(math.sin(y))
    while True:
        n = np.arange(n0, n0 + block, dtype=np.float64)
        total += float(np.sum(np.sin(2.0 * n * y) / (2.0 * n * n)))
        n0 += block
        tail = bound / (2.0 * n0 * n0)
        if tail <= rel_tol * max(abs(total), 1e-3):
            break
        if n0 > (1 << 26):
            break
    return sign * total
