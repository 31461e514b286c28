"""Volume of a compact hyperbolic tetrahedron.

Three routes are implemented.

Edge-length integral (the primary route).  Fix five lengths and let the
sixth, t = l34, run from its flat lower bound l1 upward.  The derivative of
the volume with respect to t follows from the variational identity
dV = -(1/2) sum lij d(theta_ij) once every angle derivative is expressed
through cofactors of the edge matrix, giving

    dV/dt = -(1/2) (t * Omega + sinh(t) * B) / sqrt(-Delta),

    Omega = c14 (a23 - a24 x) / c11 + c24 (a13 - a14 x) / c22,
    B     = (l24 sh24 c14 + l23 sh23 c13) / c11
          + (l13 sh13 c23 + l14 sh14 c24) / c22 + l12 sh12,

where x = cosh t, a_ij = cosh l_ij, sh_ij = sinh l_ij, c_ij are the
cofactors of the edge matrix at l34 = t and Delta its determinant.  The
volume is the integral of this from l1 to the actual l34.  Omega is the
stable form of the raw cofactor combination
c14 (c11 c23 - c12 c13) / c11 + c24 (c13 c22 - c12 c23) / c22 divided by
Delta: both parenthesized combinations are determinant multiples,

    c11 c23 - c12 c13 = -Delta (a23 - a24 x),
    c13 c22 - c12 c23 = -Delta (a13 - a14 x),

and dividing them out symbolically removes a catastrophic cancellation
near the flat endpoints where Delta -> 0.

Delta itself is evaluated in factored form.  As a function of x it is the
upward parabola Delta(x) = s (x - x_lo)(x - x_hi) with s = sinh^2(l12),
whose roots are the flat configurations:

    cosh(l1) = x_lo = (-sqrt(c33 c44) - q0) / s,
    cosh(l2) = x_hi = (+sqrt(c33 c44) - q0) / s,

where c33, c44 are the (t-independent) diagonal cofactors at vertices 3, 4
and q0 is the constant term of the linear function c34(x) = s x + q0.  The
factored form keeps the integrable 1/sqrt singularity of the integrand
located exactly at the integration endpoint, which is what the
double-exponential quadrature needs; near the endpoints the factors
cosh(t) - x_lo and x_hi - cosh(t) are further rewritten as products of
sinh of half-sums and half-differences to avoid subtractive cancellation.

Angle integral (cross-check route).  With five dihedral angles fixed and
the angle along edge 3-4 as the variable t, the volume satisfies
dV/d(theta_34) = -l34 / 2, and the closed antiderivative is

    V = (1/4) integral from t0 down to theta_34 of
        log[ (c(t) - sqrt(-det F(t)) sin t) / (c(t) + sqrt(-det F(t)) sin t) ] dt

where F(t) is the Gram matrix of the outward face normals (entry (i, j) is
-cos of the angle along the edge shared by faces i and j, so the variable
angle sits in the (1, 2) slot), c(t) is its (3, 4) cofactor, and t0 is the
flat root of det F(t) = 0 lying above theta_34: hyperbolic dihedral angles
are smaller than their flat counterparts, so opening the hinge toward t0
deflates the tetrahedron to zero volume.  The root is bracketed on a grid
over (theta_34, pi) and polished by bisection.

Regular specialization.  For all six lengths equal to a, the edge integral
collapses to the closed form

    V = (1/2) integral 0..a of (A - B) / (C sqrt(D)) dt,
    A = 2 t ch^2(a) sqrt((ch a - 1)(ch t - 1)),
    B = a (1 - 4 ch a + 2 ch^2 a + ch t) sqrt((ch a + 1)(ch t + 1)),
    C = 1 + ch t - 2 ch^2 a,
    D = 4 ch^2 a - ch a - 1 - ch t - ch a ch t,

whose integrand is smooth on [0, a] (the lower flat bound is l1 = 0 and the
1/sqrt blow-up cancels against the vanishing of B - A there).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .angles import DihedralAngles
from .config import DEFAULT_TOL, Tolerances
from .core import EDGE_PAIRS, EdgeLengths, cofactor4, det4, opposite_pair
from .errors import (
    DomainError,
    ExistenceError,
    InconsistentAnglesError,
    NotATetrahedronError,
    NumericalError,
)
from .existence import exists, l34_bounds
from . import quadrature

__all__ = [
    "QuadratureConfig",
    "VolumeResult",
    "volume_derivative",
    "volume_edges",
    "volume_regular",
    "volume_sforza",
    "schlafli_residual",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and depth limit for the volume quadratures."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_levels: int = 12

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_levels < 3:
            raise DomainError("max_levels must be at least 3")


DEFAULT_QUADRATURE = QuadratureConfig()

# used where the result feeds a finite-difference or cross-route comparison
TIGHT_QUADRATURE = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-13, max_levels=14)


@dataclass(frozen=True)
class VolumeResult:
    """A volume value with its provenance and health indicators.

    ``route`` is one of ``edge_integral``, ``sforza``, ``regular``,
    ``monte_carlo``.  ``error_estimate`` is the quadrature's internal
    last-refinement difference, or one standard error for Monte Carlo.
    Tiny negative quadrature results (within abs_tol of zero) are clamped
    to zero and flagged in ``diagnostics["clamped_negative"]``.
    """

    value: float
    error_estimate: float
    evaluations: int
    route: str
    diagnostics: dict = field(default_factory=dict)


class _EdgeIntegrand:
    """Precomputed data for the edge-length volume integrand.

    Everything that does not depend on the integration variable is fixed at
    construction: hyperbolic functions of the five fixed lengths, the
    t-independent cofactors c33 and c44, the linear coefficients of c34(x),
    and the factored roots x_lo, x_hi of Delta(x).
    """

    def __init__(self, lengths: EdgeLengths, tol: Tolerances = DEFAULT_TOL):
        ch = math.cosh
        self.l12, self.l13, self.l14 = lengths.l12, lengths.l13, lengths.l14
        self.l23, self.l24 = lengths.l23, lengths.l24
        a12 = self.a12 = ch(self.l12)
        a13 = self.a13 = ch(self.l13)
        a14 = self.a14 = ch(self.l14)
        a23 = self.a23 = ch(self.l23)
        a24 = self.a24 = ch(self.l24)
        self.sh12 = math.sinh(self.l12)
        self.sh13 = math.sinh(self.l13)
        self.sh14 = math.sinh(self.l14)
        self.sh23 = math.sinh(self.l23)
        self.sh24 = math.sinh(self.l24)

        # diagonal cofactors at vertices 3 and 4; positive iff the face
        # triangles 1-2-4 and 1-2-3 are solid
        self.c33 = 1.0 + 2.0 * a12 * a14 * a24 - a12 * a12 - a14 * a14 - a24 * a24
        self.c44 = 1.0 + 2.0 * a12 * a13 * a23 - a12 * a12 - a13 * a13 - a23 * a23
        if self.c33 < 0.0 or self.c44 < 0.0:
            raise NotATetrahedronError(
                "a face triangle through the hinge edge is not realizable"
            )
        # c34 as a function of x = cosh(t): slope and constant term
        self.slope = a12 * a12 - 1.0
        if self.slope <= 0.0:
            raise DomainError("volume integrand needs a positive hinge length l12")
        self.q0 = a13 * a14 + a23 * a24 - a12 * (a14 * a23 + a13 * a24)
        root = math.sqrt(self.c33 * self.c44)
        self.x_lo = (-root - self.q0) / self.slope
        self.x_hi = (root - self.q0) / self.slope
        self.l1 = math.acosh(max(self.x_lo, 1.0))
        self.l2 = math.acosh(max(self.x_hi, 1.0))
        # Every t-dependent cofactor is a polynomial in x = cosh(t) of
        # degree at most two.  They are stored recentered at x = 1, i.e.
        # as polynomials in xm1 = x - 1, with exactly computed
        # coefficients.  xm1 itself is evaluated as 2 sinh^2(t/2), so the
        # whole integrand stays accurate near x = 1, where isosceles
        # configurations make several cofactors vanish simultaneously and
        # the direct polynomials would lose every significant digit.
        cross = a13 * a24 - a14 * a23
        d23 = a23 - a24
        d13 = a13 - a14
        self.c11_at1 = -d23 * d23
        self.c11_d1 = 2.0 * (a23 * a24 - 1.0)
        self.c22_at1 = -d13 * d13
        self.c22_d1 = 2.0 * (a13 * a14 - 1.0)
        self.c13_at1 = a12 * d23 - d13 + a24 * cross
        self.c13_d = a14 - a12 * a24
        self.c14_at1 = -(a12 * d23 - d13 + a23 * cross)
        self.c14_d = a13 - a12 * a23
        self.c23_at1 = -(d23 - a12 * d13 + a14 * cross)
        self.c23_d = a24 - a12 * a14
        self.c24_at1 = d23 - a12 * d13 + a13 * cross
        self.c24_d = a23 - a12 * a13
        self.om1_at1 = d23
        self.om2_at1 = d13
        # distances from the current integration limits to the flat roots;
        # set per integral by bind
        self.pad_lo = 0.0
        self.pad_hi = 0.0
        self.guarded_nodes = 0

    def bind(self, lower: float, upper: float) -> None:
        """Declare the integration interval [lower, upper] within [l1, l2]."""
        self.pad_lo = lower - self.l1
        self.pad_hi = self.l2 - upper

    def neg_delta_at(self, x: float) -> float:
        return -self.slope * (x - self.x_lo) * (x - self.x_hi)

    def evaluate(self, t: float, neg_delta: float) -> float:
        """dV/dt at parameter t given a precomputed -Delta > 0."""
        xm1 = 2.0 * math.sinh(0.5 * t) ** 2
        return self._assemble(t, xm1, neg_delta)

    def _assemble(self, t: float, xm1: float, neg_delta: float) -> float:
        a = self
        c11 = a.c11_at1 + xm1 * (a.c11_d1 - xm1)
        c22 = a.c22_at1 + xm1 * (a.c22_d1 - xm1)
        if c11 <= 0.0 or c22 <= 0.0:
            self.guarded_nodes += 1
            return 0.0
        c13 = a.c13_at1 + a.c13_d * xm1
        c14 = a.c14_at1 + a.c14_d * xm1
        c23 = a.c23_at1 + a.c23_d * xm1
        c24 = a.c24_at1 + a.c24_d * xm1
        omega = (c14 * (a.om1_at1 - a.a24 * xm1) / c11
                 + c24 * (a.om2_at1 - a.a14 * xm1) / c22)
        bsum = ((a.l24 * a.sh24 * c14 + a.l23 * a.sh23 * c13) / c11
                + (a.l13 * a.sh13 * c23 + a.l14 * a.sh14 * c24) / c22
                + a.l12 * a.sh12)
        return -0.5 * (t * omega + math.sinh(t) * bsum) / math.sqrt(neg_delta)

    def quadrature_node(self, t: float, dist_lo: float, dist_hi: float) -> float:
        """Integrand for the quadrature; distances refer to the bound interval.

        -Delta = slope * (cosh t - x_lo) * (x_hi - cosh t); each cosh
        difference is computed as 2 sinh(mean) sinh(half-gap) from the
        node's exact distance to the flat root, which stays fully accurate
        arbitrarily close to the roots where direct subtraction would lose
        every significant digit.
        """
        gap_lo = self.pad_lo + dist_lo
        gap_hi = self.pad_hi + dist_hi
        f_lo = 2.0 * math.sinh(0.5 * (t + self.l1)) * math.sinh(0.5 * gap_lo)
        f_hi = 2.0 * math.sinh(0.5 * (self.l2 + t)) * math.sinh(0.5 * gap_hi)
        neg_delta = self.slope * f_lo * f_hi
        if neg_delta <= 0.0:
            self.guarded_nodes += 1
            return 0.0
        xm1 = 2.0 * math.sinh(0.5 * t) ** 2
        return self._assemble(t, xm1, neg_delta)

    def derivative(self, t: float) -> float:
        """dV/dt at an interior parameter value, with domain checks."""
        x = math.cosh(t)
        neg_delta = self.neg_delta_at(x)
        if neg_delta <= 0.0:
            raise DomainError(
                f"t = {t!r} lies outside the open admissible interval "
                f"({self.l1!r}, {self.l2!r}); the edge matrix is not "
                "negative-determinant there"
            )
        before = self.guarded_nodes
        value = self.evaluate(t, neg_delta)
        if self.guarded_nodes != before:
            raise NotATetrahedronError(
                "a vertex cofactor is not positive at this parameter value"
            )
        return value


def _check_bounds_consistency(
    integ: _EdgeIntegrand, lengths: EdgeLengths, tol: Tolerances
) -> None:
    """The factored roots must match the closed-form fold bounds."""
    bounds = l34_bounds(
        lengths.l12, lengths.l13, lengths.l14, lengths.l23, lengths.l24, tol
    )
    scale = 1.0 + abs(bounds.C) + bounds.S
    if (abs(integ.x_lo - (bounds.C - bounds.S)) > tol.bounds_match * scale
            or abs(integ.x_hi - (bounds.C + bounds.S)) > tol.bounds_match * scale):
        raise NumericalError(
            "the two expressions for the flat-fold bounds disagree: "
            f"factored ({integ.x_lo!r}, {integ.x_hi!r}) vs closed form "
            f"({bounds.C - bounds.S!r}, {bounds.C + bounds.S!r})"
        )


def volume_derivative(
    lengths: EdgeLengths, t: float, tol: Tolerances = DEFAULT_TOL
) -> float:
    """Derivative of the volume with respect to the sixth edge length.

    ``lengths`` provides the five fixed lengths (its l34 field is ignored);
    ``t`` must lie strictly inside the admissible interval (l1, l2).
    """
    if not math.isfinite(t) or t < 0:
        raise DomainError(f"parameter t must be finite and nonnegative, got {t!r}")
    return _EdgeIntegrand(lengths, tol).derivative(t)


def _result_from_quadrature(
    outcome: quadrature.QuadratureOutcome,
    route: str,
    cfg: QuadratureConfig,
    diagnostics: dict,
) -> VolumeResult:
    value = outcome.value
    clamped = False
    if value < 0.0:
        if value < -max(cfg.abs_tol, 10.0 * outcome.error):
            raise NumericalError(
                f"volume quadrature returned {value!r}, negative beyond tolerance"
            )
        value = 0.0
        clamped = True
    diagnostics["clamped_negative"] = clamped
    return VolumeResult(
        value=value,
        error_estimate=outcome.error,
        evaluations=outcome.evaluations,
        route=route,
        diagnostics=diagnostics,
    )


def volume_edges(
    lengths: EdgeLengths,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: Tolerances = DEFAULT_TOL,
) -> VolumeResult:
    """Volume by the edge-length integral from the flat bound l1 to l34.

    Raises ExistenceError (with the report attached) when the lengths do
    not satisfy the existence conditions.  Inputs on the degenerate
    boundary return an exact zero for l34 at the lower bound, and integrate
    normally otherwise (the volume also vanishes at the upper bound).
    """
    report = exists(lengths, tol)
    if not report.exists:
        raise ExistenceError(
            "no compact hyperbolic tetrahedron has these edge lengths: "
            + ", ".join(report.failed),
            report=report,
        )
    integ = _EdgeIntegrand(lengths, tol)
    _check_bounds_consistency(integ, lengths, tol)

    diagnostics = {
        "l1": integ.l1,
        "l2": integ.l2,
        "delta_at_l34": -integ.neg_delta_at(math.cosh(lengths.l34)),
        "degenerate": report.degenerate,
    }
    if lengths.l34 <= integ.l1 + tol.boundary * (1.0 + integ.l1):
        diagnostics["guarded_nodes"] = 0
        return VolumeResult(0.0, 0.0, 0, "edge_integral", diagnostics)

    upper = min(lengths.l34, integ.l2)
    integ.bind(integ.l1, upper)
    outcome = quadrature.integrate(
        integ.quadrature_node, integ.l1, upper,
        abs_tol=cfg.abs_tol, rel_tol=cfg.rel_tol, max_levels=cfg.max_levels,
    )
    diagnostics["guarded_nodes"] = integ.guarded_nodes
    return _result_from_quadrature(outcome, "edge_integral", cfg, diagnostics)


def volume_regular(
    a: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> VolumeResult:
    """Volume of the regular tetrahedron with all edges equal to a.

    Uses the closed-form specialization of the edge integrand; the lower
    fold bound is exactly zero in the regular case, so the integral runs
    over [0, a] and the integrand is bounded throughout.
    """
    if not math.isfinite(a) or a < 0:
        raise DomainError(f"regular edge length must be finite and nonnegative, got {a!r}")
    if a == 0.0:
        return VolumeResult(0.0, 0.0, 0, "regular", {"l1": 0.0, "l2": 0.0})

    c = math.cosh(a)
    c2 = c * c

    def f(t: float, dist_lo: float, dist_hi: float) -> float:
        x = math.cosh(t)
        # cosh t - 1 = 2 sinh^2(t/2), accurate for small t
        xm1 = 2.0 * math.sinh(0.5 * t) ** 2
        A = 2.0 * t * c2 * math.sqrt((c - 1.0) * xm1)
        B = a * (1.0 - 4.0 * c + 2.0 * c2 + x) * math.sqrt((c + 1.0) * (x + 1.0))
        C = 1.0 + x - 2.0 * c2
        D = 4.0 * c2 - c - 1.0 - x - c * x
        return 0.5 * (A - B) / (C * math.sqrt(D))

    outcome = quadrature.integrate(
        f, 0.0, a,
        abs_tol=cfg.abs_tol, rel_tol=cfg.rel_tol, max_levels=cfg.max_levels,
    )
    ch_l2 = (4.0 * c2 - c - 1.0) / (c + 1.0)
    diagnostics = {"l1": 0.0, "l2": math.acosh(ch_l2)}
    return _result_from_quadrature(outcome, "regular", cfg, diagnostics)


def _face_gram_builder(angles: DihedralAngles) -> Callable[[float], list]:
    """Gram matrix of outward face normals as a function of the 3-4 angle.

    Entry (i, j) couples faces i and j, whose shared edge joins the two
    complementary vertices, so the angle along edge 3-4 occupies the (1, 2)
    slot and the cofactor paired with it by the determinant identities is
    the (3, 4) one.
    """
    fixed = {}
    for (i, j) in EDGE_PAIRS:
        k, l = opposite_pair(i, j)
        fixed[(i, j)] = -math.cos(angles.angle(k, l))

    def build(t: float) -> list:
        g = [[1.0] * 4 for _ in range(4)]
        for (i, j), v in fixed.items():
            g[i][j] = g[j][i] = v
        g[0][1] = g[1][0] = -math.cos(t)
        return g

    return build


def volume_sforza(
    angles: DihedralAngles,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: Tolerances = DEFAULT_TOL,
) -> VolumeResult:
    """Volume from dihedral angles by the one-angle logarithmic integral.

    The flat root t0 of det F(t) = 0 is bracketed on a 256-point grid over
    (theta_34, pi) and bisected to full precision; among multiple roots the
    smallest one above theta_34 is the boundary of the negative-determinant
    component containing the input, which is the flat configuration the
    volume vanishes at.  If det F is already nonnegative at theta_34 the
    angles are inconsistent (or exactly flat, which returns zero volume).
    """
    for key, th in angles.as_dict().items():
        if not 0.0 <= th <= math.pi:
            raise DomainError(f"angle {key} = {th!r} outside [0, pi]")
    th34 = angles.th34
    build = _face_gram_builder(angles)

    def det_f(t: float) -> float:
        return det4(build(t))

    d_start = det_f(th34)
    if d_start >= 0.0:
        if d_start <= tol.boundary * 16.0:
            # flat (zero-curvature) data: the integral is empty
            return VolumeResult(0.0, 0.0, 0, "sforza",
                                {"t0": th34, "det_at_th34": d_start})
        raise InconsistentAnglesError(
            f"determinant of the angle Gram matrix is {d_start!r} >= 0 at "
            "the given angles; not a compact hyperbolic tetrahedron"
        )

    # bracket the flat root above th34
    grid = 256
    top = math.pi - 1e-9
    lo = th34
    hi = None
    scan_evals = 0
    for k in range(1, grid + 1):
        t = th34 + (top - th34) * k / grid
        scan_evals += 1
        if det_f(t) >= 0.0:
            hi = t
            break
        lo = t
    if hi is None:
        raise InconsistentAnglesError(
            "no flat root of the Gram determinant above the 3-4 angle; "
            "the angles do not bound a compact tetrahedron"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if det_f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        scan_evals += 1
        if hi - lo <= 1e-14:
            break
    t0 = 0.5 * (lo + hi)

    def f(t: float, dist_lo: float, dist_hi: float) -> float:
        g = build(t)
        d = det4(g)
        c34 = cofactor4(g, 2, 3)
        r = math.sqrt(max(-d, 0.0)) * math.sin(t)
        if c34 <= r:
            raise InconsistentAnglesError(
                "logarithm argument is not positive; the angles do not come "
                "from a compact tetrahedron"
            )
        return 0.25 * math.log((c34 - r) / (c34 + r))

    outcome = quadrature.integrate(
        f, th34, t0,
        abs_tol=cfg.abs_tol, rel_tol=cfg.rel_tol, max_levels=cfg.max_levels,
    )
    # the antiderivative runs from t0 downward
    outcome = quadrature.QuadratureOutcome(
        -outcome.value, outcome.error, outcome.evaluations + scan_evals
    )
    diagnostics = {"t0": t0, "det_at_th34": d_start}
    return _result_from_quadrature(outcome, "sforza", cfg, diagnostics)


def schlafli_residual(
    lengths: EdgeLengths,
    h: float,
    cfg: QuadratureConfig = TIGHT_QUADRATURE,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """Consistency defect between the volume and the angle variation.

    Moves the sixth edge from l34 to l34 + h and returns

        | V(l34 + h) - V(l34) + (1/2) sum_ij lij (theta_ij(l34 + h) - theta_ij(l34)) |

    with the lengths in the sum held at their base values.  The variational
    identity makes the first-order terms cancel exactly, so the residual of
    these one-sided differences scales as h^2 (the coefficient is the
    derivative of the 3-4 angle, whose own length coefficient moves with
    the fold).  Requires a strictly interior configuration with margin for
    the step.
    """
    from .core import cofactors, edge_matrix_from_lengths
    from .angles import dihedral_angles

    if not 0.0 < h < 0.1:
        raise DomainError(f"step h must be in (0, 0.1), got {h!r}")
    report = exists(lengths, tol)
    if not report.exists or report.degenerate:
        raise NotATetrahedronError(
            "the variational residual needs a strictly interior configuration"
        )
    if lengths.l34 + h >= report.bounds.l2:
        raise DomainError(
            f"step h = {h!r} leaves the admissible interval "
            f"(l2 = {report.bounds.l2!r})"
        )

    moved = lengths.with_l34(lengths.l34 + h)
    v0 = volume_edges(lengths, cfg, tol).value
    v1 = volume_edges(moved, cfg, tol).value
    th0 = dihedral_angles(cofactors(edge_matrix_from_lengths(lengths)), tol)
    th1 = dihedral_angles(cofactors(edge_matrix_from_lengths(moved)), tol)
    lm = lengths.length_matrix()
    swing = sum(
        lm[i, j] * (th1.angle(i, j) - th0.angle(i, j)) for (i, j) in EDGE_PAIRS
    )
    return abs((v1 - v0) + 0.5 * swing)
