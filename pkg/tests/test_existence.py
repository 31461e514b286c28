import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hytet import (
    DomainError,
    EdgeLengths,
    NotATetrahedronError,
    cofactors,
    edge_matrix_from_lengths,
    exists,
    l34_bounds,
    sample_lengths,
)


def regular_upper_cosh(a: float) -> float:
    """Closed form of cosh(l2) when five lengths equal a."""
    c = math.cosh(a)
    return (4 * c * c - c - 1) / (c + 1)


class TestTriangleChecks:
    def test_equilateral_passes_with_unit_slack(self):
        from hytet import triangle_checks

        L = EdgeLengths(1, 1, 2, 1, 2, 1)  # triangle 1-2-3 equilateral
        ok123, _, slacks = triangle_checks(L)
        assert ok123
        assert slacks["tri_123_sum"] == pytest.approx(1.0)
        assert slacks["tri_123_diff"] == pytest.approx(1.0)

    def test_long_edge_fails(self):
        from hytet import triangle_checks

        L = EdgeLengths(3, 1, 1, 1, 1, 1)
        ok123, _, slacks = triangle_checks(L)
        assert not ok123
        assert slacks["tri_123_sum"] < 0

    def test_flat_triangle_passes_with_zero_slack(self):
        from hytet import triangle_checks

        L = EdgeLengths(2, 1, 1, 1, 1, 1)
        ok123, _, slacks = triangle_checks(L)
        assert ok123
        assert slacks["tri_123_sum"] == pytest.approx(0.0, abs=1e-15)
        report = exists(L)
        assert report.degenerate


class TestBounds:
    @pytest.mark.parametrize("a", [1.0, 2.0])
    def test_five_equal_lengths_closed_form(self, a):
        b = l34_bounds(a, a, a, a, a)
        assert b.l1 == pytest.approx(0.0, abs=1e-7)
        assert math.cosh(b.l2) == pytest.approx(regular_upper_cosh(a), rel=1e-13)

    def test_five_ones_upper_bound_value(self):
        b = l34_bounds(1, 1, 1, 1, 1)
        assert math.cosh(b.l2) == pytest.approx(2.7452180051928297, rel=1e-14)
        assert b.l2 == pytest.approx(1.6680504579626612, rel=1e-14)

    def test_flat_face_pins_l34(self):
        # l23 = l13 + l12 makes triangle 1-2-3 flat: S = 0, l1 = l2
        b = l34_bounds(0.7, 0.6, 0.9, 1.3, 0.8)
        assert b.S == pytest.approx(0.0, abs=1e-12)
        assert b.l1 == pytest.approx(b.l2, abs=1e-7)

    def test_zero_hinge_rejected(self):
        with pytest.raises(DomainError):
            l34_bounds(0.0, 1, 1, 1, 1)

    def test_violated_triangle_rejected(self):
        with pytest.raises(NotATetrahedronError):
            l34_bounds(3.0, 1, 1, 1, 1)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 31))
    def test_bounds_ordered_and_arccosh_defined(self, seed):
        L = sample_lengths(np.random.default_rng(seed))
        b = l34_bounds(L.l12, L.l13, L.l14, L.l23, L.l24)
        assert b.C - b.S >= 1.0 - 1e-12
        assert b.l1 <= b.l2


class TestExists:
    def test_all_ones_exists(self, all_ones):
        report = exists(all_ones)
        assert report.exists
        assert not report.degenerate
        assert report.l34_in_range

    def test_five_ones_l34_two_fails(self):
        report = exists(EdgeLengths(1, 1, 1, 1, 1, 2))
        assert not report.exists
        assert not report.l34_in_range
        assert report.tri_123_ok and report.tri_124_ok
        assert "l34_upper" in report.failed

    def test_five_ones_l34_zero_degenerate(self):
        report = exists(EdgeLengths(1, 1, 1, 1, 1, 0))
        assert report.exists
        assert report.degenerate

    def test_zero_hinge_reported_not_raised(self):
        report = exists(EdgeLengths(0, 1, 1, 1, 1, 1))
        assert not report.exists
        assert report.degenerate

    def test_verdict_invariant_under_relabelings(self, rng):
        for _ in range(5):
            L = sample_lengths(rng)
            verdicts = {
                exists(L.relabel(sigma)).exists
                for sigma in itertools.permutations(range(4))
            }
            assert verdicts == {True}
        # and a nonexistent one stays nonexistent
        L = EdgeLengths(1, 1, 1, 1, 1, 2)
        verdicts = {
            exists(L.relabel(sigma)).exists
            for sigma in itertools.permutations(range(4))
        }
        assert verdicts == {False}

    def test_delta_vanishes_at_bounds_negative_inside(self, rng):
        for _ in range(10):
            L = sample_lengths(rng)
            b = l34_bounds(L.l12, L.l13, L.l14, L.l23, L.l24)
            for edge, expect_zero in ((b.l1, True), (b.l2, True), (L.l34, False)):
                C = cofactors(edge_matrix_from_lengths(L.with_l34(edge)))
                if expect_zero:
                    assert abs(C.delta) < 1e-10
                else:
                    assert C.delta < -1e-8
