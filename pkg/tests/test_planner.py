"""Tests for the fiberwise planners over complex projective space."""

from __future__ import annotations

import math

import numpy as np
import pytest

from paramtc.planner import (
    BundlePoint,
    DegenerateRepresentativeError,
    NotSameFiberError,
    PlannedPath,
    ProjectiveRep,
    alpha_deform,
    cell_index,
    cell_section,
    classify_pair,
    fiber_distance,
    fiber_inner,
    plan,
    plan_hopf,
)

RNG = np.random.default_rng(20240517)


def random_rep(n: int) -> ProjectiveRep:
    v = RNG.standard_normal(n + 1) + 1j * RNG.standard_normal(n + 1)
    return ProjectiveRep.normalized(v)


def random_point(z: ProjectiveRep) -> BundlePoint:
    v = RNG.standard_normal(3)
    v /= np.linalg.norm(v)
    return BundlePoint.from_fiber(z, complex(v[0], v[1]), float(v[2]))


class TestTypes:
    def test_rep_must_be_unit(self):
        with pytest.raises(ValueError):
            ProjectiveRep([1.0, 1.0])

    def test_point_w_must_lie_in_line(self):
        z = ProjectiveRep([1.0, 0.0])
        with pytest.raises(ValueError):
            BundlePoint(z, [0.0, 1.0], 0.0)

    def test_point_must_be_unit(self):
        z = ProjectiveRep([1.0, 0.0])
        with pytest.raises(ValueError):
            BundlePoint(z, [0.5, 0.0], 0.5)

    def test_section_point(self):
        p = BundlePoint.section_point(random_rep(2))
        assert p.w_norm == 0.0 and p.s == 1.0


class TestFiberInner:
    def test_self_inner_is_one(self):
        x = random_point(random_rep(2))
        assert fiber_inner(x, x) == pytest.approx(1.0, abs=1e-12)

    def test_antipodal_poles(self):
        z = random_rep(2)
        sigma = BundlePoint.section_point(z)
        assert fiber_inner(sigma, sigma.antipode()) == pytest.approx(-1.0, abs=1e-12)

    def test_orthogonal_sum_metric(self):
        z = random_rep(1)
        tilted = BundlePoint.from_fiber(z, 1 / math.sqrt(2), 1 / math.sqrt(2))
        assert fiber_inner(tilted, BundlePoint.section_point(z)) == pytest.approx(
            1 / math.sqrt(2)
        )

    def test_different_fibers_rejected(self):
        with pytest.raises(NotSameFiberError):
            fiber_inner(random_point(random_rep(2)), random_point(random_rep(2)))


class TestCells:
    def test_point_cell(self):
        assert cell_index(ProjectiveRep([1.0, 0.0, 0.0])) == 0

    def test_top_cell(self):
        assert cell_index(ProjectiveRep([0.0, 0.0, 1.0])) == 2

    def test_last_nonzero_wins(self):
        z = ProjectiveRep(np.array([1.0, 1j, 0.0]) / math.sqrt(2))
        assert cell_index(z) == 1

    def test_degenerate_with_coarse_tolerance(self):
        z = ProjectiveRep(np.array([1.0, 1.0]) / math.sqrt(2))
        with pytest.raises(DegenerateRepresentativeError):
            cell_index(z, tol_cell=0.99)

    def test_section_normalises_phase(self):
        out = cell_section(ProjectiveRep([0.0, 1j]), 1)
        assert np.allclose(out, [0.0, 1.0], atol=1e-15)

    def test_section_fixed_point(self):
        out = cell_section(ProjectiveRep([1.0, 0.0]), 0)
        assert np.allclose(out, [1.0, 0.0], atol=1e-15)

    def test_section_makes_coordinate_real_positive(self):
        for _ in range(20):
            z = random_rep(3)
            j = cell_index(z)
            out = cell_section(z, j)
            assert out[j].imag == pytest.approx(0.0, abs=1e-12)
            assert out[j].real > 0

    def test_section_is_gauge_invariant(self):
        z = random_rep(2)
        lam = complex(math.cos(1.1), math.sin(1.1))
        j = cell_index(z)
        a = cell_section(z, j)
        b = cell_section(ProjectiveRep(lam * z.z), j)
        assert np.allclose(a, b, atol=1e-12)

    def test_section_rejects_vanishing_coordinate(self):
        with pytest.raises(DegenerateRepresentativeError):
            cell_section(ProjectiveRep([1.0, 0.0]), 1)


class TestAlphaDeform:
    def test_identity_at_zero(self):
        x = random_point(random_rep(2))
        if x.w_norm == 0.0:
            pytest.skip("pole sampled")
        assert fiber_distance(alpha_deform(x, 0.0), x) < 1e-12

    def test_retraction_at_one(self):
        z = random_rep(2)
        x = BundlePoint.from_fiber(z, 0.6, 0.8)
        out = alpha_deform(x, 1.0)
        assert out.s == 0.0
        assert np.allclose(out.w, x.w / x.w_norm, atol=1e-12)

    def test_halfway_values(self):
        # (0.6, 0.8) at t = 1/2: scale by 1/sqrt(0.52), s -> 0.4/sqrt(0.52)
        z = random_rep(1)
        x = BundlePoint.from_fiber(z, 0.6, 0.8)
        out = alpha_deform(x, 0.5)
        assert out.s == pytest.approx(0.4 / math.sqrt(0.52), abs=1e-12)
        assert out.w_norm == pytest.approx(0.6 / math.sqrt(0.52), abs=1e-12)

    def test_pole_rejected(self):
        with pytest.raises(ValueError):
            alpha_deform(BundlePoint.section_point(random_rep(1)), 0.5)


class TestClassify:
    def test_generic_pair_is_piece_zero(self):
        z = random_rep(2)
        x = BundlePoint.from_fiber(z, 1.0, 0.0)
        y = BundlePoint.section_point(z)
        assert classify_pair(x, y) == 0

    def test_tilted_antipodal_pair(self):
        z = random_rep(2)
        x = BundlePoint.from_fiber(z, 0.5, math.sqrt(0.75))
        assert classify_pair(x, x.antipode()) == 1

    def test_pole_pair_over_point_cell(self):
        z = ProjectiveRep([1.0, 0.0, 0.0])
        sigma = BundlePoint.section_point(z)
        assert classify_pair(sigma, sigma.antipode()) == 2

    def test_both_pole_signs_share_a_piece(self):
        z = random_rep(2)
        j = cell_index(z)
        up = BundlePoint.section_point(z, +1)
        down = BundlePoint.section_point(z, -1)
        assert classify_pair(up, up.antipode()) == 2 + j
        assert classify_pair(down, down.antipode()) == 2 + j


class TestPlanHopf:
    def test_equal_inputs_constant(self):
        z = random_rep(2).z
        path = plan_hopf(z, z)
        assert path.piece == 0
        for t in (0.0, 0.3, 1.0):
            assert np.allclose(path.at(t).w, z, atol=1e-12)

    def test_quarter_turn_formula(self):
        z = random_rep(1).z
        z2 = complex(0, 1) * z
        path = plan_hopf(z, z2)
        assert path.piece == 0
        for t in (0.0, 0.25, 0.5, 1.0):
            expected = np.exp(1j * math.pi * t / 2) * z
            assert np.allclose(path.at(t).w, expected, atol=1e-12)

    def test_antipodal_rotation(self):
        z = random_rep(2).z
        path = plan_hopf(z, -z)
        assert path.piece == 1
        assert np.allclose(path.at(0.5).w, 1j * z, atol=1e-12)
        assert np.allclose(path.at(1.0).w, -z, atol=1e-12)

    def test_non_proportional_rejected(self):
        with pytest.raises(NotSameFiberError):
            plan_hopf([1.0, 0.0], [0.0, 1.0])


class TestPlan:
    def test_equal_endpoints_constant_piece_zero(self):
        z = random_rep(2)
        x = random_point(z)
        path = plan(x, x)
        assert path.piece == 0
        for t in (0.0, 0.37, 1.0):
            assert fiber_distance(path.at(t), x) < 1e-12

    def test_piece_one_passes_through_equator(self):
        z = random_rep(2)
        x = BundlePoint.from_fiber(z, 0.6, 0.8)
        path = plan(x, x.antipode())
        assert path.piece == 1
        assert len(path.segments) == 3
        for t in (1 / 3, 0.5, 2 / 3):
            _, s = path.fiber_at(t)
            assert s == pytest.approx(0.0, abs=1e-12)
        # halfway the equatorial phase is i
        w_half, _ = path.fiber_at(0.5)
        assert np.allclose(w_half, 1j * x.w / x.w_norm, atol=1e-12)
        assert fiber_distance(path.at(0.0), x) < 1e-12
        assert fiber_distance(path.at(1.0), x.antipode()) < 1e-12

    def test_piece_one_alpha_checkpoint(self):
        # first third runs the flattening: t = 1/6 is alpha at parameter 1/2
        z = random_rep(1)
        x = BundlePoint.from_fiber(z, 0.6, 0.8)
        path = plan(x, x.antipode())
        _, s = path.fiber_at(1 / 6)
        assert s == pytest.approx(0.4 / math.sqrt(0.52), abs=1e-12)

    def test_pole_pair_polar_formula(self):
        z = ProjectiveRep([1.0, 0.0, 0.0])
        sigma = BundlePoint.section_point(z)
        path = plan(sigma, sigma.antipode())
        assert path.piece == 2
        phi0 = cell_section(z, 0)
        for t in (0.0, 0.25, 0.5, 0.75, 1.0):
            w, s = path.fiber_at(t)
            assert np.allclose(w, math.sin(math.pi * t) * phi0, atol=1e-12)
            assert s == pytest.approx(math.cos(math.pi * t), abs=1e-12)

    def test_snap_segment_restores_endpoint(self):
        # y close to but not exactly -x is still routed to piece 1
        z = random_rep(2)
        x = BundlePoint.from_fiber(z, 0.6, 0.8)
        eps = 4e-5
        y = BundlePoint.from_fiber(z, -0.6 * np.exp(1j * eps), -0.8)
        assert fiber_inner(x, y) < -1.0 + 1e-8
        path = plan(x, y)
        assert path.piece == 1
        assert len(path.segments) == 4
        assert fiber_distance(path.at(1.0), y) < 1e-12

    def test_gauge_invariance(self):
        z = random_rep(2)
        x, y = random_point(z), random_point(z)
        lam = complex(math.cos(0.77), math.sin(0.77))
        z2 = ProjectiveRep(lam * z.z)
        x2 = BundlePoint(z2, x.w, x.s)
        y2 = BundlePoint(z2, y.w, y.s)
        a, b = plan(x, y), plan(x2, y2)
        for t in np.linspace(0.0, 1.0, 33):
            assert fiber_distance(a.at(t), b.at(t)) < 1e-9

    def test_gauge_invariance_on_pole_piece(self):
        z = random_rep(2)
        lam = complex(math.cos(2.1), math.sin(2.1))
        sigma = BundlePoint.section_point(z)
        sigma2 = BundlePoint.section_point(ProjectiveRep(lam * z.z))
        a = plan(sigma, sigma.antipode())
        b = plan(sigma2, sigma2.antipode())
        for t in np.linspace(0.0, 1.0, 17):
            assert fiber_distance(a.at(t), b.at(t)) < 1e-9

    def test_random_pairs_keep_invariants(self):
        for n in (1, 2, 3):
            for _ in range(60):
                z = random_rep(n)
                x, y = random_point(z), random_point(z)
                path = plan(x, y)
                assert fiber_distance(path.at(0.0), x) < 1e-9
                assert fiber_distance(path.at(1.0), y) < 1e-9
                for point in path.sample(13):
                    norm = math.hypot(point.w_norm, point.s)
                    assert abs(norm - 1.0) < 1e-9
                    assert point.z.same_line(x.z)

    def test_different_fibers_rejected(self):
        with pytest.raises(NotSameFiberError):
            plan(random_point(random_rep(2)), random_point(random_rep(2)))


class TestPlannedPath:
    def test_breakpoints_must_cover_unit_interval(self):
        z = random_rep(1)
        x = random_point(z)
        path = plan(x, x)
        with pytest.raises(ValueError):
            PlannedPath(0, z, path.segments, (0.0, 0.5), x, x)

    def test_sample_counts(self):
        z = random_rep(1)
        path = plan(random_point(z), random_point(z))
        assert len(path.sample(7)) == 7
        with pytest.raises(ValueError):
            path.sample(1)
