import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slagquad import (
    AmbientPoint,
    BranchAmbiguityError,
    CaseKind,
    Chart,
    DomainError,
    QuadricSpec,
    SingularImmersionError,
    SphereConfig,
    evaluate_immersion,
    frame_tangency_residual,
    immersion_frame,
    make_chart,
    random_sphere_config,
    sphere_tangent_frame,
    sqrt_branch_continue,
)

finite = st.floats(-3, 3, allow_nan=False)


class TestQuadricSpec:
    def test_canonical_cases(self):
        assert QuadricSpec.flat(3).P(2.0) == 4.0
        assert QuadricSpec.sphere(3).P(2.0) == -3.0
        assert QuadricSpec.sphere(4).case_kind is CaseKind.SPHERE

    def test_trailing_zeros_trimmed(self):
        spec = QuadricSpec.general(3, [1, 2, 0, 0])
        assert spec.p_coeffs == (1, 2)

    @pytest.mark.parametrize("n", [1, 0, -2, 2.5])
    def test_bad_dimension(self, n):
        with pytest.raises(DomainError):
            QuadricSpec.flat(n)

    def test_degree_and_zero_polynomial(self):
        with pytest.raises(DomainError):
            QuadricSpec.general(2, [1, 0, 0, 0, 0, 1])
        with pytest.raises(DomainError):
            QuadricSpec.general(2, [0, 0])

    def test_case_kind_must_match_coefficients(self):
        with pytest.raises(DomainError):
            QuadricSpec(3, (1, 0, 1), CaseKind.SPHERE)

    def test_roots(self):
        assert np.allclose(sorted(QuadricSpec.sphere(2).roots().real), [-1, 1])
        assert QuadricSpec.general(2, [5]).roots().size == 0


class TestCharts:
    def test_identity_for_e0(self):
        assert make_chart([1.0, 0, 0]).is_identity

    @given(st.lists(finite, min_size=3, max_size=6).filter(lambda v: np.linalg.norm(v) > 1e-3))
    def test_rotation_maps_e0_to_p(self, v):
        p = np.asarray(v) / np.linalg.norm(v)
        ch = make_chart(p)
        e0 = np.zeros(p.size)
        e0[0] = 1
        assert np.allclose(ch.rotation @ e0, p, atol=1e-12)
        assert np.allclose(ch.rotation.T @ ch.rotation, np.eye(p.size), atol=1e-12)
        assert np.isclose(np.linalg.det(ch.rotation), 1.0)

    def test_antipode(self):
        ch = make_chart([-1.0, 0, 0, 0])
        assert np.allclose(ch.rotation[:, 0], [-1, 0, 0, 0])
        assert np.isclose(np.linalg.det(ch.rotation), 1.0)

    def test_non_unit_rejected(self):
        with pytest.raises(DomainError):
            make_chart([2.0, 0, 0])

    def test_rotated_chart_rejected_off_sphere(self):
        cfg = sphere_tangent_frame([1.0, 0.0])
        with pytest.raises(DomainError):
            evaluate_immersion(QuadricSpec.flat(2), 1.0, 1.0, cfg, make_chart([0.0, 1.0, 0.0]))


class TestSphereConfig:
    @given(st.lists(finite, min_size=2, max_size=7).filter(lambda v: np.linalg.norm(v) > 1e-3))
    def test_householder_frame_orthonormal(self, v):
        x = np.asarray(v) / np.linalg.norm(v)
        cfg = sphere_tangent_frame(x)
        basis = np.vstack([cfg.x, cfg.frame])
        assert np.allclose(basis @ basis.T, np.eye(x.size), atol=1e-12)

    def test_rejects_non_orthonormal(self):
        with pytest.raises(DomainError):
            SphereConfig(np.array([1.0, 0, 0]), np.array([[0, 1.0, 0], [0, 1.0, 0]]))
        with pytest.raises(DomainError):
            SphereConfig(np.array([1.0, 1.0]), np.array([[1.0, -1.0]]))


class TestBranch:
    def test_picks_nearest_root(self):
        assert sqrt_branch_continue(-1j, -1.0001) == pytest.approx(-cmath.sqrt(-1.0001))

    def test_zero_radicand_and_ambiguity(self):
        assert sqrt_branch_continue(1.0, 0.0) == 0
        with pytest.raises(BranchAmbiguityError):
            sqrt_branch_continue(0.0, 1.0)
        # previous = i is equidistant from the roots +-1 of radicand 1
        with pytest.raises(BranchAmbiguityError):
            sqrt_branch_continue(1j, 1.0)

    def test_monodromy_around_plus_one(self):
        # continue sqrt(1 - g^2) once around g = 1: the sign flips
        t = np.linspace(0, 2 * np.pi, 400)
        path = 1 + 0.5 * np.exp(1j * t)
        root = cmath.sqrt(1 - path[0] ** 2)
        start = root
        for g in path[1:]:
            root = sqrt_branch_continue(root, 1 - g * g)
        assert root == pytest.approx(-start, abs=1e-12)

    def test_no_monodromy_around_both_roots(self):
        t = np.linspace(0, 2 * np.pi, 800)
        path = 2.0 * np.exp(1j * t)
        root = start = cmath.sqrt(1 - path[0] ** 2)
        for g in path[1:]:
            root = sqrt_branch_continue(root, 1 - g * g)
        assert root == pytest.approx(start, abs=1e-12)


class TestImmersion:
    @pytest.mark.parametrize("spec", [QuadricSpec.flat(3), QuadricSpec.sphere(4), QuadricSpec.general(3, [1, -2, 0.5, 1])])
    def test_membership_and_tangency(self, spec):
        rng = np.random.default_rng(3)
        worst_point = worst_frame = 0.0
        for _ in range(200):
            g = complex(*rng.uniform(-2.5, 2.5, 2))
            gd = complex(*rng.normal(size=2))
            r = cmath.sqrt(complex(spec.P(g)))
            cfg = random_sphere_config(spec.n, rng)
            point = evaluate_immersion(spec, g, r, cfg)
            frame = immersion_frame(spec, g, gd, r, cfg)
            worst_point = max(worst_point, point.residual(spec))
            worst_frame = max(worst_frame, frame_tangency_residual(spec, point, frame))
        assert worst_point < 1e-10
        assert worst_frame < 1e-10

    def test_rotated_chart_stays_on_sphere(self):
        rng = np.random.default_rng(9)
        spec = QuadricSpec.sphere(3)
        p = rng.normal(size=4)
        chart = make_chart(p / np.linalg.norm(p))
        g = 0.3 + 1.1j
        cfg = random_sphere_config(3, rng)
        point = evaluate_immersion(spec, g, cmath.sqrt(1 - g * g), cfg, chart)
        frame = immersion_frame(spec, g, 1.0, cmath.sqrt(1 - g * g), cfg, chart)
        assert point.residual(spec) < 1e-12
        assert frame_tangency_residual(spec, point, frame) < 1e-12

    def test_real_segment_gives_real_sphere(self):
        spec = QuadricSpec.sphere(2)
        cfg = sphere_tangent_frame([0.6, 0.8])
        point = evaluate_immersion(spec, 0.28, 0.96, cfg)
        assert np.allclose(point.z.imag, 0)
        assert np.isclose(np.sum(point.z.real**2), 1.0)

    def test_wrong_branch_rejected(self):
        cfg = sphere_tangent_frame([1.0, 0.0])
        with pytest.raises(DomainError):
            evaluate_immersion(QuadricSpec.sphere(2), 0.5, 0.5, cfg)

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            evaluate_immersion(QuadricSpec.sphere(3), 0.0, 1.0, sphere_tangent_frame([1.0, 0.0]))

    def test_singular_frame_at_root(self):
        cfg = sphere_tangent_frame([1.0, 0.0, 0.0])
        with pytest.raises(SingularImmersionError):
            immersion_frame(QuadricSpec.sphere(3), 1.0, 1.0, 0.0, cfg)

    def test_residual_detects_off_quadric(self):
        assert AmbientPoint(np.array([1.0, 1.0, 0.0])).residual(QuadricSpec.sphere(2)) > 0.1

    def test_chart_roundtrip(self):
        ch = make_chart(np.array([0.0, 0.6, 0.8]))
        v = np.array([1 + 2j, 3j, -1.0])
        assert np.allclose(ch.from_chart(ch.to_chart(v)), v)
        assert Chart.identity(2).is_identity

    @settings(max_examples=50)
    @given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
    def test_membership_property(self, g):
        spec = QuadricSpec.sphere(3)
        cfg = sphere_tangent_frame(np.array([0.0, 0.6, 0.8]))
        point = evaluate_immersion(spec, g, cmath.sqrt(1 - g * g), cfg)
        assert point.residual(spec) < 1e-10
