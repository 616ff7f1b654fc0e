import numpy as np
import pytest

from slagquad import (
    CaseKind,
    Classification,
    DomainError,
    TraceControls,
    Window,
    antiderivative_coefficients,
    auto_levels,
    contour_extract,
    directed_hausdorff,
    phase_portrait,
    seed_on_level,
    trace_through,
)
from slagquad.contour import _join, densify, level_grid
from slagquad.portrait import boundary_seeds


class TestWindow:
    def test_validation(self):
        with pytest.raises(DomainError):
            Window(1, 0, 0, 1)
        with pytest.raises(DomainError):
            Window(0, 1, 0, 1, grid=8)
        w = Window.square(3, 600)
        assert w.cell == pytest.approx(0.01)
        assert w.bounds == (-3, 3, -3, 3)


class TestContour:
    def test_hyperbola_level_flat(self):
        # Im(z^2) = 2xy = 1: two hyperbola branches
        fi = antiderivative_coefficients(2, CaseKind.FLAT)
        lines = contour_extract(fi, 1.0, Window.square(3, 200))
        assert len(lines) == 2
        for line in lines:
            assert np.max(np.abs(2 * line.real * line.imag - 1)) < 0.05

    def test_grid_values(self):
        fi = antiderivative_coefficients(4, CaseKind.SPHERE)
        xs, ys, vals = level_grid(fi, Window(-1, 1, -1, 1, 16))
        assert vals.shape == (17, 17)
        z = xs[3] + 1j * ys[5]
        assert vals[5, 3] == pytest.approx((z - z**3 / 3).imag)

    def test_odd_sphere_unsupported(self):
        with pytest.raises(DomainError):
            contour_extract(antiderivative_coefficients(3, CaseKind.SPHERE), 0.5, Window.square(3, 32))

    def test_empty_level(self):
        fi = antiderivative_coefficients(2, CaseKind.FLAT)
        assert contour_extract(fi, 100.0, Window.square(1, 32)) == []

    def test_single_open_chain(self):
        fi = antiderivative_coefficients(2, CaseKind.FLAT)
        lines = contour_extract(fi, 1.0, Window(0.2, 3, 0.2, 3, 100))
        assert len(lines) == 1 and len(lines[0]) > 50

    def test_join_closes_loops(self):
        ring = {0: [1, 3], 1: [0, 2], 2: [1, 3], 3: [2, 0]}
        chains = _join(ring)
        assert len(chains) == 1 and chains[0][0] == chains[0][-1] and len(chains[0]) == 5

    @pytest.mark.parametrize("case,n", [(CaseKind.SPHERE, 4), (CaseKind.FLAT, 3)])
    def test_trace_agrees_with_contour(self, case, n):
        fi = antiderivative_coefficients(n, case)
        window = Window.square(3, 400)
        curve = trace_through(fi, seed_on_level(fi, 0.5), TraceControls(bounds=window.bounds), 0.5)
        lines = contour_extract(fi, 0.5, window)
        assert directed_hausdorff(curve.points, lines) < 2 * window.cell


class TestPortrait:
    def test_auto_levels(self):
        levels = auto_levels(antiderivative_coefficients(3, CaseKind.FLAT))
        assert levels == sorted([0.0, 0.25, -0.25, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0])
        sphere = auto_levels(antiderivative_coefficients(4, CaseKind.SPHERE))
        assert len(sphere) == 9 and 0.0 in sphere

    def test_boundary_seeds_on_level(self):
        fi = antiderivative_coefficients(4, CaseKind.SPHERE)
        seeds = boundary_seeds(fi, 0.5, Window.square(3, 100))
        assert len(seeds) == 6
        for g, r in seeds:
            assert (g - g**3 / 3).imag == pytest.approx(0.5, abs=1e-10)

    @pytest.mark.parametrize("n,per_level", [(4, 3), (5, 4), (6, 5)])
    def test_sphere_portrait_counts(self, n, per_level):
        fi = antiderivative_coefficients(n, CaseKind.SPHERE)
        curves = phase_portrait(fi, [-0.5, 0.0, 0.5], Window.square(3, 100))
        kinds = [c.classification for c in curves]
        assert kinds.count(Classification.REAL_SEGMENT) == 1
        assert kinds.count(Classification.SINGULAR_BRANCH) == 2 * n - 2
        assert sum(1 for c in curves if c.level == 0.5) == per_level
        assert sum(1 for c in curves if c.level == -0.5) == per_level
        assert all(c.drift < 1e-8 for c in curves)

    def test_sphere_n2_portrait_is_horizontal(self):
        fi = antiderivative_coefficients(2, CaseKind.SPHERE)
        curves = phase_portrait(fi, auto_levels(fi), Window.square(3, 100))
        assert len(curves) == 9
        for c in curves:
            assert np.ptp(c.points.imag) < 1e-9


class TestHausdorff:
    def test_densify(self):
        d = densify(np.array([0, 1, 1 + 1j]), 0.25)
        assert len(d) == 9 and np.max(np.abs(np.diff(d))) <= 0.25 + 1e-15

    def test_segment_distance(self):
        line = [np.array([0.0, 1.0])]
        assert directed_hausdorff(np.array([0.5 + 0.1j]), line) == pytest.approx(abs(0.5 + 0.1j))
        assert directed_hausdorff(np.array([0.5 + 0.1j]), line, spacing=1e-3) == pytest.approx(0.1, abs=1e-3)
