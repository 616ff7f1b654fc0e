"""Whole phase portraits: every level curve crossing a window, plus the singular level-0 set."""

from __future__ import annotations

import cmath
import logging
from dataclasses import replace

import numpy as np
from scipy.optimize import brentq

from . import dynamics as dyn
from .contour import Window
from .errors import BranchAmbiguityError, SlagError
from .quadric import CaseKind, sqrt_branch_continue

__all__ = ["auto_levels", "boundary_seeds", "phase_portrait"]

log = logging.getLogger(__name__)

AUTO_LEVELS = (0.25, 0.5, 1.0, 2.0)


def auto_levels(fi: dyn.FirstIntegralSpec) -> list[float]:
    """``0`` and ``+-{0.25, 0.5, 1, 2}`` times the first integral at the unit seed point.

    The unit seed point is ``i`` on the sphere and ``exp(i pi/(2n))`` in the
    flat case, where the first integral is positive and of natural size.
    """
    if fi.case is CaseKind.FLAT:
        scale = 1.0
    else:
        scale = dyn.first_integral(fi, 1j, cmath.sqrt(2.0))
    levels = [0.0] + [s * c * scale for c in AUTO_LEVELS for s in (1.0, -1.0)]
    return sorted(levels)


def _perimeter(window: Window, count: int) -> np.ndarray:
    a = complex(window.re_min, window.im_min)
    b = complex(window.re_max, window.im_min)
    c = complex(window.re_max, window.im_max)
    d = complex(window.re_min, window.im_max)
    per_side = max(4, count // 4)
    t = np.linspace(0.0, 1.0, per_side, endpoint=False)
    return np.concatenate([a + (b - a) * t, b + (c - b) * t, c + (d - c) * t, d + (a - d) * t, [a]])


def boundary_seeds(fi: dyn.FirstIntegralSpec, level: float, window: Window) -> list[tuple[complex, complex]]:
    """Points of ``{F = level}`` on the window boundary with their continued roots.

    The boundary is sampled counter-clockwise at ``4 * grid`` points, the root
    is continued along it, and each sign change is refined by Brent's method.
    """
    pts = _perimeter(window, 4 * window.grid)
    roots = [cmath.sqrt(fi.radicand(pts[0]))]
    for g in pts[1:]:
        try:
            roots.append(sqrt_branch_continue(roots[-1], fi.radicand(g)))
        except BranchAmbiguityError:
            roots.append(cmath.sqrt(fi.radicand(g)))
    vals = np.array([dyn.first_integral(fi, g, r) for g, r in zip(pts, roots)]) - level
    seeds = []
    for k in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
        a, b, r0 = pts[k], pts[k + 1], roots[k]

        def f(t):
            g = a + t * (b - a)
            return dyn.first_integral(fi, g, sqrt_branch_continue(r0, fi.radicand(g))) - level

        t = brentq(f, 0.0, 1.0, xtol=1e-14)
        g = a + t * (b - a)
        seeds.append((g, sqrt_branch_continue(r0, fi.radicand(g))))
    return seeds


def _inward_orientation(fi, seed, root, window: Window) -> int | None:
    d = dyn.direction_field(fi, seed, root if fi.odd_sphere else None)
    centre = complex(0.5 * (window.re_min + window.re_max), 0.5 * (window.im_min + window.im_max))
    tol = 1e-9 * window.cell
    normals = []
    if abs(seed.real - window.re_min) < tol:
        normals.append(1.0)
    if abs(seed.real - window.re_max) < tol:
        normals.append(-1.0)
    if abs(seed.imag - window.im_min) < tol:
        normals.append(1j)
    if abs(seed.imag - window.im_max) < tol:
        normals.append(-1j)
    normal = sum(normals) if normals else centre - seed
    dot = (d * np.conj(normal)).real
    if abs(dot) < 1e-12:
        return None
    return 1 if dot > 0 else -1


def phase_portrait(
    fi: dyn.FirstIntegralSpec,
    levels: list[float],
    window: Window,
    controls: dyn.TraceControls | None = None,
) -> list[dyn.PhaseCurve]:
    """Traced curves for each level, ordered by level then seed index.

    Nonzero levels are seeded on the window boundary and traced inward until
    they leave the window; a seed lying on an already traced curve is
    skipped. Level 0 is the singular set, seeded at the singular points.
    """
    base = dyn.TraceControls() if controls is None else controls
    ctl = replace(base, bounds=window.bounds)
    curves: list[dyn.PhaseCurve] = []
    for level in sorted(levels):
        if abs(level) <= dyn.LEVEL_ZERO_TOL:
            found = [c for c in dyn.singular_set(fi, ctl) if len(c) > 1]
            curves.extend(found)
            log.info("level 0: %d singular curves", len(found))
            continue
        seeds = boundary_seeds(fi, level, window)
        used = [False] * len(seeds)
        count = 0
        for idx, (seed, root) in enumerate(seeds):
            if used[idx]:
                continue
            used[idx] = True
            orient = _inward_orientation(fi, seed, root, window)
            if orient is None:
                continue
            try:
                curve = dyn.trace_curve(fi, seed, orient, ctl, level, root=root)
            except SlagError as exc:
                log.warning("level %g seed %s: %s", level, seed, exc)
                continue
            for j in range(idx + 1, len(seeds)):
                if not used[j] and np.min(np.abs(curve.points - seeds[j][0])) <= 2.0 * ctl.max_step:
                    used[j] = True
            curves.append(curve)
            count += 1
        log.info("level %g: %d curves from %d boundary seeds", level, count, len(seeds))
    return curves
