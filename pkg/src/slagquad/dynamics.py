r"""Profile-curve dynamics of the special Lagrangian condition.

Along a special Lagrangian profile curve the quantity ``gamma' * w(gamma)`` is
real, where

* flat case ``P = z^2``: ``w = gamma^(n-1)``,
* complex sphere ``P = 1 - z^2``: ``w = sqrt(1 - gamma^2)^(n-2)``.

Each case has a holomorphic primitive ``G`` with ``G' = w`` (``G' = n w`` in
the flat case), so ``F = Im G`` is a first integral. For odd ``n`` on the
sphere ``G`` involves the continued square root and ``arcsin``; the square
root branch is carried along each traced curve.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from math import comb, inf

import numpy as np

from .errors import BranchAmbiguityError, DomainError, TraceError
from .quadric import CaseKind, QuadricSpec, sqrt_branch_continue

__all__ = [
    "Classification",
    "Location",
    "FirstIntegralSpec",
    "PhaseCurve",
    "TraceControls",
    "antiderivative_coefficients",
    "primitive",
    "first_integral",
    "integral_scale",
    "scaled_drift",
    "weight",
    "direction_field",
    "project_to_level",
    "trace_curve",
    "trace_through",
    "seed_on_level",
    "singular_set",
    "classify_curve",
    "asymptote_angles",
    "near_singularity_level",
    "curve_from_points",
]

LEVEL_ZERO_TOL = 1e-9
LEVEL_TOL = 1e-6
# rounding allowance, in units of eps times the primitive's term magnitudes
ROUNDING_ULPS = 1e3


class Classification(str, Enum):
    REAL_SEGMENT = "RealSegment"
    SINGULAR_BRANCH = "SingularBranch"
    SMOOTH_TWO_ENDED = "SmoothTwoEnded"
    LAGRANGIAN_PLANE_LINE = "LagrangianPlaneLine"
    CATENOID = "Catenoid"


class Location(str, Enum):
    INFINITY = "infinity"
    PLUS_ONE = "plus_one"
    MINUS_ONE = "minus_one"


def _horner(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


@dataclass(frozen=True)
class FirstIntegralSpec:
    """Exact (rational) data of the first integral for one ``(case, n)``.

    ``q_coeffs`` (even sphere) and ``r_coeffs`` (odd sphere) are in ascending
    powers. The flat case only needs ``flat_exponent = n``.
    """

    case: CaseKind
    n: int
    q_coeffs: tuple[Fraction, ...] = ()
    r_coeffs: tuple[Fraction, ...] = ()
    a_const: Fraction = Fraction(0)
    flat_exponent: int = 0
    _q: tuple[float, ...] = field(default=(), repr=False, compare=False)
    _r: tuple[float, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_q", tuple(float(c) for c in self.q_coeffs))
        object.__setattr__(self, "_r", tuple(float(c) for c in self.r_coeffs))

    @property
    def odd_sphere(self) -> bool:
        return self.case is CaseKind.SPHERE and self.n % 2 == 1

    @property
    def quadric(self) -> QuadricSpec:
        return QuadricSpec.sphere(self.n) if self.case is CaseKind.SPHERE else QuadricSpec.flat(self.n)

    def radicand(self, gamma: complex) -> complex:
        """``P(gamma)``, whose continued square root is the curve's branch state."""
        return 1.0 - gamma * gamma if self.case is CaseKind.SPHERE else gamma * gamma

    def singular_points(self) -> tuple[complex, ...]:
        if self.case is CaseKind.FLAT:
            return (0j,)
        return () if self.n == 2 else (1 + 0j, -1 + 0j)


def antiderivative_coefficients(n: int, case: CaseKind) -> FirstIntegralSpec:
    """Rational primitive data for the weight ``w``.

    Even sphere: ``Q(z) = sum_k C(m, k) (-1)^k z^(2k+1) / (2k+1)`` with ``m = n/2 - 1``.
    Odd sphere: the recurrence for ``I_m = integral of (1 - z^2)^(m/2)``,

        I_m = (z (1 - z^2)^(m/2) + m I_(m-2)) / (m + 1),  I_(-1) = arcsin z,

    written as ``I_m = z sqrt(1 - z^2) R_m(z) + A_m arcsin z``.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    case = CaseKind(case)
    if case is CaseKind.FLAT:
        return FirstIntegralSpec(case, n, flat_exponent=n)
    if case is not CaseKind.SPHERE:
        raise DomainError("profile dynamics exist only for the flat and sphere cases")
    if n % 2 == 0:
        m = n // 2 - 1
        q = [Fraction(0)] * (2 * m + 2)
        for k in range(m + 1):
            q[2 * k + 1] = Fraction(comb(m, k) * (-1) ** k, 2 * k + 1)
        return FirstIntegralSpec(case, n, q_coeffs=tuple(q))
    r: list[Fraction] = []
    a = Fraction(1)
    for m in range(1, n - 1, 2):
        # (1 - z^2)^((m-1)/2) in ascending powers
        k_max = (m - 1) // 2
        lead = [Fraction(0)] * (2 * k_max + 1)
        for k in range(k_max + 1):
            lead[2 * k] = Fraction(comb(k_max, k) * (-1) ** k)
        size = max(len(lead), len(r))
        r = [
            ((lead[i] if i < len(lead) else 0) + m * (r[i] if i < len(r) else 0)) / (m + 1)
            for i in range(size)
        ]
        a = a * m / (m + 1)
    return FirstIntegralSpec(case, n, r_coeffs=tuple(r), a_const=a)


def _check_root(fi: FirstIntegralSpec, gamma: complex, root) -> complex:
    if root is None:
        raise DomainError("odd sphere case needs the continued root sqrt(1 - gamma^2)")
    root = complex(root)
    rad = 1.0 - gamma * gamma
    if abs(root * root - rad) > 1e-8 * max(1.0, abs(rad)):
        raise DomainError(f"root {root!r} is not a square root of 1 - gamma^2 = {rad!r}")
    return root


def primitive(fi: FirstIntegralSpec, gamma: complex, root: complex | None = None) -> complex:
    """Holomorphic primitive ``G`` whose imaginary part is the first integral.

    ``arcsin`` is evaluated as ``-i log(i gamma + root)`` so that it follows the
    curve's square root branch; the logarithm's own branch only affects ``Re G``.
    """
    gamma = complex(gamma)
    if fi.case is CaseKind.FLAT:
        return gamma**fi.n
    if not fi.odd_sphere:
        return _horner(fi._q, gamma)
    root = _check_root(fi, gamma, root)
    return gamma * root * _horner(fi._r, gamma) - 1j * float(fi.a_const) * cmath.log(1j * gamma + root)


def first_integral(fi: FirstIntegralSpec, gamma: complex, root: complex | None = None) -> float:
    """``Im(gamma^n)``, ``Im Q(gamma)`` or ``Im(gamma sqrt(1-gamma^2) R(gamma) + A arcsin gamma)``."""
    return primitive(fi, gamma, root).imag


def integral_scale(fi: FirstIntegralSpec, gamma: complex, root: complex | None = None) -> float:
    """Sum of the magnitudes of the terms of the primitive at ``gamma``.

    The rounding error of :func:`first_integral` is a small multiple of
    ``eps`` times this; for large ``|gamma|`` it dominates any absolute tolerance.
    """
    a = abs(complex(gamma))
    if fi.case is CaseKind.FLAT:
        return a**fi.n
    if not fi.odd_sphere:
        return float(sum(abs(c) * a**k for k, c in enumerate(fi._q)))
    root = _check_root(fi, complex(gamma), root)
    poly = sum(abs(c) * a**k for k, c in enumerate(fi._r))
    return float(a * abs(root) * poly + float(fi.a_const) * abs(cmath.log(1j * gamma + root)))


def scaled_drift(fi: FirstIntegralSpec, curve: "PhaseCurve") -> float:
    """Largest ``|F - level| / (1 + |level| + integral_scale)`` along ``curve``."""
    worst = 0.0
    for g, r in zip(curve.points, curve.roots):
        r = r if fi.odd_sphere else None
        dev = abs(first_integral(fi, g, r) - curve.level)
        worst = max(worst, dev / (1.0 + abs(curve.level) + integral_scale(fi, g, r)))
    return worst


def weight(fi: FirstIntegralSpec, gamma: complex, root: complex | None = None) -> complex:
    """``w(gamma)``: ``gamma^(n-1)`` (flat) or ``sqrt(1 - gamma^2)^(n-2)`` (sphere)."""
    gamma = complex(gamma)
    if fi.case is CaseKind.FLAT:
        return gamma ** (fi.n - 1)
    if fi.odd_sphere:
        return _check_root(fi, gamma, root) ** (fi.n - 2)
    return (1.0 - gamma * gamma) ** (fi.n // 2 - 1)


def _gradient(fi: FirstIntegralSpec, w: complex) -> complex:
    # d/dx F + i d/dy F for F = Im G, G' = w (n w in the flat case)
    g = fi.n * w if fi.case is CaseKind.FLAT else w
    return 1j * g.conjugate()


def direction_field(fi: FirstIntegralSpec, gamma: complex, root: complex | None = None) -> complex:
    """Unit tangent ``conj(w) / |w|`` of the special Lagrangian profile curves."""
    w = weight(fi, gamma, root)
    if w == 0:
        raise DomainError(f"gamma = {gamma!r} is a singular point of the direction field")
    return w.conjugate() / abs(w)


@dataclass(frozen=True)
class TraceControls:
    """Step and stopping parameters for :func:`trace_curve`.

    ``relative_step`` lets the step grow like ``max_step * |gamma|`` once
    ``|gamma| > 1``; curves are nearly straight there.
    """

    max_step: float = 0.05
    min_step: float = 1e-10
    tol: float = 1e-9
    stop_radius: float = 100.0
    standoff: float = 1e-4
    max_steps: int = 200_000
    max_length: float = inf
    bounds: tuple[float, float, float, float] | None = None
    relative_step: bool = False


@dataclass(frozen=True)
class PhaseCurve:
    """A traced profile curve with its branch state.

    ``branch_values`` holds ``w`` at each point, ``roots`` the continued
    ``sqrt(P(gamma))`` and ``tangents`` the unit direction of travel.
    ``termination`` records why each end stopped.
    """

    case: CaseKind
    n: int
    points: np.ndarray
    branch_values: np.ndarray
    roots: np.ndarray
    tangents: np.ndarray
    arclength: np.ndarray
    level: float
    drift: float
    classification: Classification | None = None
    termination: tuple[str, ...] = ()

    def __len__(self):
        return len(self.points)


def _advance_root(fi: FirstIntegralSpec, root: complex, gamma: complex) -> complex:
    rad = fi.radicand(gamma)
    if fi.odd_sphere:
        return sqrt_branch_continue(root, rad)
    try:
        return sqrt_branch_continue(root, rad)
    except BranchAmbiguityError:
        # the root is informational here; the dynamics do not depend on its sign
        return cmath.sqrt(rad)


def project_to_level(
    fi: FirstIntegralSpec, gamma: complex, root: complex, level: float, tol: float = 1e-13, max_iter: int = 30
) -> tuple[complex, complex]:
    """Newton iteration along the gradient of the first integral onto ``{F = level}``."""
    for _ in range(max_iter):
        w = weight(fi, gamma, root if fi.odd_sphere else None)
        resid = level - first_integral(fi, gamma, root)
        if abs(resid) <= tol * (1.0 + abs(level)):
            return gamma, root
        g = _gradient(fi, w)
        if g == 0:
            raise TraceError(f"gradient of the first integral vanishes at {gamma!r}")
        delta = resid * g / abs(g) ** 2
        if abs(delta) <= 1e-15 * (1.0 + abs(gamma)):
            # below roundoff of the position: F itself cannot be resolved further
            return gamma, root
        gamma = gamma + delta
        root = _advance_root(fi, root, gamma)
    raise TraceError(f"projection onto level {level} did not converge from {gamma!r}")


def _singular_distance(fi: FirstIntegralSpec, gamma: complex) -> float:
    pts = fi.singular_points()
    return min(abs(gamma - p) for p in pts) if pts else inf


_BS_A = ((0.5,), (0.0, 0.75))


def trace_curve(
    fi: FirstIntegralSpec,
    start: complex,
    orientation: int = 1,
    controls: TraceControls | None = None,
    level: float | None = None,
    root: complex | None = None,
) -> PhaseCurve:
    """Integrate ``gamma' = orientation * conj(w)/|w|`` from ``start``.

    Uses an embedded Bogacki-Shampine 3(2) pair with nearest-branch
    continuation of the root at every stage. After each accepted step the
    point is pulled back onto the level set by Newton's method along the
    gradient of the first integral. If ``level`` is given, ``start`` is first
    projected onto it.

    Tracing stops at ``|gamma| >= stop_radius``, within ``standoff`` of a
    singular point, outside ``bounds``, or when the step or length budgets run
    out.
    """
    ctl = TraceControls() if controls is None else controls
    if orientation not in (1, -1):
        raise DomainError("orientation must be +1 or -1")
    gamma = complex(start)
    if _singular_distance(fi, gamma) <= ctl.standoff:
        raise TraceError(f"start {gamma!r} lies within the standoff of a singular point")
    root = cmath.sqrt(fi.radicand(gamma)) if root is None else complex(root)
    if level is None:
        level = first_integral(fi, gamma, root)
    else:
        gamma, root = project_to_level(fi, gamma, root, level)
    level = float(level)

    def field_at(g, r):
        w = weight(fi, g, r if fi.odd_sphere else None)
        if w == 0:
            raise BranchAmbiguityError("stage landed on a singular point")
        return orientation * w.conjugate() / abs(w), w

    k1, w = field_at(gamma, root)
    pts, ws, roots, tans, ss = [gamma], [w], [root], [k1], [0.0]
    s = 0.0
    drift = abs(first_integral(fi, gamma, root) - level)
    h = ctl.max_step
    reason = "max_steps"
    steps = 0
    while steps < ctl.max_steps:
        hmax = ctl.max_step * (max(1.0, abs(gamma)) if ctl.relative_step else 1.0)
        hmax = min(hmax, 0.5 * _singular_distance(fi, gamma))
        h = min(h, hmax)
        if h < ctl.min_step:
            raise TraceError(f"step underflow at gamma = {gamma!r}")
        try:
            r2 = _advance_root(fi, root, gamma + h * 0.5 * k1)
            k2, _ = field_at(gamma + h * 0.5 * k1, r2)
            r3 = _advance_root(fi, r2, gamma + h * 0.75 * k2)
            k3, _ = field_at(gamma + h * 0.75 * k2, r3)
            new = gamma + h * (2.0 / 9.0 * k1 + 1.0 / 3.0 * k2 + 4.0 / 9.0 * k3)
            new_root = _advance_root(fi, r3, new)
            k4, _ = field_at(new, new_root)
        except BranchAmbiguityError:
            h *= 0.25
            continue
        alt = gamma + h * (7.0 / 24.0 * k1 + 0.25 * k2 + 1.0 / 3.0 * k3 + 0.125 * k4)
        err = abs(new - alt)
        if err > ctl.tol:
            h *= max(0.2, 0.9 * (ctl.tol / err) ** (1.0 / 3.0))
            continue
        try:
            corrected, corrected_root = project_to_level(fi, new, new_root, level, max_iter=4)
        except (TraceError, BranchAmbiguityError):
            h *= 0.25
            continue
        if abs(corrected - new) > 0.5 * h:
            # Newton correction diverged relative to the step
            h *= 0.25
            continue
        steps += 1
        s += abs(corrected - gamma)
        gamma, root = corrected, corrected_root
        k1, w = field_at(gamma, root)
        drift = max(drift, abs(first_integral(fi, gamma, root) - level))
        pts.append(gamma)
        ws.append(w)
        roots.append(root)
        tans.append(k1)
        ss.append(s)
        h *= min(5.0, 0.9 * (ctl.tol / err) ** (1.0 / 3.0)) if err > 0 else 5.0
        if abs(gamma) >= ctl.stop_radius:
            reason = "radius"
            break
        if _singular_distance(fi, gamma) <= ctl.standoff:
            reason = "singularity"
            break
        if ctl.bounds is not None:
            re0, re1, im0, im1 = ctl.bounds
            if not (re0 <= gamma.real <= re1 and im0 <= gamma.imag <= im1):
                reason = "bounds"
                break
        if s >= ctl.max_length:
            reason = "length"
            break
    curve = PhaseCurve(
        fi.case,
        fi.n,
        np.array(pts),
        np.array(ws),
        np.array(roots),
        np.array(tans),
        np.array(ss),
        level,
        float(drift),
        termination=(reason,),
    )
    return replace(curve, classification=classify_curve(fi, level, curve))


def trace_through(
    fi: FirstIntegralSpec,
    start: complex,
    controls: TraceControls | None = None,
    level: float | None = None,
) -> PhaseCurve:
    """Trace both ways from ``start`` and join the halves into one curve."""
    ctl = TraceControls() if controls is None else controls
    fwd = trace_curve(fi, start, 1, ctl, level)
    # restart the backward half from the projected start so both halves share a branch
    back = trace_curve(fi, fwd.points[0], -1, ctl, fwd.level, root=fwd.roots[0])
    curve = PhaseCurve(
        fi.case,
        fi.n,
        np.concatenate([back.points[::-1], fwd.points[1:]]),
        np.concatenate([back.branch_values[::-1], fwd.branch_values[1:]]),
        np.concatenate([back.roots[::-1], fwd.roots[1:]]),
        np.concatenate([-back.tangents[::-1], fwd.tangents[1:]]),
        np.concatenate([-back.arclength[::-1], fwd.arclength[1:]]),
        fwd.level,
        max(fwd.drift, back.drift),
        termination=(back.termination[0], fwd.termination[0]),
    )
    return replace(curve, classification=classify_curve(fi, curve.level, curve))


def seed_on_level(fi: FirstIntegralSpec, level: float) -> complex:
    """A point of ``{F = level}`` found on a ray where ``F`` is monotone.

    Sphere: the imaginary axis, where ``F(it) = integral_0^t (1 + s^2)^((n-2)/2) ds``.
    Flat: the ray ``arg = +-pi/(2n)``, where ``F = +-t^n``; level 0 gives ``1``.
    """
    from scipy.optimize import brentq

    level = float(level)
    if fi.case is CaseKind.FLAT:
        if level == 0:
            return 1 + 0j
        phase = cmath.exp(1j * math.copysign(math.pi / (2 * fi.n), level))
        return (abs(level) ** (1.0 / fi.n)) * phase
    if level == 0:
        return 0j

    def f(t):
        g = 1j * t
        return first_integral(fi, g, cmath.sqrt(1.0 - g * g)) - level

    hi = 1.0
    while f(math.copysign(hi, level)) * math.copysign(1.0, level) < 0:
        hi *= 2.0
    t = brentq(f, *sorted((0.0, math.copysign(hi, level))), xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return 1j * t


def _away_orientation(fi, seed, root, centre) -> int:
    d = direction_field(fi, seed, root if fi.odd_sphere else None)
    return 1 if (d * (seed - centre).conjugate()).real >= 0 else -1


def singular_set(fi: FirstIntegralSpec, controls: TraceControls | None = None) -> list[PhaseCurve]:
    """All level-0 curves: the segment and the branches leaving the singular points.

    Seeds are placed at distance ``2 * standoff`` from each singular point on
    the predicted departure rays, then projected onto level 0. For ``n = 2`` on
    the sphere the level-0 set is the real axis.
    """
    ctl = TraceControls() if controls is None else controls
    eps = 2.0 * ctl.standoff
    if fi.case is CaseKind.FLAT:
        centres = [(0j, [k * math.pi / fi.n for k in range(2 * fi.n)])]
    elif fi.n == 2:
        return [trace_through(fi, 0j, ctl, level=0.0)]
    else:
        plus = asymptote_angles(fi.case, fi.n, Location.PLUS_ONE)
        minus = [a for a in asymptote_angles(fi.case, fi.n, Location.MINUS_ONE) if min(a, 2 * math.pi - a) > 1e-9]
        centres = [(1 + 0j, plus), (-1 + 0j, minus)]
    curves = []
    for centre, angles in centres:
        for theta in angles:
            seed = centre + eps * cmath.exp(1j * theta)
            root = cmath.sqrt(fi.radicand(seed))
            seed, root = project_to_level(fi, seed, root, 0.0)
            orient = _away_orientation(fi, seed, root, centre)
            curves.append(trace_curve(fi, seed, orient, ctl, 0.0, root=root))
    return curves


def classify_curve(fi: FirstIntegralSpec, level: float, curve: PhaseCurve) -> Classification:
    """Flat: level 0 gives plane lines, otherwise catenoids. Sphere: real segment, singular branch, or smooth."""
    pts = np.asarray(curve.points)
    eps = np.finfo(float).eps
    for g, r in zip(pts, curve.roots):
        r = r if fi.odd_sphere else None
        allowed = LEVEL_TOL * (1.0 + abs(level)) + ROUNDING_ULPS * eps * integral_scale(fi, g, r)
        if abs(first_integral(fi, g, r) - level) > allowed:
            raise DomainError(f"curve does not lie on the stated level set near gamma = {complex(g)!r}")
    zero = abs(level) <= LEVEL_ZERO_TOL
    if fi.case is CaseKind.FLAT:
        return Classification.LAGRANGIAN_PLANE_LINE if zero else Classification.CATENOID
    if not zero:
        return Classification.SMOOTH_TWO_ENDED
    on_axis = len(pts) > 0 and np.all(np.abs(pts.imag) <= 1e-8)
    if on_axis and np.any(np.abs(pts.real) < 1.0):
        return Classification.REAL_SEGMENT
    return Classification.SINGULAR_BRANCH


def asymptote_angles(case: CaseKind, n: int, location: Location) -> list[float]:
    """Directions of the asymptotic half-lines, sorted in ``[0, 2 pi)``.

    At infinity (sphere) these are ``k pi/(n-1)`` for even ``n`` and
    ``k pi/(n-1) + pi/(2(n-1))`` for odd ``n``, ``k = 1..2n-2``; for the flat case
    ``k pi/n``, ``k = 1..2n``. Near ``+1`` the level-0 branches leave along
    ``arg(gamma - 1) = 2 k pi/n + pi``; near ``-1`` the picture is mirrored by
    ``z -> -conj(z)``, measured as ``arg(gamma + 1)``.
    """
    case, location = CaseKind(case), Location(location)
    two_pi = 2.0 * math.pi
    if case is CaseKind.FLAT:
        if location is not Location.INFINITY:
            raise DomainError("the flat case has no singular points at +-1")
        angles = [k * math.pi / n for k in range(1, 2 * n + 1)]
    elif case is CaseKind.SPHERE:
        if location is Location.INFINITY:
            shift = 0.0 if n % 2 == 0 else math.pi / (2 * (n - 1))
            angles = [k * math.pi / (n - 1) + shift for k in range(1, 2 * n - 1)]
        else:
            if n < 3:
                raise DomainError("for n = 2 the direction field has no singular points")
            angles = [2 * k * math.pi / n + math.pi for k in range(1, n + 1)]
            if location is Location.MINUS_ONE:
                angles = [math.pi - a for a in angles]
    else:
        raise DomainError("no asymptotic analysis for general polynomials")
    out = sorted({round(a % two_pi, 15) % two_pi for a in angles})
    return [float(a) for a in out]


def near_singularity_level(n: int, y: complex) -> float:
    """Local model ``Im(-(1/n) (-2y)^(n/2))`` of the first integral at ``gamma = 1 + y``."""
    return (-(1.0 / n) * complex(-2.0 * y) ** (n / 2.0)).imag


def curve_from_points(fi: FirstIntegralSpec, points, level: float | None = None) -> PhaseCurve:
    """Wrap arbitrary samples as a :class:`PhaseCurve` (tangents by finite differences).

    Used to feed non-solutions to the verifiers.
    """
    pts = np.asarray(points, dtype=complex)
    roots = [cmath.sqrt(fi.radicand(pts[0]))]
    for g in pts[1:]:
        roots.append(_advance_root(fi, roots[-1], g))
    roots = np.array(roots)
    ws = np.array([weight(fi, g, r if fi.odd_sphere else None) for g, r in zip(pts, roots)])
    tans = np.gradient(pts)
    tans = tans / np.abs(tans)
    vals = np.array([first_integral(fi, g, r) for g, r in zip(pts, roots)])
    level = float(vals[0]) if level is None else float(level)
    s = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(pts)))])
    return PhaseCurve(fi.case, fi.n, pts, ws, roots, tans, s, level, float(np.max(np.abs(vals - level))))
