r"""Complex quadrics :math:`Q = \{P(z_0) = \sum_{j\ge1} z_j^2\}` and the SO(n)-invariant ansatz.

The immersion of a profile curve :math:`\gamma` is

.. math::

    X(s, x) = A_p\,(\gamma(s),\ \sqrt{P(\gamma(s))}\,x_1, \dots, \sqrt{P(\gamma(s))}\,x_n),

where :math:`x \in S^{n-1}` and :math:`A_p \in SO(n+1)` sends :math:`e_0` to ``p``.
Only the complex sphere (``P = 1 - z^2``) is invariant under the rotation, so
charts other than the identity are accepted for that case only.

All objects are immutable; every function is pure.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import BranchAmbiguityError, DomainError, SingularImmersionError

__all__ = [
    "CaseKind",
    "QuadricSpec",
    "AmbientPoint",
    "SphereConfig",
    "Chart",
    "TangentFrame",
    "make_chart",
    "sphere_tangent_frame",
    "random_sphere_config",
    "sqrt_branch_continue",
    "evaluate_immersion",
    "immersion_frame",
    "frame_tangency_residual",
]

UNIT_TOL = 1e-10
BRANCH_REL_TOL = 1e-12


class CaseKind(str, Enum):
    FLAT = "flat"
    SPHERE = "sphere"
    GENERAL = "general"


_CANONICAL = {
    CaseKind.FLAT: (0j, 0j, 1 + 0j),
    CaseKind.SPHERE: (1 + 0j, 0j, -1 + 0j),
}


def _frozen(a, dtype) -> np.ndarray:
    out = np.array(a, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class QuadricSpec:
    """Dimension ``n`` and the polynomial ``P`` (ascending coefficients) defining ``Q``."""

    n: int
    p_coeffs: tuple[complex, ...]
    case_kind: CaseKind = CaseKind.GENERAL

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        coeffs = tuple(complex(c) for c in self.p_coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs or all(c == 0 for c in coeffs):
            raise DomainError("P must not be identically zero")
        if len(coeffs) - 1 > 4:
            raise DomainError("only polynomials of degree <= 4 are supported")
        kind = CaseKind(self.case_kind)
        if kind in _CANONICAL and coeffs != _CANONICAL[kind]:
            raise DomainError(f"coefficients {coeffs} are inconsistent with case {kind.value}")
        object.__setattr__(self, "p_coeffs", coeffs)
        object.__setattr__(self, "case_kind", kind)
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def flat(cls, n: int) -> "QuadricSpec":
        return cls(n, _CANONICAL[CaseKind.FLAT], CaseKind.FLAT)

    @classmethod
    def sphere(cls, n: int) -> "QuadricSpec":
        return cls(n, _CANONICAL[CaseKind.SPHERE], CaseKind.SPHERE)

    @classmethod
    def general(cls, n: int, p_coeffs) -> "QuadricSpec":
        return cls(n, tuple(p_coeffs), CaseKind.GENERAL)

    def P(self, z):
        return npoly.polyval(z, self.p_coeffs)

    def dP(self, z):
        return npoly.polyval(z, npoly.polyder(self.p_coeffs))

    def roots(self) -> np.ndarray:
        if len(self.p_coeffs) == 1:
            return np.empty(0, dtype=complex)
        return npoly.polyroots(self.p_coeffs).astype(complex)


@dataclass(frozen=True)
class AmbientPoint:
    """A point ``(z_0, ..., z_n)`` of the ambient space."""

    z: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "z", _frozen(self.z, complex))

    @property
    def n(self) -> int:
        return self.z.size - 1

    @property
    def r2(self) -> float:
        return float(np.sum(np.abs(self.z) ** 2))

    def residual(self, spec: QuadricSpec) -> float:
        """Scale-free membership residual ``|P(z0) - sum z_j^2| / max(1, |P(z0)|, sum |z_j|^2)``.

        For the complex sphere this is evaluated in its rotation-invariant form
        ``|sum_{j>=0} z_j^2 - 1|``.
        """
        z = self.z
        if spec.case_kind is CaseKind.SPHERE:
            lhs, rhs = 1.0, complex(np.sum(z * z))
            scale = max(1.0, float(np.sum(np.abs(z) ** 2)))
        else:
            lhs, rhs = spec.P(z[0]), complex(np.sum(z[1:] * z[1:]))
            scale = max(1.0, abs(lhs), float(np.sum(np.abs(z[1:]) ** 2)))
        return abs(lhs - rhs) / scale


@dataclass(frozen=True)
class SphereConfig:
    """A point ``x`` of the real unit sphere and an orthonormal basis of its tangent space."""

    x: np.ndarray
    frame: np.ndarray

    def __post_init__(self):
        x = _frozen(self.x, float)
        frame = _frozen(np.reshape(self.frame, (x.size - 1, x.size)), float)
        if abs(np.linalg.norm(x) - 1.0) > UNIT_TOL:
            raise DomainError("sphere point must have unit norm")
        gram = frame @ frame.T
        if frame.size and (
            np.max(np.abs(frame @ x)) > 1e-9 or np.max(np.abs(gram - np.eye(x.size - 1))) > 1e-9
        ):
            raise DomainError("sphere frame must be orthonormal and orthogonal to x")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "frame", frame)

    @property
    def n(self) -> int:
        return self.x.size


@dataclass(frozen=True)
class Chart:
    """Rotation ``A_p`` of ``R^{n+1}`` with ``A_p e_0 = p``; coordinates are ``A_p^T z``."""

    p: np.ndarray
    rotation: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", _frozen(self.p, float))
        object.__setattr__(self, "rotation", _frozen(self.rotation, float))

    @classmethod
    def identity(cls, n: int) -> "Chart":
        e0 = np.zeros(n + 1)
        e0[0] = 1.0
        return cls(e0, np.eye(n + 1))

    @property
    def is_identity(self) -> bool:
        return bool(np.array_equal(self.rotation, np.eye(self.rotation.shape[0])))

    def to_chart(self, v: np.ndarray) -> np.ndarray:
        """Ambient vector(s) (last axis of length n+1) to chart coordinates."""
        return self._check(v) @ self.rotation

    def from_chart(self, w: np.ndarray) -> np.ndarray:
        return self._check(w) @ self.rotation.T

    def _check(self, v) -> np.ndarray:
        v = np.asarray(v)
        if v.shape[-1:] != self.rotation.shape[:1]:
            raise DomainError(f"vectors of length {v.shape[-1:]} do not fit a chart of size {self.rotation.shape[0]}")
        return v


@dataclass(frozen=True)
class TangentFrame:
    """The frame ``(X_s, X_1, ..., X_{n-1})`` in ambient coordinates."""

    xs: np.ndarray
    xalpha: np.ndarray
    branch_sqrt: complex
    chart: Chart = field(repr=False, default=None)

    def __post_init__(self):
        xs = _frozen(self.xs, complex)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "xalpha", _frozen(np.reshape(self.xalpha, (xs.size - 2, xs.size)), complex))
        object.__setattr__(self, "branch_sqrt", complex(self.branch_sqrt))
        if self.chart is None:
            object.__setattr__(self, "chart", Chart.identity(xs.size - 1))

    @property
    def vectors(self) -> np.ndarray:
        """All ``n`` frame vectors stacked as rows, shape ``(n, n+1)``."""
        return np.vstack([self.xs[None, :], self.xalpha])

    def chart_components(self, chart: Chart | None = None) -> np.ndarray:
        """Coordinates ``z_1..z_n`` of each frame vector in ``chart`` (default: the frame's own)."""
        chart = self.chart if chart is None else chart
        return chart.to_chart(self.vectors)[:, 1:]


def _check_unit(v: np.ndarray, what: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or not np.all(np.isfinite(v)) or abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
        raise DomainError(f"{what} must be a finite real unit vector")
    return v


def make_chart(p) -> Chart:
    """Rotation in the plane spanned by ``e_0`` and ``p`` taking ``e_0`` to ``p``.

    The rotation is the identity on the orthogonal complement of that plane.
    For ``p = -e_0`` the (``e_0``, ``e_1``) plane is used, so the determinant
    stays +1 in every dimension.
    """
    p = _check_unit(p, "chart point p")
    dim = p.size
    c = float(p[0])
    u = p.copy()
    u[0] = 0.0
    s = float(np.linalg.norm(u))
    if s < 1e-15:
        if c > 0:
            return Chart(p, np.eye(dim))
        u = np.zeros(dim)
        u[1] = 1.0
        s, c = 0.0, -1.0
    else:
        u /= s
    e0 = np.zeros(dim)
    e0[0] = 1.0
    rot = (
        np.eye(dim)
        + (c - 1.0) * (np.outer(e0, e0) + np.outer(u, u))
        + s * (np.outer(u, e0) - np.outer(e0, u))
    )
    return Chart(p, rot)


def sphere_tangent_frame(x) -> SphereConfig:
    """Orthonormal tangent basis at ``x`` from a sign-stable Householder reflection."""
    x = _check_unit(x, "sphere point x")
    sign = 1.0 if x[0] >= 0 else -1.0
    v = x.copy()
    v[0] += sign
    h = np.eye(x.size) - 2.0 * np.outer(v, v) / (v @ v)
    # h maps e_0 to -sign*x, so the remaining columns span x^perp
    return SphereConfig(x, h[:, 1:].T)


def random_sphere_config(n: int, rng: np.random.Generator) -> SphereConfig:
    """Uniform point of ``S^{n-1}`` with a randomly rotated tangent frame."""
    x = rng.normal(size=n)
    x /= np.linalg.norm(x)
    base = sphere_tangent_frame(x)
    if n == 2:
        return SphereConfig(x, base.frame * rng.choice([-1.0, 1.0]))
    q, r = np.linalg.qr(rng.normal(size=(n - 1, n - 1)))
    q = q * np.sign(np.diag(r))
    return SphereConfig(x, q.T @ base.frame)


def sqrt_branch_continue(previous: complex, radicand: complex, tol: float = BRANCH_REL_TOL) -> complex:
    """Square root of ``radicand`` closest to ``previous``.

    Raises :class:`BranchAmbiguityError` when both roots are (numerically)
    equidistant from ``previous``, which happens when the step jumped too far
    around a branch point.
    """
    r = cmath.sqrt(radicand)
    if r == 0:
        return 0j
    previous = complex(previous)
    if previous == 0:
        raise BranchAmbiguityError("cannot continue a square root out of a branch point")
    align = (previous * r.conjugate()).real
    if abs(align) <= tol * abs(previous) * abs(r):
        raise BranchAmbiguityError(
            f"both roots of {radicand!r} are equidistant from {previous!r}; shrink the step"
        )
    return r if align > 0 else -r


def _resolve_chart(spec: QuadricSpec, chart: Chart | None) -> Chart:
    if chart is None:
        return Chart.identity(spec.n)
    if chart.rotation.shape != (spec.n + 1, spec.n + 1):
        raise DomainError("chart dimension does not match the quadric")
    if spec.case_kind is not CaseKind.SPHERE and not chart.is_identity:
        raise DomainError("rotated charts are only meaningful for the complex sphere")
    return chart


def _check_config(spec: QuadricSpec, cfg: SphereConfig):
    if cfg.n != spec.n:
        raise DomainError(f"sphere config has dimension {cfg.n}, quadric has n={spec.n}")


def evaluate_immersion(
    spec: QuadricSpec,
    gamma: complex,
    branch: complex,
    cfg: SphereConfig,
    chart: Chart | None = None,
) -> AmbientPoint:
    """Point ``A_p (gamma, branch * x)`` where ``branch`` is a chosen square root of ``P(gamma)``."""
    _check_config(spec, cfg)
    chart = _resolve_chart(spec, chart)
    radicand = complex(spec.P(gamma))
    if abs(branch * branch - radicand) > BRANCH_REL_TOL * max(1.0, abs(radicand)):
        raise DomainError(f"branch {branch!r} is not a square root of P(gamma) = {radicand!r}")
    w = np.empty(spec.n + 1, dtype=complex)
    w[0] = gamma
    w[1:] = branch * cfg.x
    return AmbientPoint(chart.from_chart(w))


def immersion_frame(
    spec: QuadricSpec,
    gamma: complex,
    gamma_dot: complex,
    branch: complex,
    cfg: SphereConfig,
    chart: Chart | None = None,
) -> TangentFrame:
    """Tangent vectors ``X_s`` and ``X_alpha`` of the immersion at ``(gamma, x)``.

    Raises
    ------
    SingularImmersionError
        If ``branch`` vanishes, i.e. ``gamma`` is a zero of ``P``.
    """
    _check_config(spec, cfg)
    chart = _resolve_chart(spec, chart)
    branch = complex(branch)
    if branch == 0:
        raise SingularImmersionError(f"gamma = {gamma!r} is a zero of P; the immersion is singular")
    radicand = complex(spec.P(gamma))
    if abs(branch * branch - radicand) > 1e-8 * max(1.0, abs(radicand)):
        raise DomainError(f"branch {branch!r} is not a square root of P(gamma) = {radicand!r}")
    n = spec.n
    xs = np.empty(n + 1, dtype=complex)
    xs[0] = gamma_dot
    xs[1:] = gamma_dot * spec.dP(gamma) / (2.0 * branch) * cfg.x
    xa = np.zeros((n - 1, n + 1), dtype=complex)
    xa[:, 1:] = branch * cfg.frame
    return TangentFrame(chart.from_chart(xs), chart.from_chart(xa), branch, chart)


def frame_tangency_residual(spec: QuadricSpec, point: AmbientPoint, frame: TangentFrame) -> float:
    """Largest ``|P'(z0) v0 - 2 sum z_j v_j|`` over the frame, relative to ``|v| * max(1, |z|)``."""
    w = frame.chart.to_chart(point.z)
    vs = frame.chart.to_chart(frame.vectors)
    lin = spec.dP(w[0]) * vs[:, 0] - 2.0 * vs[:, 1:] @ w[1:]
    scale = np.linalg.norm(vs, axis=1) * max(1.0, float(np.linalg.norm(w)), abs(spec.dP(w[0])))
    return float(np.max(np.abs(lin) / scale))
