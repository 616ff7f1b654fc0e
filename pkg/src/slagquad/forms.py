r"""(1,1)-forms on the z0-chart, their pullbacks to the ansatz, and the holomorphic volume.

A form is stored through its coefficient matrix ``a`` in

.. math::

    \omega = i \sum_{j,k=1}^{n} a_{jk}\, dz_j \wedge d\bar z_k,

expressed in the coordinates ``z_1..z_n`` of a :class:`~slagquad.quadric.Chart`
(``z_0`` being the dependent coordinate on the quadric).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .errors import ChartError, DomainError
from .quadric import AmbientPoint, CaseKind, Chart, QuadricSpec, TangentFrame

__all__ = [
    "RadialPotential",
    "HermitianTwoForm",
    "AuxKind",
    "flat_form",
    "stenzel_coefficients",
    "omega1_coefficients",
    "auxiliary_form",
    "two_form_pullback",
    "pullback_residual",
    "max_pullback_residual",
    "holomorphic_volume",
    "calabi_yau_ratio",
    "standard_calabi_yau_ratio",
    "pfaffian",
]

CHART_TOL = 1e-12


@dataclass(frozen=True)
class RadialPotential:
    """Evaluators for a radial Kähler potential ``u(t)`` with ``t = r^2``, and its derivatives."""

    u: Callable[[float], float]
    du: Callable[[float], float]
    ddu: Callable[[float], float]
    name: str = "custom"

    @classmethod
    def stenzel(cls) -> "RadialPotential":
        """The explicit Ricci-flat potential ``sqrt(1 + t)`` of the 2-dimensional complex sphere."""
        return cls(
            lambda t: np.sqrt(1.0 + t),
            lambda t: 0.5 / np.sqrt(1.0 + t),
            lambda t: -0.25 / (1.0 + t) ** 1.5,
            "stenzel",
        )

    @classmethod
    def quadratic(cls, c: float = 0.1) -> "RadialPotential":
        return cls(lambda t: t + c * t * t, lambda t: 1.0 + 2.0 * c * t, lambda t: 2.0 * c, "quadratic")

    @classmethod
    def logarithmic(cls) -> "RadialPotential":
        return cls(np.log1p, lambda t: 1.0 / (1.0 + t), lambda t: -1.0 / (1.0 + t) ** 2, "log")

    @classmethod
    def flat(cls) -> "RadialPotential":
        """``u = t``: the ambient flat Kähler form restricted to the quadric."""
        return cls(lambda t: t, lambda t: 1.0, lambda t: 0.0, "flat")

    @classmethod
    def by_name(cls, name: str) -> "RadialPotential":
        table = {"stenzel": cls.stenzel, "quadratic": cls.quadratic, "log": cls.logarithmic, "flat": cls.flat}
        try:
            return table[name]()
        except KeyError:
            raise DomainError(f"unknown potential {name!r}; choose from {sorted(table)}") from None

    def scaled(self, c: float) -> "RadialPotential":
        return RadialPotential(
            lambda t: c * self.u(t), lambda t: c * self.du(t), lambda t: c * self.ddu(t), f"{c}*{self.name}"
        )


@dataclass(frozen=True)
class HermitianTwoForm:
    """Coefficients ``a_jk`` of ``i sum a_jk dz_j ^ dzbar_k`` at ``chart_origin``, in ``chart``."""

    a: np.ndarray
    chart_origin: AmbientPoint | None = None
    chart: Chart | None = field(default=None, repr=False)

    def __post_init__(self):
        a = np.array(self.a, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError("coefficient matrix must be square")
        a.setflags(write=False)
        object.__setattr__(self, "a", a)
        if self.chart is None:
            object.__setattr__(self, "chart", Chart.identity(a.shape[0]))

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def __call__(self, u: np.ndarray, v: np.ndarray) -> complex:
        """Value on two vectors given by their chart components ``z_1..z_n``."""
        return complex(1j * (u @ self.a @ np.conj(v) - v @ self.a @ np.conj(u)))


class AuxKind(str, Enum):
    ZJ_ZBAR_K = "zj_zbar_k"
    ZJ_ZK = "zj_zk"


def _chart_coords(point: AmbientPoint, chart: Chart | None) -> tuple[np.ndarray, Chart]:
    chart = Chart.identity(point.n) if chart is None else chart
    w = chart.to_chart(point.z)
    if abs(w[0]) <= CHART_TOL * max(1.0, float(np.linalg.norm(w))):
        raise ChartError("z0 vanishes: the z0-chart is not valid at this point")
    return w, chart


def flat_form(n: int, point: AmbientPoint | None = None, chart: Chart | None = None) -> HermitianTwoForm:
    """The standard form ``i sum dz_j ^ dzbar_j`` on the chart coordinates."""
    return HermitianTwoForm(np.eye(n, dtype=complex), point, chart)


def stenzel_coefficients(
    point: AmbientPoint, pot: RadialPotential, chart: Chart | None = None
) -> HermitianTwoForm:
    """Coefficients of ``i d dbar u(r^2)`` on the complex sphere in the z0-chart.

    ``r^2`` runs over all ambient coordinates, with ``z_0`` eliminated through
    ``z_0^2 = 1 - sum z_j^2``; this gives ``dz_0/dz_j = -z_j/z_0``.
    """
    w, chart = _chart_coords(point, chart)
    z0, z = w[0], w[1:]
    t = point.r2
    du, ddu = pot.du(t), pot.ddu(t)
    n = z.size
    hess_r2 = np.eye(n) + np.outer(z, np.conj(z)) / abs(z0) ** 2
    mixed = np.outer(np.conj(z), z) - (np.conj(z0) / z0) * np.outer(z, z)
    a = hess_r2 * du + (mixed + np.conj(mixed)) * ddu
    return HermitianTwoForm(a, point, chart)


def omega1_coefficients(
    point: AmbientPoint, pot: RadialPotential, chart: Chart | None = None
) -> HermitianTwoForm:
    """The remainder ``omega_St - u' omega_0``, built term by term from the auxiliary forms."""
    w, chart = _chart_coords(point, chart)
    z0 = w[0]
    t = point.r2
    du, ddu = pot.du(t), pot.ddu(t)
    zzb = auxiliary_form(AuxKind.ZJ_ZBAR_K, point, chart).a
    zz = auxiliary_form(AuxKind.ZJ_ZK, point, chart).a
    phase = np.conj(z0) / z0
    # 2 Re(zbar_j z_k - phase z_j z_k) = zbar_j z_k + z_j zbar_k - phase z_j z_k - conj(phase z_j z_k)
    a = zzb * (du / abs(z0) ** 2) + (zzb.T + zzb - phase * zz - np.conj(phase * zz)) * ddu
    return HermitianTwoForm(a, point, chart)


def auxiliary_form(kind: AuxKind, point: AmbientPoint, chart: Chart | None = None) -> HermitianTwoForm:
    """``sum z_j zbar_k dz_j ^ dzbar_k`` or ``sum z_j z_k dz_j ^ dzbar_k``, stored without the ``i``.

    The leading ``i`` of :class:`HermitianTwoForm` only rescales the value, so
    vanishing is unaffected.
    """
    w, chart = _chart_coords(point, chart)
    z = w[1:]
    kind = AuxKind(kind)
    if kind is AuxKind.ZJ_ZBAR_K:
        a = np.outer(z, np.conj(z))
    else:
        a = np.outer(z, z)
    return HermitianTwoForm(a, point, chart)


def two_form_pullback(form: HermitianTwoForm, frame: TangentFrame) -> np.ndarray:
    """Matrix of values ``form(v_a, v_b)`` on the frame vectors, in the form's chart.

    The result is antisymmetric. It is real for Hermitian ``a`` (Kähler forms)
    and complex in general, e.g. for the ``z_j z_k`` auxiliary form.
    """
    u = frame.chart_components(form.chart)
    if u.shape[1] != form.n:
        raise DomainError(f"frame has {u.shape[1]} chart components, form has n={form.n}")
    s = u @ form.a @ np.conj(u).T
    return 1j * (s - s.T)


def pullback_residual(form: HermitianTwoForm, frame: TangentFrame) -> float:
    """Largest pullback entry divided by the product of the two frame-vector norms."""
    return max_pullback_residual([form], frame)


def max_pullback_residual(forms: list[HermitianTwoForm], frame: TangentFrame) -> float:
    """:func:`pullback_residual` maximised over several forms, sharing chart components."""
    norms = np.linalg.norm(frame.vectors, axis=1)
    scale = np.outer(norms, norms)
    components: dict[int, np.ndarray] = {}
    worst = 0.0
    for form in forms:
        key = id(form.chart)
        if key not in components:
            components[key] = frame.chart_components(form.chart)
        u = components[key]
        if u.shape[1] != form.n:
            raise DomainError(f"frame has {u.shape[1]} chart components, form has n={form.n}")
        s = u @ form.a @ np.conj(u).T
        worst = max(worst, float(np.max(np.abs(s - s.T) / scale)))
    return worst


def holomorphic_volume(spec: QuadricSpec, frame: TangentFrame, gamma: complex) -> complex:
    r"""Value of the holomorphic volume form on ``(X_s, X_1, ..., X_{n-1})``.

    The flat case uses :math:`dz_1\wedge\dots\wedge dz_n`; every other case uses
    the z0-chart expression :math:`\dot P(z_0)^{-1} dz_1\wedge\dots\wedge dz_n`
    with ``z_0 = gamma``.
    """
    det = complex(np.linalg.det(frame.chart_components().T))
    if spec.case_kind is CaseKind.FLAT:
        return det
    dp = complex(spec.dP(gamma))
    if abs(dp) <= CHART_TOL:
        raise ChartError(f"P'(gamma) vanishes at gamma = {gamma!r}; the chart formula is invalid")
    return det / dp


def pfaffian(m: np.ndarray) -> complex:
    """Pfaffian of an antisymmetric matrix by expansion along the first row."""
    size = m.shape[0]
    if size % 2:
        return 0j
    if size == 0:
        return 1 + 0j
    total = 0j
    rest = list(range(1, size))
    for idx, j in enumerate(rest):
        keep = [k for k in rest if k != j]
        total += (-1) ** idx * m[0, j] * pfaffian(m[np.ix_(keep, keep)])
    return total


def _top_form_ratio(a: np.ndarray, volume_factor: complex) -> complex:
    # real basis e_1, i e_1, ..., e_n, i e_n of the chart
    n = a.shape[0]
    basis = np.zeros((2 * n, n), dtype=complex)
    for j in range(n):
        basis[2 * j, j] = 1.0
        basis[2 * j + 1, j] = 1j
    s = basis @ a @ np.conj(basis).T
    omega_top = pfaffian(1j * (s - s.T))
    dz = np.vstack([basis.T, np.conj(basis).T])
    vol = abs(volume_factor) ** 2 * np.linalg.det(dz)
    return omega_top / ((-1) ** (n * (n - 1) // 2) * vol)


def calabi_yau_ratio(
    point: AmbientPoint, pot: RadialPotential, spec: QuadricSpec | None = None, chart: Chart | None = None
) -> float:
    r"""Modulus of :math:`(\omega^n/n!) / ((-1)^{n(n-1)/2}\,\Omega\wedge\bar\Omega)` at a point.

    Both top forms are evaluated on the real basis ``e_j, i e_j`` of the
    z0-chart. Only the 2-dimensional complex sphere carries an explicit
    potential, so ``n = 2`` is required.
    """
    spec = QuadricSpec.sphere(2) if spec is None else spec
    if spec.case_kind is not CaseKind.SPHERE or spec.n != 2 or point.n != 2:
        raise DomainError("the Calabi-Yau ratio is only available on the 2-dimensional complex sphere")
    form = stenzel_coefficients(point, pot, chart)
    z0 = form.chart.to_chart(point.z)[0]
    ratio = _top_form_ratio(form.a, 1.0 / spec.dP(z0))
    if not np.isfinite(ratio) or ratio == 0:
        raise DomainError("degenerate tangent basis")
    return float(abs(ratio))


def standard_calabi_yau_ratio(n: int) -> float:
    """Same ratio for ``C^n`` with its standard forms; fixes the sign and constant convention."""
    return float(abs(_top_form_ratio(np.eye(n, dtype=complex), 1.0)))
