"""Randomised property checks that turn the geometric claims into pass/fail reports."""

from __future__ import annotations

import cmath
from dataclasses import asdict, dataclass, field

import numpy as np

from . import dynamics as dyn
from .errors import ChartError, DomainError, SingularImmersionError
from .forms import (
    AuxKind,
    RadialPotential,
    auxiliary_form,
    calabi_yau_ratio,
    flat_form,
    holomorphic_volume,
    max_pullback_residual,
    omega1_coefficients,
    stenzel_coefficients,
)
from .quadric import (
    AmbientPoint,
    CaseKind,
    Chart,
    QuadricSpec,
    SphereConfig,
    TangentFrame,
    evaluate_immersion,
    immersion_frame,
)

__all__ = [
    "VerifyReport",
    "sample_gamma",
    "verify_lagrangian",
    "lagrangian_residual",
    "verify_special_curve",
    "verify_calabi_yau",
    "FORM_TOL",
    "SLAG_TOL",
    "CY_TOL",
]

FORM_TOL = 1e-8
SLAG_TOL = 1e-6
CY_TOL = 1e-6
MAX_RESAMPLE_FRACTION = 0.01
N_DETAILS = 3


@dataclass(frozen=True)
class VerifyReport:
    name: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool
    details: list[str] = field(default_factory=list)
    skipped: int = 0

    @classmethod
    def build(cls, name, samples, residuals, descriptions, tolerance, skipped=0) -> "VerifyReport":
        residuals = np.asarray(residuals, dtype=float)
        worst = float(np.max(residuals)) if residuals.size else 0.0
        order = np.argsort(residuals)[::-1][:N_DETAILS]
        details = [f"{residuals[i]:.3e} at {descriptions[i]}" for i in order]
        return cls(name, samples, worst, tolerance, bool(worst < tolerance), details, skipped)

    def to_dict(self) -> dict:
        return asdict(self)


def sample_gamma(rng: np.random.Generator, spec: QuadricSpec, r_min=0.1, r_max=3.0, exclusion=0.05) -> complex:
    """Uniform draw from the annulus ``r_min <= |gamma| <= r_max`` avoiding 0 and the roots of ``P``."""
    bad = [0j, *spec.roots()]
    while True:
        r = np.sqrt(rng.uniform(r_min**2, r_max**2))
        g = complex(r * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        if all(abs(g - b) > exclusion for b in bad):
            return g


def _corrupt(frame: TangentFrame, amount: float) -> TangentFrame:
    """Negative control: ``X_1 += amount * i * X_s``."""
    xalpha = np.array(frame.xalpha)
    xalpha[0] = xalpha[0] + amount * 1j * frame.xs
    return TangentFrame(frame.xs, xalpha, frame.branch_sqrt, frame.chart)


def _sample_gammas(rng, spec: QuadricSpec, size: int, r_min=0.1, r_max=3.0, exclusion=0.05) -> np.ndarray:
    bad = np.array([0j, *spec.roots()])
    out = np.empty(0, dtype=complex)
    while out.size < size:
        r = np.sqrt(rng.uniform(r_min**2, r_max**2, size=size))
        g = r * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=size))
        ok = np.all(np.abs(g[:, None] - bad[None, :]) > exclusion, axis=1)
        out = np.concatenate([out, g[ok]])
    return out[:size]


def _unit_rows(rng, size, dim) -> np.ndarray:
    v = rng.normal(size=(size, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _batch_sphere_frames(rng, x: np.ndarray) -> np.ndarray:
    """Householder completion of each row of ``x``, mixed by a random orthogonal matrix."""
    size, n = x.shape
    sign = np.where(x[:, 0] >= 0, 1.0, -1.0)
    v = x.copy()
    v[:, 0] += sign
    h = np.eye(n)[None] - 2.0 * v[:, :, None] * v[:, None, :] / np.sum(v * v, axis=1)[:, None, None]
    base = np.transpose(h[:, :, 1:], (0, 2, 1))
    q, r = np.linalg.qr(rng.normal(size=(size, n - 1, n - 1)))
    q = q * np.sign(np.diagonal(r, axis1=1, axis2=2))[:, None, :]
    return np.transpose(q, (0, 2, 1)) @ base


def _batch_rotations(p: np.ndarray) -> np.ndarray:
    """Vectorised :func:`make_chart` for generic ``p`` (never +-e_0 with probability one)."""
    size, dim = p.shape
    c = p[:, 0]
    u = p.copy()
    u[:, 0] = 0.0
    s = np.linalg.norm(u, axis=1)
    u /= s[:, None]
    e0 = np.zeros(dim)
    e0[0] = 1.0
    e0e0 = np.outer(e0, e0)[None]
    uu = u[:, :, None] * u[:, None, :]
    ue0 = u[:, :, None] * e0[None, None, :]
    return (
        np.eye(dim)[None]
        + (c - 1.0)[:, None, None] * (e0e0 + uu)
        + s[:, None, None] * (ue0 - np.transpose(ue0, (0, 2, 1)))
    )


def _batch_residual(u: np.ndarray, a: np.ndarray, scale: np.ndarray) -> np.ndarray:
    s = np.einsum("sai,sij,sbj->sab", u, a, np.conj(u))
    return np.max(np.abs(s - np.transpose(s, (0, 2, 1))) / scale, axis=(1, 2))


def _batch_stenzel(w: np.ndarray, du: np.ndarray, ddu: np.ndarray) -> np.ndarray:
    z0, z = w[:, 0], w[:, 1:]
    n = z.shape[1]
    zzb = z[:, :, None] * np.conj(z)[:, None, :]
    mixed = np.transpose(zzb, (0, 2, 1)) - (np.conj(z0) / z0)[:, None, None] * z[:, :, None] * z[:, None, :]
    hess = np.eye(n)[None] + zzb / (np.abs(z0) ** 2)[:, None, None]
    return hess * du[:, None, None] + (mixed + np.conj(mixed)) * ddu[:, None, None]


def _batch_omega1(w: np.ndarray, du: np.ndarray, ddu: np.ndarray) -> np.ndarray:
    z0, z = w[:, 0], w[:, 1:]
    zzb = z[:, :, None] * np.conj(z)[:, None, :]
    zz = z[:, :, None] * z[:, None, :]
    phase = (np.conj(z0) / z0)[:, None, None]
    return zzb * (du / np.abs(z0) ** 2)[:, None, None] + (
        np.transpose(zzb, (0, 2, 1)) + zzb - phase * zz - np.conj(phase * zz)
    ) * ddu[:, None, None]


def verify_lagrangian(
    spec: QuadricSpec,
    pot: RadialPotential | None = None,
    samples: int = 1000,
    seed: int = 0,
    corrupt: float = 0.0,
) -> VerifyReport:
    """Pullbacks of ``omega_0``, both auxiliary forms and (sphere) ``omega_St``, ``omega_1`` on random frames.

    Residuals are normalised by the product of frame-vector norms. On the
    sphere each sample also uses a random chart point ``p`` and checks
    ``omega_St`` both in the ``p``-adapted chart and in the unrotated one.
    ``corrupt`` adds ``corrupt * i * X_s`` to ``X_1`` (negative control).

    The samples are processed as one batch; the per-point functions of
    :mod:`slagquad.quadric` and :mod:`slagquad.forms` compute the same
    quantities one sample at a time.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    n = spec.n
    sphere = spec.case_kind is CaseKind.SPHERE
    use_stenzel = sphere and pot is not None

    gamma = _sample_gammas(rng, spec, samples)
    gamma_dot = rng.normal(size=samples) + 1j * rng.normal(size=samples)
    x = _unit_rows(rng, samples, n)
    frames = _batch_sphere_frames(rng, x)
    branch = np.sqrt(spec.P(gamma).astype(complex))

    # frame and point in the p-adapted chart coordinates
    w = np.concatenate([gamma[:, None], branch[:, None] * x], axis=1)
    vecs = np.zeros((samples, n, n + 1), dtype=complex)
    vecs[:, 0, 0] = gamma_dot
    vecs[:, 0, 1:] = (gamma_dot * spec.dP(gamma) / (2.0 * branch))[:, None] * x
    vecs[:, 1:, 1:] = branch[:, None, None] * frames
    if corrupt:
        vecs[:, 1] = vecs[:, 1] + corrupt * 1j * vecs[:, 0]
    norms = np.linalg.norm(vecs, axis=2)
    scale = norms[:, :, None] * norms[:, None, :]
    u = vecs[:, :, 1:]
    z = w[:, 1:]

    residual = _batch_residual(u, np.broadcast_to(np.eye(n, dtype=complex), (samples, n, n)), scale)
    residual = np.maximum(residual, _batch_residual(u, z[:, :, None] * np.conj(z)[:, None, :], scale))
    residual = np.maximum(residual, _batch_residual(u, z[:, :, None] * z[:, None, :], scale))
    skipped = 0
    if use_stenzel:
        rot = _batch_rotations(_unit_rows(rng, samples, n + 1))
        ambient_w = np.einsum("sij,sj->si", rot, w)
        ambient_u = np.einsum("sij,saj->sai", rot, vecs)[:, :, 1:]
        t = np.sum(np.abs(w) ** 2, axis=1)
        du, ddu = np.asarray(pot.du(t), dtype=float) * np.ones(samples), np.asarray(pot.ddu(t)) * np.ones(samples)
        residual = np.maximum(residual, _batch_residual(u, _batch_stenzel(w, du, ddu), scale))
        residual = np.maximum(residual, _batch_residual(u, _batch_omega1(w, du, ddu), scale))
        valid = np.abs(ambient_w[:, 0]) > 1e-6 * np.linalg.norm(ambient_w, axis=1)
        skipped = int(np.count_nonzero(~valid))
        if skipped > max(1, MAX_RESAMPLE_FRACTION * samples):
            raise DomainError("too many samples fell outside the unrotated chart")
        unrotated = _batch_residual(ambient_u[valid], _batch_stenzel(ambient_w[valid], du[valid], ddu[valid]),
                                    scale[valid])
        residual[valid] = np.maximum(residual[valid], unrotated)
    descriptions = [f"gamma={g:.4g}, gamma_dot={gd:.3g}" for g, gd in zip(gamma, gamma_dot)]
    name = f"lagrangian[{spec.case_kind.value}, n={n}" + (f", u={pot.name}]" if use_stenzel else "]")
    return VerifyReport.build(name, samples, residual, descriptions, FORM_TOL, skipped)


def lagrangian_residual(
    spec: QuadricSpec,
    gamma: complex,
    gamma_dot: complex,
    cfg: SphereConfig,
    chart: Chart | None = None,
    pot: RadialPotential | None = None,
    corrupt: float = 0.0,
) -> float:
    """Single-sample counterpart of :func:`verify_lagrangian` built from the per-point API."""
    chart = Chart.identity(spec.n) if chart is None else chart
    branch = cmath.sqrt(spec.P(gamma))
    point = evaluate_immersion(spec, gamma, branch, cfg, chart)
    frame = immersion_frame(spec, gamma, gamma_dot, branch, cfg, chart)
    if corrupt:
        frame = _corrupt(frame, corrupt)
    forms = [flat_form(spec.n, point, chart)]
    forms += [auxiliary_form(k, point, chart) for k in AuxKind]
    if pot is not None and spec.case_kind is CaseKind.SPHERE:
        forms.append(stenzel_coefficients(point, pot, chart))
        forms.append(omega1_coefficients(point, pot, chart))
        forms.append(stenzel_coefficients(point, pot))
    return max_pullback_residual(forms, frame)


def verify_special_curve(
    fi: dyn.FirstIntegralSpec, curve: dyn.PhaseCurve, cfg: SphereConfig, tolerance: float = SLAG_TOL
) -> VerifyReport:
    """``|Im Omega| / |Omega|`` on the ansatz frame along ``curve``, together with first-integral drift.

    The drift is re-evaluated from the stored points and roots, not only taken
    from the tracer. Samples where the chart formula for ``Omega`` fails
    (``P'(gamma) = 0``) or the immersion is singular are skipped and counted.
    """
    spec = fi.quadric
    residuals, descriptions = [], []
    skipped = 0
    drift = float(curve.drift)
    for gamma, root, tangent in zip(curve.points, curve.roots, curve.tangents):
        gamma = complex(gamma)
        drift = max(drift, abs(dyn.first_integral(fi, gamma, root) - curve.level))
        try:
            frame = immersion_frame(spec, gamma, complex(tangent), complex(root), cfg)
            vol = holomorphic_volume(spec, frame, gamma)
        except (ChartError, SingularImmersionError):
            skipped += 1
            continue
        if vol == 0:
            skipped += 1
            continue
        residuals.append(abs(vol.imag) / abs(vol))
        descriptions.append(f"gamma={gamma:.6g}")
    residuals.append(drift)
    descriptions.append("first-integral drift")
    name = f"special-lagrangian[{fi.case.value}, n={fi.n}, level={curve.level:.6g}]"
    return VerifyReport.build(name, len(curve.points), residuals, descriptions, tolerance, skipped)


def _random_sphere_point(rng: np.random.Generator) -> AmbientPoint:
    while True:
        z1, z2 = rng.normal(size=2) + 1j * rng.normal(size=2)
        z0 = cmath.sqrt(1.0 - z1 * z1 - z2 * z2)
        if abs(z0) > 0.05:
            return AmbientPoint(np.array([z0, z1, z2]))


def verify_calabi_yau(
    samples: int = 100, seed: int = 0, pot: RadialPotential | None = None, tolerance: float = CY_TOL
) -> VerifyReport:
    """Relative spread (std/mean) of :func:`calabi_yau_ratio` over random points of the 2-sphere."""
    if samples < 1:
        raise DomainError("samples must be >= 1")
    pot = RadialPotential.stenzel() if pot is None else pot
    rng = np.random.default_rng(seed)
    spec = QuadricSpec.sphere(2)
    ratios, descriptions = [], []
    for _ in range(samples):
        point = _random_sphere_point(rng)
        ratios.append(calabi_yau_ratio(point, pot, spec))
        descriptions.append(f"z={np.round(point.z, 4).tolist()}")
    ratios = np.array(ratios)
    spread = float(np.std(ratios) / np.mean(ratios))
    mean = float(np.mean(ratios))
    # report the samples that deviate most from the mean
    dev = np.abs(ratios - mean) / mean
    report = VerifyReport.build(f"calabi-yau[u={pot.name}]", samples, dev, descriptions, tolerance)
    return VerifyReport(report.name, samples, spread, tolerance, spread < tolerance, report.details)
