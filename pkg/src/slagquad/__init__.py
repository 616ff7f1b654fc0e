"""SO(n)-invariant Lagrangian and special Lagrangian submanifolds of complex quadrics.

Submodules
----------
quadric       quadrics, charts, the immersion ansatz and its tangent frame
forms         Kähler forms (flat, Stenzel), pullbacks, holomorphic volume
dynamics      first integrals and the profile-curve tracer
contour       marching-squares oracle for level sets
portrait      whole phase portraits
verification  randomised pass/fail checks
io, cli       serialisation and the ``slagquad`` command
"""

from .contour import Window, contour_extract, directed_hausdorff
from .dynamics import (
    Classification,
    FirstIntegralSpec,
    Location,
    PhaseCurve,
    TraceControls,
    antiderivative_coefficients,
    asymptote_angles,
    classify_curve,
    direction_field,
    first_integral,
    seed_on_level,
    singular_set,
    trace_curve,
    trace_through,
)
from .errors import (
    BranchAmbiguityError,
    ChartError,
    DomainError,
    SingularImmersionError,
    SlagError,
    TraceError,
)
from .forms import (
    AuxKind,
    HermitianTwoForm,
    RadialPotential,
    auxiliary_form,
    calabi_yau_ratio,
    flat_form,
    holomorphic_volume,
    omega1_coefficients,
    stenzel_coefficients,
    two_form_pullback,
)
from .portrait import auto_levels, phase_portrait
from .quadric import (
    AmbientPoint,
    CaseKind,
    Chart,
    QuadricSpec,
    SphereConfig,
    TangentFrame,
    evaluate_immersion,
    frame_tangency_residual,
    immersion_frame,
    make_chart,
    random_sphere_config,
    sphere_tangent_frame,
    sqrt_branch_continue,
)
from .verification import VerifyReport, verify_calabi_yau, verify_lagrangian, verify_special_curve

__version__ = "0.1.0"

__all__ = [
    "AmbientPoint",
    "AuxKind",
    "BranchAmbiguityError",
    "CaseKind",
    "Chart",
    "ChartError",
    "Classification",
    "DomainError",
    "FirstIntegralSpec",
    "HermitianTwoForm",
    "Location",
    "PhaseCurve",
    "QuadricSpec",
    "RadialPotential",
    "SingularImmersionError",
    "SlagError",
    "SphereConfig",
    "TangentFrame",
    "TraceControls",
    "TraceError",
    "VerifyReport",
    "Window",
    "antiderivative_coefficients",
    "asymptote_angles",
    "auto_levels",
    "auxiliary_form",
    "calabi_yau_ratio",
    "classify_curve",
    "contour_extract",
    "directed_hausdorff",
    "direction_field",
    "evaluate_immersion",
    "first_integral",
    "flat_form",
    "frame_tangency_residual",
    "holomorphic_volume",
    "immersion_frame",
    "make_chart",
    "omega1_coefficients",
    "phase_portrait",
    "random_sphere_config",
    "seed_on_level",
    "singular_set",
    "sphere_tangent_frame",
    "sqrt_branch_continue",
    "stenzel_coefficients",
    "trace_curve",
    "trace_through",
    "two_form_pullback",
    "verify_calabi_yau",
    "verify_lagrangian",
    "verify_special_curve",
]
