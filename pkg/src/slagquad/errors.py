"""Exception hierarchy shared by the geometry, dynamics and verification layers."""


class SlagError(ValueError):
    """Base class for all domain errors raised by :mod:`slagquad`."""


class DomainError(SlagError):
    """An input lies outside the domain of an operation (non-unit vector, bad n, ...)."""


class BranchAmbiguityError(SlagError):
    """Both square roots are equidistant from the previous value; the caller must shrink its step."""


class SingularImmersionError(SlagError):
    """The profile curve hit a zero of P, where the ansatz immersion degenerates."""


class ChartError(SlagError):
    """The z0-chart (or the chart formula for the holomorphic volume) is invalid at this point."""


class TraceError(SlagError):
    """Curve tracing failed (step underflow, projection divergence, singular start)."""
