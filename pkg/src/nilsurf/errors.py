"""Exception types shared across the package."""


class NilsurfError(Exception):
    """Base class for all package errors."""


class OutOfDomainError(NilsurfError):
    """Parameter point lies outside a surface's validity rectangle."""


class SingularPointError(NilsurfError):
    """Evaluation hit an excluded line or a non-immersed point."""


class DegenerateMetricError(NilsurfError):
    """Induced metric has EG - F^2 <= 0 at the requested point."""


class EmptyDomainError(NilsurfError):
    """Every sample of a scan fell on an excluded line."""


class MissingParamError(NilsurfError):
    """A profile or family constructor lacks a required parameter."""


class EvalAtPoleError(NilsurfError):
    """Closed-form profile evaluated at one of its poles."""


class InvalidSpecError(NilsurfError):
    """Family description is malformed (bad type/variant/params)."""


class InvalidCaseError(NilsurfError):
    """Missing-case identifier does not name a table row."""


class NoSafeDomainError(NilsurfError):
    """No axis-aligned box of the requested size avoids the poles."""


class PoleInSpanError(NilsurfError):
    """Integration span contains a pole of the ODE coefficients."""


class StepTooLargeError(NilsurfError):
    """Integrator produced non-finite values."""


class DomainMismatchError(NilsurfError):
    """Numeric grid leaves the closed form's validity interval."""
