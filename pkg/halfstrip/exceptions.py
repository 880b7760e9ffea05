"""
Exception hierarchy for halfstrip.

Library code raises these; services catch ``HalfstripError`` and turn it
into result dictionaries, and the CLI maps them onto exit codes.
"""


class HalfstripError(Exception):
    """Base class for all halfstrip errors."""


class DomainError(HalfstripError, ValueError):
    """A point or parameter lies outside the region an operation is defined on."""


class SingularityError(DomainError):
    """Evaluation at a singular point: on the contour, at a kernel pole or a branch point."""


class EvaluationError(HalfstripError, ArithmeticError):
    """An integrand or function produced a non-finite value."""


class TruncationError(EvaluationError):
    """A declared tail bound is violated or the tail integral diverges."""


class InversionError(HalfstripError, RuntimeError):
    """Iterative inversion of a conformal map did not converge."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class ContractError(HalfstripError, ValueError):
    """Inputs are individually valid but inconsistent with each other."""


class UnknownCheckError(HalfstripError, LookupError):
    """No verification check is registered under the requested id."""


class ParameterError(HalfstripError, ValueError):
    """An override, option or configuration value is invalid."""


class FunctionSpecError(ParameterError):
    """A function expression in the CLI mini-language could not be parsed."""


class ConfigurationError(ParameterError):
    """An environment setting or configuration file entry is malformed."""
