"""Exception types shared across the package."""


class CmgEvalError(Exception):
    """Base class for all package errors."""


class ValidationError(CmgEvalError):
    """Input data violates a documented contract (bad record, bad score,
    duplicate id, ...). Maps to CLI exit code 1."""


class InvalidReferenceError(ValidationError):
    """A metric was asked to score against an empty reference."""


class UndefinedScoreError(ValidationError):
    """The metric is undefined for this input (e.g. reference shorter
    than the n-gram order)."""


class UndefinedCorrelationError(ValidationError):
    """Spearman's rho is undefined (constant vector or too few samples)."""
