"""Exception types shared across the package."""


class DomainError(ValueError):
    """A label or argument lies outside the admissible range."""


class PoleError(ArithmeticError):
    """Evaluation hit a pole or a coincident-point singularity."""


class UsageError(ValueError):
    """The request is ambiguous or malformed (bad generator, missing branch side, ...)."""


class ContinuationError(ArithmeticError):
    """Numerical analytic continuation failed to converge."""
