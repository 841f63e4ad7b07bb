"""Fusion rules, conformal blocks, braid matrices and quasihole wavefunctions
for the minimal models M(k+2, k+1)."""

__version__ = "0.1.0"

from .errors import ContinuationError, DomainError, PoleError, UsageError  # noqa: E402

__all__ = ["__version__", "ContinuationError", "DomainError", "PoleError", "UsageError"]
