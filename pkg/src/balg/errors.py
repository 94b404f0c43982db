"""Exception types raised by the workbench."""

from __future__ import annotations


class BalgError(Exception):
    """Base class for workbench errors."""


class DimensionMismatchError(BalgError, ValueError):
    """A vector or tensor does not match the dimension of its carrier space."""


class SchemaError(BalgError, ValueError):
    """A JSON input file violates the expected schema.

    The message names the offending field, e.g. ``mul[3]: index out of range``.
    """


class InvalidActionError(BalgError, ValueError):
    """Refusal to build a product because an axiom failed.

    Carries the names of the failed checks so callers can report exactly
    which axiom broke.
    """

    def __init__(self, message: str, failed: tuple[str, ...] = ()):
        super().__init__(message)
        self.failed = failed


class HypothesisViolationError(BalgError, ValueError):
    """A checker was invoked outside the hypotheses it needs."""


class SolverRetryError(BalgError, RuntimeError):
    """Randomized solving failed after exhausting its retry budget."""

    def __init__(self, message: str, seed: int | None = None):
        if seed is not None:
            message = f"{message} (seed={seed})"
        super().__init__(message)
        self.seed = seed


class RadicalVerificationError(BalgError, RuntimeError):
    """The computed radical failed its nilpotency or ideal verification.

    Signals a tolerance breakdown rather than a property of the input.
    """


class GenerationError(BalgError, RuntimeError):
    """Random instance generation failed after its retry budget."""
