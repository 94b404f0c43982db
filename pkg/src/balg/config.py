"""Numerical tolerance settings shared across the workbench."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Tolerance knobs for validation, solving, and spectral computations.

    The defaults assume double precision and the modest contractions that
    occur at dimensions up to roughly 16.
    """

    tau_assoc: float = 1e-9      # associativity and module-axiom residuals
    tau_norm: float = 1e-9       # allowed excess over the l1 basis bound
    tau_char: float = 1e-8       # multiplicativity defect of a character
    delta_dedup: float = 1e-6    # l-inf separation when deduplicating functionals
    tau_solve: float = 1e-9      # residual certifying a linear-system solution
    rank_rtol: float = 1e-9      # relative cutoff for numerical rank decisions
    newton_residual: float = 1e-10   # acceptance residual for Newton roots
    newton_starts: int = 200
    retry_limit: int = 20        # reseeded retries in the eigenvector extraction

    def with_validation_tol(self, tol: float) -> "Tolerances":
        """Override the validation tolerances (associativity and norm bound)."""
        return replace(self, tau_assoc=tol, tau_norm=tol)


DEFAULT_TOL = Tolerances()
