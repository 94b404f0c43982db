"""Finite-dimensional complex algebras given by structure constants.

An algebra of dimension ``n`` stores the tensor ``mul`` with

    e_i e_j = sum_k mul[i, j, k] e_k

over the declared basis.  Elements and linear functionals are plain complex
numpy vectors; a functional acts through the bilinear pairing
``phi(x) = sum_i phi[i] * x[i]``.

Every algebra carries the l1 norm in its declared basis.  For that norm the
submultiplicativity bound ``||x y||_1 <= ||x||_1 ||y||_1`` holds if and only
if every basis product satisfies ``||e_i e_j||_1 <= 1``, which is the finite
criterion `validate` checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _linalg
from .config import DEFAULT_TOL, Tolerances
from .errors import DimensionMismatchError


@dataclass(frozen=True, eq=False)
class FiniteDimAlgebra:
    """Algebra presented by a cubic structure-constant tensor."""

    mul: np.ndarray
    basis_labels: tuple[str, ...] = ()

    def __post_init__(self):
        mul = np.ascontiguousarray(np.asarray(self.mul, dtype=complex))
        if mul.ndim != 3 or mul.shape[0] != mul.shape[1] or mul.shape[0] != mul.shape[2]:
            raise ValueError(f"structure tensor must be cubic, got shape {mul.shape}")
        object.__setattr__(self, "mul", mul)
        n = mul.shape[0]
        labels = tuple(self.basis_labels) if self.basis_labels else tuple(f"e{i}" for i in range(n))
        if len(labels) != n:
            raise ValueError(f"{len(labels)} basis labels for dimension {n}")
        object.__setattr__(self, "basis_labels", labels)

    @property
    def dim(self) -> int:
        return self.mul.shape[0]

    def basis_element(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=complex)
        e[i] = 1.0
        return e

    def left_mult_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> x y``."""
        x = as_element(self, x)
        return np.einsum("i,ijk->kj", x, self.mul)

    def right_mult_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> y x``."""
        x = as_element(self, x)
        return np.einsum("j,ijk->ki", x, self.mul)


def as_element(alg: FiniteDimAlgebra, x) -> np.ndarray:
    """Coerce ``x`` to a coordinate vector of ``alg``, checking the length."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (alg.dim,):
        raise DimensionMismatchError(
            f"element of shape {x.shape} does not fit algebra of dimension {alg.dim}"
        )
    return x


def multiply(alg: FiniteDimAlgebra, x, y) -> np.ndarray:
    """Product ``x y`` by structure-constant contraction."""
    x = as_element(alg, x)
    y = as_element(alg, y)
    return np.einsum("i,j,ijk->k", x, y, alg.mul)


def l1_norm(x) -> float:
    """Sum of coordinate moduli."""
    return float(np.sum(np.abs(np.asarray(x))))


@dataclass(frozen=True)
class ResidualCheck:
    """Outcome of a single named residual check."""

    name: str
    residual: float
    tolerance: float
    location: tuple[int, ...] | None = None

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "location": list(self.location) if self.location is not None else None,
            "passed": bool(self.passed),
        }


@dataclass(frozen=True)
class ValidationReport:
    """Bundle of residual checks; passes when every check passes."""

    checks: tuple[ResidualCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.checks if not c.passed)

    def __getitem__(self, name: str) -> ResidualCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {"passed": bool(self.passed), "checks": [c.as_dict() for c in self.checks]}


def _max_abs_with_location(arr: np.ndarray) -> tuple[float, tuple[int, ...] | None]:
    if arr.size == 0:
        return 0.0, None
    flat = np.abs(arr)
    idx = int(np.argmax(flat))
    return float(flat.flat[idx]), tuple(int(i) for i in np.unravel_index(idx, arr.shape))


def associativity_residual(alg: FiniteDimAlgebra) -> tuple[float, tuple[int, ...] | None]:
    """Max over basis quadruples of ``|(e_i e_j) e_k - e_i (e_j e_k)|``."""
    c = alg.mul
    left = np.einsum("ijm,mkl->ijkl", c, c)
    right = np.einsum("jkm,iml->ijkl", c, c)
    return _max_abs_with_location(left - right)


def validate(alg: FiniteDimAlgebra, tol: Tolerances = DEFAULT_TOL) -> ValidationReport:
    """Check finiteness, associativity, and the l1 basis bound."""
    c = alg.mul
    finite_bad = ~np.isfinite(c.real) | ~np.isfinite(c.imag)
    if finite_bad.any():
        loc = tuple(int(i) for i in np.argwhere(finite_bad)[0])
        finite = ResidualCheck("finite_entries", float("inf"), 0.0, loc)
    else:
        finite = ResidualCheck("finite_entries", 0.0, 0.0, None)

    assoc_res, assoc_loc = associativity_residual(alg)
    assoc = ResidualCheck("associativity", assoc_res, tol.tau_assoc, assoc_loc)

    if alg.dim:
        rowsums = np.abs(c).sum(axis=2)
        excess = float(rowsums.max()) - 1.0
        i, j = np.unravel_index(int(np.argmax(rowsums)), rowsums.shape)
        norm = ResidualCheck("l1_basis_bound", max(0.0, excess), tol.tau_norm, (int(i), int(j)))
    else:
        norm = ResidualCheck("l1_basis_bound", 0.0, tol.tau_norm, None)

    return ValidationReport((finite, assoc, norm))


def is_commutative(alg: FiniteDimAlgebra, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when ``e_i e_j = e_j e_i`` for all basis pairs, within tolerance."""
    gap = alg.mul - alg.mul.transpose(1, 0, 2)
    return gap.size == 0 or float(np.max(np.abs(gap))) <= tol.tau_assoc


def _identity_system(alg: FiniteDimAlgebra, sides: str) -> tuple[np.ndarray, np.ndarray]:
    # Rows of the stacked linear system "x is an identity on the given sides".
    n = alg.dim
    eye = np.eye(n, dtype=complex).reshape(n * n)
    blocks = []
    rhs = []
    if "left" in sides:
        # x e_j = e_j:  sum_i x_i mul[i, j, k] = delta_{jk}
        blocks.append(alg.mul.transpose(1, 2, 0).reshape(n * n, n))
        rhs.append(eye)
    if "right" in sides:
        # e_i x = e_i:  sum_j x_j mul[i, j, k] = delta_{ik}
        blocks.append(alg.mul.transpose(0, 2, 1).reshape(n * n, n))
        rhs.append(eye)
    return np.vstack(blocks), np.concatenate(rhs)


def find_identity(alg: FiniteDimAlgebra, tol: Tolerances = DEFAULT_TOL) -> np.ndarray | None:
    """Two-sided identity, or ``None`` when the residual cannot certify one.

    Solved by least squares on the stacked system ``x e_j = e_j``,
    ``e_i x = e_i``; an identity is unique when it exists.
    """
    if alg.dim == 0:
        return np.zeros(0, dtype=complex)
    mat, rhs = _identity_system(alg, "leftright")
    x, res = _linalg.lstsq_solve(mat, rhs)
    return x if res <= tol.tau_solve else None


@dataclass(frozen=True)
class AffineSubspace:
    """Solution set ``point + span(directions)`` of a consistent linear system."""

    point: np.ndarray
    directions: np.ndarray  # rows span the homogeneous part

    @property
    def dim(self) -> int:
        return self.directions.shape[0]

    def contains(self, x: np.ndarray, tol: float) -> bool:
        return _linalg.residual_outside(np.asarray(x, complex) - self.point, self.directions) <= tol


def find_left_identities(
    alg: FiniteDimAlgebra, tol: Tolerances = DEFAULT_TOL
) -> AffineSubspace | None:
    """Affine set ``{x : x e_j = e_j for all j}``, or ``None`` when empty."""
    if alg.dim == 0:
        return AffineSubspace(np.zeros(0, dtype=complex), np.zeros((0, 0), dtype=complex))
    mat, rhs = _identity_system(alg, "left")
    x, res = _linalg.lstsq_solve(mat, rhs)
    if res > tol.tau_solve:
        return None
    return AffineSubspace(x, _linalg.nullspace_rows(mat, tol.rank_rtol))


def unitize(alg: FiniteDimAlgebra) -> tuple[FiniteDimAlgebra, np.ndarray]:
    """Adjoin an identity as basis vector 0.

    Returns the enlarged algebra and the isometric embedding matrix that
    sends ``alg`` onto coordinates ``1..n``.
    """
    n = alg.dim
    c = np.zeros((n + 1, n + 1, n + 1), dtype=complex)
    c[0, 0, 0] = 1.0
    for i in range(n):
        c[0, i + 1, i + 1] = 1.0
        c[i + 1, 0, i + 1] = 1.0
    c[1:, 1:, 1:] = alg.mul
    labels = ("1",) + alg.basis_labels
    embed = np.zeros((n + 1, n), dtype=complex)
    embed[1:, :] = np.eye(n)
    return FiniteDimAlgebra(c, labels), embed
