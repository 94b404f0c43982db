"""Concrete small algebras and basis transformations used by tests and fuzzing."""

from __future__ import annotations

import numpy as np

from .algcore import FiniteDimAlgebra


def diagonal_algebra(n: int) -> FiniteDimAlgebra:
    """Pointwise product on C^n: e_i e_j = delta_ij e_i."""
    c = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        c[i, i, i] = 1.0
    return FiniteDimAlgebra(c, tuple(f"d{i}" for i in range(n)))


def scalar_algebra() -> FiniteDimAlgebra:
    return diagonal_algebra(1)


def truncated_poly_algebra(n: int) -> FiniteDimAlgebra:
    """C[t]/(t^n) with basis 1, t, ..., t^(n-1)."""
    c = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                c[i, j, i + j] = 1.0
    labels = tuple("1" if i == 0 else f"t{i}" if i > 1 else "t" for i in range(n))
    return FiniteDimAlgebra(c, labels)


def zero_mult_algebra(n: int) -> FiniteDimAlgebra:
    """All products zero."""
    return FiniteDimAlgebra(np.zeros((n, n, n), dtype=complex), tuple(f"z{i}" for i in range(n)))


def matrix_unit_algebra(pairs: list[tuple[int, int]]) -> FiniteDimAlgebra:
    """Span of matrix units E_{rc} for the given index pairs.

    Raises ValueError when the span is not closed under multiplication.
    """
    index = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    c = np.zeros((n, n, n), dtype=complex)
    for i, (a, b) in enumerate(pairs):
        for j, (r, s) in enumerate(pairs):
            if b == r:
                if (a, s) not in index:
                    raise ValueError(f"E{a}{b} * E{r}{s} leaves the span: E{a}{s} missing")
                c[i, j, index[(a, s)]] = 1.0
    return FiniteDimAlgebra(c, tuple(f"E{a}{b}" for a, b in pairs))


def full_matrix_algebra(r: int) -> FiniteDimAlgebra:
    return matrix_unit_algebra([(a, b) for a in range(r) for b in range(r)])


def direct_sum(a: FiniteDimAlgebra, b: FiniteDimAlgebra) -> FiniteDimAlgebra:
    n, m = a.dim, b.dim
    c = np.zeros((n + m, n + m, n + m), dtype=complex)
    c[:n, :n, :n] = a.mul
    c[n:, n:, n:] = b.mul
    return FiniteDimAlgebra(c, a.basis_labels + b.basis_labels)


def basis_change(alg: FiniteDimAlgebra, s: np.ndarray) -> FiniteDimAlgebra:
    """Rewrite the structure constants in the basis v_i = sum_s s[s, i] e_s."""
    s = np.asarray(s, dtype=complex)
    sinv = np.linalg.inv(s)
    c = np.einsum("si,tj,stu,lu->ijl", s, s, alg.mul, sinv)
    return FiniteDimAlgebra(c, alg.basis_labels)


def rescale_basis(alg: FiniteDimAlgebra, factor: float) -> FiniteDimAlgebra:
    """Scale every basis vector by ``factor``; constants scale by the same factor."""
    return FiniteDimAlgebra(alg.mul * factor, alg.basis_labels)


def l1_rescaled(alg: FiniteDimAlgebra) -> FiniteDimAlgebra:
    """Uniformly shrink the basis so the l1 bound max ||e_i e_j||_1 <= 1 holds."""
    if alg.dim == 0:
        return alg
    rowmax = float(np.abs(alg.mul).sum(axis=2).max())
    if rowmax <= 1.0:
        return alg
    return rescale_basis(alg, 1.0 / rowmax)
