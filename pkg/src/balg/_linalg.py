"""Dense linear algebra helpers: spans, null spaces, certified least squares."""

from __future__ import annotations

import numpy as np


def orthonormal_rows(rows: np.ndarray, rtol: float) -> np.ndarray:
    """Orthonormal basis, as rows, of the row span of ``rows``."""
    rows = np.asarray(rows, dtype=complex)
    if rows.ndim != 2:
        rows = np.atleast_2d(rows)
    if rows.shape[0] == 0 or rows.shape[1] == 0:
        return np.zeros((0, rows.shape[1] if rows.ndim == 2 else 0), dtype=complex)
    _, s, vh = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0:
        return np.zeros((0, rows.shape[1]), dtype=complex)
    rank = int(np.sum(s > rtol * max(1.0, float(s[0]))))
    return vh[:rank]


def nullspace_rows(mat: np.ndarray, rtol: float) -> np.ndarray:
    """Rows spanning ``{x : mat @ x = 0}``."""
    mat = np.asarray(mat, dtype=complex)
    ncols = mat.shape[1]
    if mat.shape[0] == 0 or ncols == 0:
        return np.eye(ncols, dtype=complex)
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    rank = int(np.sum(s > rtol * max(1.0, float(s[0])))) if s.size else 0
    return vh[rank:].conj()


def project_onto_rows(v: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Orthogonal projection of ``v`` onto the span of the orthonormal rows."""
    if basis.shape[0] == 0:
        return np.zeros_like(np.asarray(v, dtype=complex))
    return basis.T @ (basis.conj() @ v)


def residual_outside(v: np.ndarray, basis: np.ndarray) -> float:
    """Euclidean distance from ``v`` to the span of the orthonormal rows."""
    v = np.asarray(v, dtype=complex)
    return float(np.linalg.norm(v - project_onto_rows(v, basis)))


def rows_contained(inner: np.ndarray, outer: np.ndarray, tol: float) -> bool:
    """True when every row of ``inner`` lies in the span of ``outer``'s rows."""
    return all(residual_outside(row, outer) <= tol for row in inner)


def subspaces_equal(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    if a.shape[0] != b.shape[0]:
        return False
    return rows_contained(a, b, tol) and rows_contained(b, a, tol)


def lstsq_solve(mat: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, float]:
    """Least-squares solution together with its max-norm residual."""
    mat = np.asarray(mat, dtype=complex)
    rhs = np.asarray(rhs, dtype=complex)
    if mat.shape[0] == 0:
        return np.zeros(mat.shape[1], dtype=complex), 0.0
    if mat.shape[1] == 0:
        x = np.zeros(0, dtype=complex)
        res = float(np.max(np.abs(rhs))) if rhs.size else 0.0
        return x, res
    x, *_ = np.linalg.lstsq(mat, rhs, rcond=None)
    gap = mat @ x - rhs
    res = float(np.max(np.abs(gap))) if gap.size else 0.0
    return x, res
