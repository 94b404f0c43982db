"""Bimodule actions of one algebra on another, with axiom validation.

An action of ``A`` (dimension ``n``) on a space or algebra ``B``
(dimension ``m``) is a pair of tensors

    e_i . f_p = sum_q left[i, p, q] f_q        (left action)
    f_p . e_i = sum_q right[p, i, q] f_q       (right action)

`validate_bimodule` checks the three standard module axioms and the l1
contractivity of both actions; `algebraic_report` checks the three extra
identities tying the actions to the product of ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algcore import (
    DEFAULT_TOL,
    FiniteDimAlgebra,
    ResidualCheck,
    Tolerances,
    ValidationReport,
    _max_abs_with_location,
    as_element,
)
from .errors import DimensionMismatchError


@dataclass(frozen=True, eq=False)
class BimoduleAction:
    """Pair of action tensors; ``left`` has shape (n, m, m), ``right`` (m, n, m)."""

    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        left = np.ascontiguousarray(np.asarray(self.left, dtype=complex))
        right = np.ascontiguousarray(np.asarray(self.right, dtype=complex))
        if left.ndim != 3 or right.ndim != 3 or left.shape[1] != left.shape[2]:
            raise ValueError(f"bad action tensor shapes {left.shape}, {right.shape}")
        n, m = left.shape[0], left.shape[1]
        if right.shape != (m, n, m):
            raise ValueError(
                f"right tensor shape {right.shape} inconsistent with left {left.shape}"
            )
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def dim_algebra(self) -> int:
        return self.left.shape[0]

    @property
    def dim_module(self) -> int:
        return self.left.shape[1]


def act_left(action: BimoduleAction, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """The element ``a . b`` of the module."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (action.dim_algebra,) or b.shape != (action.dim_module,):
        raise DimensionMismatchError(
            f"act_left got shapes {a.shape}, {b.shape} for dims "
            f"({action.dim_algebra}, {action.dim_module})"
        )
    return np.einsum("i,p,ipq->q", a, b, action.left)


def act_right(action: BimoduleAction, b: np.ndarray, a: np.ndarray) -> np.ndarray:
    """The element ``b . a`` of the module."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (action.dim_algebra,) or b.shape != (action.dim_module,):
        raise DimensionMismatchError(
            f"act_right got shapes {b.shape}, {a.shape} for dims "
            f"({action.dim_module}, {action.dim_algebra})"
        )
    return np.einsum("p,i,piq->q", b, a, action.right)


def _check_dims(a: FiniteDimAlgebra, b: FiniteDimAlgebra, action: BimoduleAction) -> None:
    if action.dim_algebra != a.dim or action.dim_module != b.dim:
        raise DimensionMismatchError(
            f"action dims ({action.dim_algebra}, {action.dim_module}) do not match "
            f"algebras of dims ({a.dim}, {b.dim})"
        )


def validate_bimodule(
    a: FiniteDimAlgebra,
    b: FiniteDimAlgebra,
    action: BimoduleAction,
    tol: Tolerances = DEFAULT_TOL,
) -> ValidationReport:
    """Module axioms on all basis tuples, plus contractivity of both actions."""
    _check_dims(a, b, action)
    ca, left, right = a.mul, action.left, action.right
    checks = []

    bad = ~np.isfinite(left.real) | ~np.isfinite(left.imag)
    bad_r = ~np.isfinite(right.real) | ~np.isfinite(right.imag)
    if bad.any() or bad_r.any():
        checks.append(ResidualCheck("finite_entries", float("inf"), 0.0, None))
    else:
        checks.append(ResidualCheck("finite_entries", 0.0, 0.0, None))

    # (e_i e_j) . f_p = e_i . (e_j . f_p)
    res, loc = _max_abs_with_location(
        np.einsum("ijm,mpq->ijpq", ca, left) - np.einsum("jpr,irq->ijpq", left, left)
    )
    checks.append(ResidualCheck("left_action_associative", res, tol.tau_assoc, loc))

    # f_p . (e_i e_j) = (f_p . e_i) . e_j
    res, loc = _max_abs_with_location(
        np.einsum("ijm,pmq->pijq", ca, right) - np.einsum("pir,rjq->pijq", right, right)
    )
    checks.append(ResidualCheck("right_action_associative", res, tol.tau_assoc, loc))

    # (e_i . f_p) . e_j = e_i . (f_p . e_j)
    res, loc = _max_abs_with_location(
        np.einsum("ipr,rjq->ipjq", left, right) - np.einsum("pjr,irq->ipjq", right, left)
    )
    checks.append(ResidualCheck("actions_compatible", res, tol.tau_assoc, loc))

    for name, tensor in (("left_action_contractive", left), ("right_action_contractive", right)):
        if tensor.size:
            rowsums = np.abs(tensor).sum(axis=2)
            excess = float(rowsums.max()) - 1.0
            i, p = np.unravel_index(int(np.argmax(rowsums)), rowsums.shape)
            checks.append(ResidualCheck(name, max(0.0, excess), tol.tau_norm, (int(i), int(p))))
        else:
            checks.append(ResidualCheck(name, 0.0, tol.tau_norm, None))

    return ValidationReport(tuple(checks))


def algebraic_report(
    a: FiniteDimAlgebra,
    b: FiniteDimAlgebra,
    action: BimoduleAction,
    tol: Tolerances = DEFAULT_TOL,
) -> ValidationReport:
    """The three identities coupling the actions to the product of ``b``.

    Checked on all basis triples:
    ``a.(b1 b2) = (a.b1) b2``, ``(b1 b2).a = b1 (b2.a)``, ``(b1.a) b2 = b1 (a.b2)``.
    """
    _check_dims(a, b, action)
    cb, left, right = b.mul, action.left, action.right
    checks = []

    res, loc = _max_abs_with_location(
        np.einsum("psm,imq->ipsq", cb, left) - np.einsum("ipr,rsq->ipsq", left, cb)
    )
    checks.append(ResidualCheck("left_action_multiplicative", res, tol.tau_assoc, loc))

    res, loc = _max_abs_with_location(
        np.einsum("psm,miq->psiq", cb, right) - np.einsum("sir,prq->psiq", right, cb)
    )
    checks.append(ResidualCheck("right_action_multiplicative", res, tol.tau_assoc, loc))

    res, loc = _max_abs_with_location(
        np.einsum("pir,rsq->pisq", right, cb) - np.einsum("isr,prq->pisq", left, cb)
    )
    checks.append(ResidualCheck("actions_interchange", res, tol.tau_assoc, loc))

    return ValidationReport(tuple(checks))


def is_algebraic(
    a: FiniteDimAlgebra,
    b: FiniteDimAlgebra,
    action: BimoduleAction,
    tol: Tolerances = DEFAULT_TOL,
) -> bool:
    return algebraic_report(a, b, action, tol).passed


def is_symmetric(action: BimoduleAction, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when ``a . b = b . a`` for all basis pairs, within tolerance."""
    gap = action.left - action.right.transpose(1, 0, 2)
    return gap.size == 0 or float(np.max(np.abs(gap))) <= tol.tau_assoc


def zero_action(n: int, m: int) -> BimoduleAction:
    return BimoduleAction(np.zeros((n, m, m), dtype=complex), np.zeros((m, n, m), dtype=complex))


def regular_action(alg: FiniteDimAlgebra) -> BimoduleAction:
    """The algebra acting on itself by multiplication on either side."""
    return BimoduleAction(alg.mul.copy(), alg.mul.copy())


def transform_action(
    action: BimoduleAction, s_alg: np.ndarray, s_mod: np.ndarray
) -> BimoduleAction:
    """Rewrite the action tensors after basis changes on both spaces.

    ``s_alg`` and ``s_mod`` hold the new basis vectors as columns in the old
    coordinates.
    """
    s_alg = np.asarray(s_alg, dtype=complex)
    s_mod = np.asarray(s_mod, dtype=complex)
    s_mod_inv = np.linalg.inv(s_mod)
    left = np.einsum("si,tp,stu,lu->ipl", s_alg, s_mod, action.left, s_mod_inv)
    right = np.einsum("tp,si,tsu,lu->pil", s_mod, s_alg, action.right, s_mod_inv)
    return BimoduleAction(left, right)


def scale_algebra_side(action: BimoduleAction, factor: float) -> BimoduleAction:
    """Effect of scaling the acting algebra's basis by ``factor``."""
    return BimoduleAction(action.left * factor, action.right * factor)
