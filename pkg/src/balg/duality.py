"""Dual and bidual machinery in its finite-dimensional (reflexive) form.

Functionals on an l1-normed coordinate space carry the max norm, and the
bidual is identified with the original coordinate space.  The three adjoint
extension steps of a bimodule action are computed by literally composing the
defining formulas rather than shortcutting to the action, so the formula
plumbing itself is what gets exercised:

    step 1:  (x* o a)(x) = x*(a.x)          (x* o x)(a) = x*(x.a)
    step 2:  (x** o x*)(a) = x**(x* o a)    (a** o x*)(x) = a**(x* o x)
    step 3:  (a** o x**)(x*) = a**(x** o x*)
             (x** o a**)(x*) = x**(a** o x*)

``side="left"`` selects the chain that bottoms out in the left action
``a.x`` and extends it to ``a** o x**``; ``side="right"`` extends ``x.a``.
With the regular bimodule these chains realize the first Arens product on
the bidual, which in finite dimensions coincides with the original product.

Topological centers are full spaces here (every linear map between finite
dimensional spaces is weak*-weak* continuous); the center reports carry
witness matrices and say explicitly that the check is the degenerate
finite-dimensional form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algcore import DEFAULT_TOL, FiniteDimAlgebra, Tolerances, l1_norm
from .bimodule import BimoduleAction, regular_action
from .bowtie import BowtieAlgebra, build_bowtie
from .errors import DimensionMismatchError

DEGENERATE_NOTE = (
    "finite-dimensional (degenerate) form: every linear map is w*-w* continuous, "
    "so membership reduces to the existence of the witness matrix"
)


def dual_pair_eval(phi, psi, a, b) -> complex:
    """Evaluation of the product functional: ``(phi, psi)(a, b) = phi(a) + psi(b)``."""
    phi = np.asarray(phi, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if phi.shape != a.shape or psi.shape != b.shape:
        raise DimensionMismatchError(
            f"pairing shapes {phi.shape}/{a.shape} and {psi.shape}/{b.shape}"
        )
    return complex(np.dot(phi, a) + np.dot(psi, b))


def dual_norm(phi) -> float:
    """Max norm, the dual of the coordinate l1 norm."""
    phi = np.asarray(phi, dtype=complex)
    return float(np.max(np.abs(phi))) if phi.size else 0.0


def dual_pair_norm(phi, psi) -> float:
    return max(dual_norm(phi), dual_norm(psi))


def _check(cond: bool, msg: str):
    if not cond:
        raise DimensionMismatchError(msg)


def adjoint1(action: BimoduleAction, xstar, arg, side: str) -> np.ndarray:
    """First adjoint step.

    ``side="left"``: ``arg`` is an algebra element, result is the functional
    ``(x* o a)(x) = x*(a.x)`` on the module.  ``side="right"``: ``arg`` is a
    module element, result is ``(x* o x)(a) = x*(x.a)`` on the algebra.
    """
    xstar = np.asarray(xstar, dtype=complex)
    arg = np.asarray(arg, dtype=complex)
    n, m = action.dim_algebra, action.dim_module
    _check(xstar.shape == (m,), f"functional shape {xstar.shape}, module dim {m}")
    if side == "left":
        _check(arg.shape == (n,), f"algebra element shape {arg.shape}, dim {n}")
        return np.einsum("i,ipq,q->p", arg, action.left, xstar)
    if side == "right":
        _check(arg.shape == (m,), f"module element shape {arg.shape}, dim {m}")
        return np.einsum("p,piq,q->i", arg, action.right, xstar)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def adjoint2(action: BimoduleAction, z, xstar, side: str) -> np.ndarray:
    """Second adjoint step, pairing a bidual element with stacked step-1 output.

    ``side="left"``: ``z`` is in the module bidual, result is the functional
    ``(x** o x*)(a) = x**(x* o a)`` on the algebra.  ``side="right"``: ``z``
    is in the algebra bidual, result is ``(a** o x*)(x) = a**(x* o x)``.
    """
    z = np.asarray(z, dtype=complex)
    xstar = np.asarray(xstar, dtype=complex)
    n, m = action.dim_algebra, action.dim_module
    _check(xstar.shape == (m,), f"functional shape {xstar.shape}, module dim {m}")
    if side == "left":
        _check(z.shape == (m,), f"module bidual shape {z.shape}, dim {m}")
        stacked = np.einsum("ipq,q->ip", action.left, xstar)  # row i holds x* o e_i
        return stacked @ z
    if side == "right":
        _check(z.shape == (n,), f"algebra bidual shape {z.shape}, dim {n}")
        stacked = np.einsum("piq,q->pi", action.right, xstar)  # row p holds x* o f_p
        return stacked @ z
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def adjoint3(action: BimoduleAction, first, second, side: str) -> np.ndarray:
    """Third adjoint step; the result lives in the module bidual.

    ``side="left"``: ``(a** o x**)(x*) = a**(x** o x*)`` with ``first`` in
    the algebra bidual and ``second`` in the module bidual.  ``side="right"``:
    ``(x** o a**)(x*) = x**(a** o x*)`` with the slots reversed.  On
    canonical images the left chain returns the left action and the right
    chain the right action.
    """
    first = np.asarray(first, dtype=complex)
    second = np.asarray(second, dtype=complex)
    n, m = action.dim_algebra, action.dim_module
    if side == "left":
        _check(first.shape == (n,), f"algebra bidual shape {first.shape}, dim {n}")
        _check(second.shape == (m,), f"module bidual shape {second.shape}, dim {m}")
        # row r holds the step-2 functional at the coordinate functional delta_r
        stacked = np.einsum("p,ipr->ri", second, action.left)
        return stacked @ first
    if side == "right":
        _check(first.shape == (m,), f"module bidual shape {first.shape}, dim {m}")
        _check(second.shape == (n,), f"algebra bidual shape {second.shape}, dim {n}")
        stacked = np.einsum("i,pir->rp", second, action.right)
        return stacked @ first
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def arens_first(alg: FiniteDimAlgebra) -> np.ndarray:
    """Structure tensor of the first Arens product on the bidual.

    Assembled pairwise through the three adjoint steps over the regular
    bimodule; under the canonical identification it must reproduce the
    original structure constants.
    """
    reg = regular_action(alg)
    n = alg.dim
    out = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        ei = alg.basis_element(i)
        for j in range(n):
            out[i, j, :] = adjoint3(reg, ei, alg.basis_element(j), "left")
    return out


def bidual_action(action: BimoduleAction) -> BimoduleAction:
    """Extension of the action to the biduals through the adjoint chains."""
    n, m = action.dim_algebra, action.dim_module
    left = np.zeros((n, m, m), dtype=complex)
    right = np.zeros((m, n, m), dtype=complex)
    eye_n = np.eye(n, dtype=complex)
    eye_m = np.eye(m, dtype=complex)
    for i in range(n):
        for p in range(m):
            left[i, p, :] = adjoint3(action, eye_n[i], eye_m[p], "left")
            right[p, i, :] = adjoint3(action, eye_m[p], eye_n[i], "right")
    return BimoduleAction(left, right)


@dataclass(frozen=True)
class CenterReport:
    """A topological center with constructive continuity witnesses.

    ``witnesses[k]`` is the matrix of the relevant circle multiplication by
    the k-th basis element; its existence as a matrix is the finite
    dimensional content of weak*-weak* continuity.
    """

    label: str
    space_dim: int
    center_dim: int
    witnesses: tuple[np.ndarray, ...]
    note: str = DEGENERATE_NOTE

    @property
    def is_full(self) -> bool:
        return self.center_dim == self.space_dim

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "space_dim": self.space_dim,
            "center_dim": self.center_dim,
            "full": bool(self.is_full),
            "note": self.note,
        }


def topological_center(alg: FiniteDimAlgebra) -> CenterReport:
    """First topological center of the bidual algebra (always the full space).

    The report certifies Arens regularity by exhibiting, for each basis
    element, the matrix of circle multiplication by it on the bidual.
    """
    reg = regular_action(alg)
    n = alg.dim
    witnesses = []
    for i in range(n):
        ei = alg.basis_element(i)
        w = np.zeros((n, n), dtype=complex)
        for j in range(n):
            w[:, j] = adjoint3(reg, ei, alg.basis_element(j), "left")
        witnesses.append(w)
    return CenterReport("Z1(A**)", n, n, tuple(witnesses))


def module_topological_center(action: BimoduleAction, which: str) -> CenterReport:
    """Topological center of a module action on the biduals.

    ``which="module"``: elements of the module bidual whose right-chain
    multiplication against the algebra bidual is continuous.
    ``which="algebra"``: elements of the algebra bidual acting continuously
    on the module bidual through the left chain.  Both are full spaces.
    """
    n, m = action.dim_algebra, action.dim_module
    eye_n = np.eye(n, dtype=complex)
    eye_m = np.eye(m, dtype=complex)
    witnesses = []
    if which == "module":
        for p in range(m):
            w = np.zeros((m, n), dtype=complex)
            for j in range(n):
                w[:, j] = adjoint3(action, eye_m[p], eye_n[j], "right")
            witnesses.append(w)
        return CenterReport("Z1_A(B**)", m, m, tuple(witnesses))
    if which == "algebra":
        for i in range(n):
            w = np.zeros((m, m), dtype=complex)
            for q in range(m):
                w[:, q] = adjoint3(action, eye_n[i], eye_m[q], "left")
            witnesses.append(w)
        return CenterReport("Z1_B(A**)", n, n, tuple(witnesses))
    raise ValueError(f"which must be 'module' or 'algebra', got {which!r}")


@dataclass(frozen=True)
class BidualIsomorphismVerdict:
    """Comparison of the bidual of the product with the product of biduals."""

    max_deviation: float
    deviation_tol: float
    isometric: bool
    bidual_action_valid: bool
    identification: tuple[int, ...]
    agree: bool

    def as_dict(self) -> dict:
        return {
            "name": "bidual_isomorphism",
            "verdict": "agree" if self.agree else "mismatch",
            "max_deviation": self.max_deviation,
            "deviation_tol": self.deviation_tol,
            "isometric": bool(self.isometric),
            "bidual_action_valid": bool(self.bidual_action_valid),
            "identification": list(self.identification),
        }


def verify_bidual_isomorphism(
    a: FiniteDimAlgebra,
    b: FiniteDimAlgebra,
    action: BimoduleAction,
    *,
    tol: Tolerances = DEFAULT_TOL,
    deviation_tol: float = 1e-10,
) -> BidualIsomorphismVerdict:
    """Bidual of the product versus the product of biduals, as tensors.

    One side runs the Arens construction on the assembled product; the other
    assembles the product of the two Arens biduals along the extended action
    (re-validating all axioms, which certifies that the bidual action is
    algebraic).  The canonical identification is the identity permutation of
    coordinates; its l1 isometry is checked on the basis and on sampled
    vectors.
    """
    bow = build_bowtie(a, b, action, tol)
    tensor_direct = arens_first(bow.carrier)

    bi_a = FiniteDimAlgebra(arens_first(a), a.basis_labels)
    bi_b = FiniteDimAlgebra(arens_first(b), b.basis_labels)
    bi_act = bidual_action(action)
    bi_bow = build_bowtie(bi_a, bi_b, bi_act, tol)  # raises if the bidual data fail axioms
    tensor_assembled = bi_bow.carrier.mul

    gap = tensor_direct - tensor_assembled
    dev = float(np.max(np.abs(gap))) if gap.size else 0.0

    dim = bow.carrier.dim
    ident = tuple(range(dim))
    perm = np.eye(dim, dtype=complex)[list(ident)]
    rng = np.random.default_rng(0)
    samples = rng.standard_normal((8, dim)) + 1j * rng.standard_normal((8, dim))
    isometric = all(abs(l1_norm(perm @ v) - l1_norm(v)) == 0.0 for v in samples)
    agree = dev <= deviation_tol and isometric
    return BidualIsomorphismVerdict(dev, deviation_tol, isometric, True, ident, agree)


@dataclass(frozen=True)
class CenterDecompositionVerdict:
    """Center of the product bidual versus the product of component centers."""

    lhs_dim: int
    rhs_dim: int
    witness_deviation: float
    deviation_tol: float
    agree: bool
    note: str = DEGENERATE_NOTE

    def as_dict(self) -> dict:
        return {
            "name": "center_decomposition",
            "verdict": "agree" if self.agree else "mismatch",
            "lhs_dim": self.lhs_dim,
            "rhs_dim": self.rhs_dim,
            "witness_deviation": self.witness_deviation,
            "deviation_tol": self.deviation_tol,
            "note": self.note,
        }


def verify_center_decomposition(
    a: FiniteDimAlgebra,
    b: FiniteDimAlgebra,
    action: BimoduleAction,
    *,
    tol: Tolerances = DEFAULT_TOL,
    deviation_tol: float = 1e-10,
) -> CenterDecompositionVerdict:
    """Degenerate-form center comparison.

    In finite dimensions every center is the full space, so the set equality
    reduces to dimension bookkeeping plus agreement of the witness matrices
    computed on the two sides of the bidual identification.
    """
    bow = build_bowtie(a, b, action, tol)
    lhs = topological_center(FiniteDimAlgebra(arens_first(bow.carrier)))

    z1a = topological_center(a)
    z1b_on_a = module_topological_center(action, "algebra")
    z1a_on_b = module_topological_center(action, "module")
    inter_dim = min(z1a.center_dim, z1b_on_a.center_dim)  # both full spaces of A**
    rhs_dim = inter_dim + z1a_on_b.center_dim

    bi_a = FiniteDimAlgebra(arens_first(a), a.basis_labels)
    bi_b = FiniteDimAlgebra(arens_first(b), b.basis_labels)
    bi_bow = build_bowtie(bi_a, bi_b, bidual_action(action), tol)
    rhs_witnesses = topological_center(bi_bow.carrier).witnesses

    dev = 0.0
    for wl, wr in zip(lhs.witnesses, rhs_witnesses):
        if wl.size:
            dev = max(dev, float(np.max(np.abs(wl - wr))))
    agree = lhs.center_dim == rhs_dim and dev <= deviation_tol
    return CenterDecompositionVerdict(lhs.center_dim, rhs_dim, dev, deviation_tol, agree)
