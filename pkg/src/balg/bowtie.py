"""The bowtie product of two algebras along an algebraic bimodule action.

Given algebras ``A`` (dim n) and ``B`` (dim m) with an algebraic bimodule
action of ``A`` on ``B``, the product on ``A x B`` is

    (a1, b1)(a2, b2) = (a1 a2, a1.b2 + b1.a2 + b1 b2)

with the l1-sum norm ``||(a, b)|| = ||a|| + ||b||``.  The carrier is an
ordinary `FiniteDimAlgebra` of dimension ``n + m`` whose first block of
coordinates is ``A`` and whose last block is ``B``; ``B`` sits inside as a
two-sided ideal and projecting to the first block is a homomorphism onto
``A``.

The module also provides the four standard families (direct product, module
extension, character Lau product, homomorphism Lau product) and executable
checkers for the commutativity, identity, and left-identity
characterizations of the product in terms of its ingredients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _linalg
from .algcore import (
    DEFAULT_TOL,
    AffineSubspace,
    FiniteDimAlgebra,
    Tolerances,
    as_element,
    find_identity,
    find_left_identities,
    is_commutative,
    validate,
)
from .bimodule import (
    BimoduleAction,
    act_left,
    act_right,
    algebraic_report,
    is_symmetric,
    validate_bimodule,
    zero_action,
)
from .catalog import zero_mult_algebra
from .errors import InvalidActionError


@dataclass(frozen=True, eq=False)
class BowtieAlgebra:
    """Assembled product together with its ingredients and block maps."""

    algebra_a: FiniteDimAlgebra
    algebra_b: FiniteDimAlgebra
    action: BimoduleAction
    carrier: FiniteDimAlgebra

    @property
    def dim_a(self) -> int:
        return self.algebra_a.dim

    @property
    def dim_b(self) -> int:
        return self.algebra_b.dim

    def embed_a(self, a) -> np.ndarray:
        a = as_element(self.algebra_a, a)
        out = np.zeros(self.carrier.dim, dtype=complex)
        out[: self.dim_a] = a
        return out

    def embed_b(self, b) -> np.ndarray:
        b = as_element(self.algebra_b, b)
        out = np.zeros(self.carrier.dim, dtype=complex)
        out[self.dim_a :] = b
        return out

    def project_a(self, v) -> np.ndarray:
        v = as_element(self.carrier, v)
        return v[: self.dim_a].copy()

    def project_b(self, v) -> np.ndarray:
        v = as_element(self.carrier, v)
        return v[self.dim_a :].copy()

    def split(self, v) -> tuple[np.ndarray, np.ndarray]:
        return self.project_a(v), self.project_b(v)


def _assemble_tensor(
    a: FiniteDimAlgebra, b: FiniteDimAlgebra, action: BimoduleAction
) -> np.ndarray:
    n, m = a.dim, b.dim
    c = np.zeros((n + m, n + m, n + m), dtype=complex)
    c[:n, :n, :n] = a.mul
    c[:n, n:, n:] = action.left
    c[n:, :n, n:] = action.right
    c[n:, n:, n:] = b.mul
    return c


def build_bowtie(
    a: FiniteDimAlgebra,
    b: FiniteDimAlgebra,
    action: BimoduleAction,
    tol: Tolerances = DEFAULT_TOL,
) -> BowtieAlgebra:
    """Assemble the product, refusing constructively when an axiom fails.

    The carrier's associativity is re-verified numerically after assembly,
    independently of the axiom checks that imply it.
    """
    failures: list[str] = []
    for alg, name in ((a, "A"), (b, "B")):
        rep = validate(alg, tol)
        failures += [f"{name}:{f}" for f in rep.failed_names()]
    failures += list(validate_bimodule(a, b, action, tol).failed_names())
    failures += list(algebraic_report(a, b, action, tol).failed_names())
    if failures:
        raise InvalidActionError(
            "cannot build bowtie product, failed axioms: " + ", ".join(failures),
            tuple(failures),
        )

    labels = tuple(f"A.{s}" for s in a.basis_labels) + tuple(f"B.{s}" for s in b.basis_labels)
    carrier = FiniteDimAlgebra(_assemble_tensor(a, b, action), labels)
    rep = validate(carrier, tol)
    if not rep.passed:
        raise InvalidActionError(
            "assembled product failed re-validation: " + ", ".join(rep.failed_names()),
            rep.failed_names(),
        )
    return BowtieAlgebra(a, b, action, carrier)


def direct_product(
    a: FiniteDimAlgebra, b: FiniteDimAlgebra, tol: Tolerances = DEFAULT_TOL
) -> BowtieAlgebra:
    """Componentwise product; the zero action."""
    return build_bowtie(a, b, zero_action(a.dim, b.dim), tol)


def module_extension(
    a: FiniteDimAlgebra, action: BimoduleAction, tol: Tolerances = DEFAULT_TOL
) -> BowtieAlgebra:
    """Extension of ``a`` by a bimodule carrying the zero product."""
    x = zero_mult_algebra(action.dim_module)
    return build_bowtie(a, x, action, tol)


def _functional_coeffs(theta) -> np.ndarray:
    return np.asarray(getattr(theta, "coeffs", theta), dtype=complex)


def character_residual(alg: FiniteDimAlgebra, phi: np.ndarray) -> float:
    """Max multiplicativity defect ``|phi(e_i e_j) - phi(e_i) phi(e_j)|``."""
    phi = np.asarray(phi, dtype=complex)
    if alg.dim == 0:
        return 0.0
    gap = np.einsum("ijk,k->ij", alg.mul, phi) - np.outer(phi, phi)
    return float(np.max(np.abs(gap))) if gap.size else 0.0


def theta_lau(
    a: FiniteDimAlgebra,
    b: FiniteDimAlgebra,
    theta,
    tol: Tolerances = DEFAULT_TOL,
) -> BowtieAlgebra:
    """Lau product along a character: ``a.b = b.a = theta(a) b``.

    ``theta`` may be a `spectrum.Character` or a raw coefficient vector; it is
    re-verified to be a nonzero multiplicative functional of norm at most 1.
    """
    phi = _functional_coeffs(theta)
    phi = as_element(a, phi)
    if phi.size == 0 or float(np.max(np.abs(phi))) <= tol.delta_dedup:
        raise InvalidActionError("theta is the zero functional", ("theta_nonzero",))
    res = character_residual(a, phi)
    if res > tol.tau_char:
        raise InvalidActionError(
            f"theta is not multiplicative (residual {res:.3e})", ("theta_multiplicative",)
        )
    if float(np.max(np.abs(phi))) > 1.0 + tol.tau_norm:
        raise InvalidActionError("theta has dual norm above 1", ("theta_contractive",))
    n, m = a.dim, b.dim
    eye = np.eye(m, dtype=complex)
    left = np.einsum("i,pq->ipq", phi, eye)
    right = left.transpose(1, 0, 2).copy()
    return build_bowtie(a, b, BimoduleAction(left, right), tol)


def t_lau(
    a: FiniteDimAlgebra,
    b: FiniteDimAlgebra,
    hom: np.ndarray,
    tol: Tolerances = DEFAULT_TOL,
) -> BowtieAlgebra:
    """Lau product along an algebra homomorphism ``T``: ``a.b = b.a = T(a) b``.

    ``hom`` is the (m, n) matrix whose column ``i`` holds the coordinates of
    ``T(e_i)`` in the basis of ``b``.  ``T`` must be multiplicative with l1
    operator norm at most 1; both are rejected otherwise.  When ``b`` is
    noncommutative and the image of ``T`` is not central, the symmetric
    action violates the compatibility axioms and assembly refuses.
    """
    t = np.asarray(hom, dtype=complex)
    n, m = a.dim, b.dim
    if t.shape != (m, n):
        raise InvalidActionError(
            f"homomorphism matrix has shape {t.shape}, expected ({m}, {n})", ("t_shape",)
        )
    # T(e_i e_j) = T(e_i) T(e_j)
    lhs = np.einsum("ijk,pk->ijp", a.mul, t)
    rhs = np.einsum("pi,qj,pqr->ijr", t, t, b.mul)
    res = float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0
    if res > tol.tau_assoc:
        raise InvalidActionError(
            f"T is not an algebra homomorphism (residual {res:.3e})", ("t_multiplicative",)
        )
    colnorm = float(np.abs(t).sum(axis=0).max()) if t.size else 0.0
    if colnorm > 1.0 + tol.tau_norm:
        raise InvalidActionError(f"T has l1 operator norm {colnorm:.6f} > 1", ("t_contractive",))
    left = np.einsum("ri,rpq->ipq", t, b.mul)
    right = left.transpose(1, 0, 2).copy()
    return build_bowtie(a, b, BimoduleAction(left, right), tol)


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Both sides of a biconditional, with an agreement flag and residuals."""

    name: str
    bowtie_side: bool
    component_side: bool
    agree: bool
    details: dict

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "bowtie_side": bool(self.bowtie_side),
            "component_side": bool(self.component_side),
            "verdict": "agree" if self.agree else "mismatch",
            "details": self.details,
        }


def check_commutativity_criterion(
    bow: BowtieAlgebra, tol: Tolerances = DEFAULT_TOL
) -> EquivalenceVerdict:
    """Product commutative iff both factors commutative and the action symmetric."""
    lhs = is_commutative(bow.carrier, tol)
    comm_a = is_commutative(bow.algebra_a, tol)
    comm_b = is_commutative(bow.algebra_b, tol)
    sym = is_symmetric(bow.action, tol)
    rhs = comm_a and comm_b and sym
    return EquivalenceVerdict(
        "commutativity",
        lhs,
        rhs,
        lhs == rhs,
        {"commutative_a": comm_a, "commutative_b": comm_b, "symmetric_action": sym},
    )


def _identity_conditions_system(bow: BowtieAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """Linear system expressing the componentwise identity conditions.

    Unknown (a0, b0): a0 is a two-sided identity of A; the actions kill b0;
    a0.f + b0 f = f and f.a0 + f b0 = f on the basis of B.
    """
    a, b, action = bow.algebra_a, bow.algebra_b, bow.action
    n, m = a.dim, b.dim
    rows = []
    rhs = []
    eye_n = np.eye(n, dtype=complex).reshape(n * n)
    eye_m = np.eye(m, dtype=complex).reshape(m * m)

    def block(mat_a, mat_b, r):
        rows.append(np.hstack([mat_a, mat_b]))
        rhs.append(r)

    # a0 e_j = e_j and e_i a0 = e_i
    block(a.mul.transpose(1, 2, 0).reshape(n * n, n), np.zeros((n * n, m)), eye_n)
    block(a.mul.transpose(0, 2, 1).reshape(n * n, n), np.zeros((n * n, m)), eye_n)
    # b0 . e_i = 0 and e_i . b0 = 0
    block(np.zeros((n * m, n)), action.right.transpose(1, 2, 0).reshape(n * m, m), np.zeros(n * m))
    block(np.zeros((n * m, n)), action.left.transpose(0, 2, 1).reshape(n * m, m), np.zeros(n * m))
    # a0 . f_p + b0 f_p = f_p  and  f_p . a0 + f_p b0 = f_p
    block(
        action.left.transpose(1, 2, 0).reshape(m * m, n),
        b.mul.transpose(1, 2, 0).reshape(m * m, m),
        eye_m,
    )
    block(
        action.right.transpose(0, 2, 1).reshape(m * m, n),
        b.mul.transpose(0, 2, 1).reshape(m * m, m),
        eye_m,
    )
    return np.vstack(rows), np.concatenate(rhs)


def _left_identity_conditions_system(bow: BowtieAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """Left-sided variant: a0 left identity of A, b0.e_i = 0, a0.f + b0 f = f."""
    a, b, action = bow.algebra_a, bow.algebra_b, bow.action
    n, m = a.dim, b.dim
    rows = []
    rhs = []
    rows.append(
        np.hstack([a.mul.transpose(1, 2, 0).reshape(n * n, n), np.zeros((n * n, m))])
    )
    rhs.append(np.eye(n, dtype=complex).reshape(n * n))
    rows.append(
        np.hstack(
            [np.zeros((n * m, n)), action.right.transpose(1, 2, 0).reshape(n * m, m)]
        )
    )
    rhs.append(np.zeros(n * m))
    rows.append(
        np.hstack(
            [
                action.left.transpose(1, 2, 0).reshape(m * m, n),
                b.mul.transpose(1, 2, 0).reshape(m * m, m),
            ]
        )
    )
    rhs.append(np.eye(m, dtype=complex).reshape(m * m))
    return np.vstack(rows), np.concatenate(rhs)


def _identity_residual(alg: FiniteDimAlgebra, x: np.ndarray, sides: str = "leftright") -> float:
    """Max defect of ``x`` acting as an identity on the requested sides."""
    if alg.dim == 0:
        return 0.0
    eye = np.eye(alg.dim)
    res = 0.0
    if "left" in sides:
        res = max(res, float(np.max(np.abs(alg.left_mult_matrix(x) - eye))))
    if "right" in sides:
        res = max(res, float(np.max(np.abs(alg.right_mult_matrix(x) - eye))))
    return res


def check_identity_criterion(
    bow: BowtieAlgebra, tol: Tolerances = DEFAULT_TOL
) -> EquivalenceVerdict:
    """Identity of the product iff the componentwise conditions hold.

    Forward: a found identity (a0, b0) must satisfy the conditions.
    Converse: a solution of the conditions must be an identity of the carrier.
    The two candidates must coincide (identities are unique).
    """
    slack = 100.0 * tol.tau_solve
    ident = find_identity(bow.carrier, tol)
    mat, rhs = _identity_conditions_system(bow)
    cand, cond_res = _linalg.lstsq_solve(mat, rhs)
    cond_ok = cond_res <= tol.tau_solve

    details: dict = {"conditions_residual": cond_res}
    agree = (ident is not None) == cond_ok
    if ident is not None:
        forward = float(np.max(np.abs(mat @ ident - rhs), initial=0.0))
        details["forward_residual"] = forward
        details["identity"] = ident
        agree = agree and forward <= slack
        if cond_ok:
            agree = agree and float(np.max(np.abs(cand - ident), initial=0.0)) <= slack
    if cond_ok:
        converse = _identity_residual(bow.carrier, cand)
        details["converse_residual"] = converse
        agree = agree and converse <= slack
    return EquivalenceVerdict("identity", ident is not None, cond_ok, agree, details)


def _left_identity_set(mat, rhs, tol: Tolerances) -> AffineSubspace | None:
    x, res = _linalg.lstsq_solve(mat, rhs)
    if res > tol.tau_solve:
        return None
    return AffineSubspace(x, _linalg.nullspace_rows(mat, tol.rank_rtol))


def check_left_identity_criterion(
    bow: BowtieAlgebra, tol: Tolerances = DEFAULT_TOL
) -> EquivalenceVerdict:
    """Left identities of the product match the componentwise conditions.

    Compares the affine solution set of ``x (.) = (.)`` on the carrier with
    the solution set of the three left-sided conditions, as affine subspaces.
    """
    slack = 1e-7
    carrier_set = find_left_identities(bow.carrier, tol)
    mat, rhs = _left_identity_conditions_system(bow)
    cond_set = _left_identity_set(mat, rhs, tol)

    details: dict = {}
    if carrier_set is None and cond_set is None:
        return EquivalenceVerdict("left_identity", False, False, True, details)
    agree = (carrier_set is not None) and (cond_set is not None)
    if agree:
        details["carrier_dim"] = carrier_set.dim
        details["conditions_dim"] = cond_set.dim
        agree = (
            carrier_set.dim == cond_set.dim
            and carrier_set.contains(cond_set.point, slack)
            and cond_set.contains(carrier_set.point, slack)
            and _linalg.subspaces_equal(carrier_set.directions, cond_set.directions, slack)
        )
    return EquivalenceVerdict(
        "left_identity", carrier_set is not None, cond_set is not None, agree, details
    )
