"""Gelfand spectrum, Jacobson radical, and semisimplicity.

Characters (nonzero multiplicative functionals) of an algebra ``A`` are
computed by a deterministic pipeline: adjoin an identity, quotient by the
commutator ideal, quotient by the Jacobson radical, and read the characters
of the resulting commutative semisimple unital algebra off the joint left
eigenvectors of a random combination of multiplication operators.  Both
quotient steps are harmless because characters annihilate commutators and
radical elements.

An independent multi-start Newton solver (`characters_bruteforce`) attacks
the defining quadratic system directly and serves as a cross-check oracle
at small dimensions.

The radical is computed in the unitization through the trace form
``G(x, y) = trace(L_x L_y)`` of the left regular representation, whose
kernel is exactly the radical over a field of characteristic zero; the
returned subspace is re-verified to be a nilpotent ideal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import _linalg
from .algcore import (
    DEFAULT_TOL,
    FiniteDimAlgebra,
    Tolerances,
    find_identity,
    is_commutative,
    multiply,
    unitize,
    validate,
)
from .bimodule import BimoduleAction, is_symmetric
from .bowtie import BowtieAlgebra, EquivalenceVerdict, build_bowtie, character_residual
from .errors import (
    HypothesisViolationError,
    RadicalVerificationError,
    SolverRetryError,
)


@dataclass(frozen=True, eq=False)
class Character:
    """Verified nonzero multiplicative functional with its residual certificate."""

    coeffs: np.ndarray
    residual: float

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex))

    def __call__(self, x) -> complex:
        return complex(np.dot(self.coeffs, np.asarray(x, dtype=complex)))


@dataclass(frozen=True, eq=False)
class GelfandSet:
    """Finite deduplicated set of characters with its tolerance metadata."""

    characters: tuple[Character, ...]
    char_tol: float
    dedup_tol: float

    def __len__(self) -> int:
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    def coeff_rows(self, dim: int | None = None) -> np.ndarray:
        if not self.characters:
            return np.zeros((0, dim or 0), dtype=complex)
        return np.array([c.coeffs for c in self.characters])

    def as_dict(self) -> dict:
        return {
            "count": len(self.characters),
            "characters": [
                {
                    "coeffs": [[float(z.real), float(z.imag)] for z in c.coeffs],
                    "residual": float(c.residual),
                }
                for c in self.characters
            ],
        }


def _sort_key(coeffs: np.ndarray) -> tuple:
    return tuple((round(float(z.real), 9), round(float(z.imag), 9)) for z in coeffs)


def _dedup_and_sort(cands: list[Character], radius: float) -> tuple[Character, ...]:
    kept: list[Character] = []
    for c in sorted(cands, key=lambda c: _sort_key(c.coeffs)):
        if all(np.max(np.abs(c.coeffs - k.coeffs), initial=0.0) > radius for k in kept):
            kept.append(c)
    return tuple(kept)


def make_gelfand_set(
    cands: list[Character], tol: Tolerances, dedup_radius: float | None = None
) -> GelfandSet:
    """Drop zero functionals, enforce residual bounds, deduplicate, sort."""
    radius = tol.delta_dedup if dedup_radius is None else dedup_radius
    good = [
        c
        for c in cands
        if c.coeffs.size
        and float(np.max(np.abs(c.coeffs))) > radius
        and c.residual <= tol.tau_char
    ]
    return GelfandSet(_dedup_and_sort(good, radius), tol.tau_char, radius)


@dataclass(frozen=True, eq=False)
class Ideal:
    """Subspace closed under multiplication by the parent algebra.

    ``basis`` holds orthonormal rows.  Use `Ideal.verified` to construct with
    the closure invariant checked.
    """

    basis: np.ndarray
    parent: FiniteDimAlgebra

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @staticmethod
    def verified(parent: FiniteDimAlgebra, rows: np.ndarray, tol: Tolerances) -> "Ideal":
        basis = _linalg.orthonormal_rows(np.asarray(rows, dtype=complex).reshape(-1, parent.dim), tol.rank_rtol)
        res = ideal_closure_residual(parent, basis)
        if res > 100.0 * tol.tau_assoc:
            raise ValueError(f"subspace is not an ideal (closure residual {res:.3e})")
        return Ideal(basis, parent)


def ideal_closure_residual(alg: FiniteDimAlgebra, rows: np.ndarray) -> float:
    """Max distance of any basis-by-subspace product from the subspace."""
    if rows.shape[0] == 0 or alg.dim == 0:
        return 0.0
    lefts = np.einsum("rj,ijk->rik", rows, alg.mul).reshape(-1, alg.dim)
    rights = np.einsum("rj,jik->rik", rows, alg.mul).reshape(-1, alg.dim)
    res = 0.0
    for v in np.vstack([lefts, rights]):
        res = max(res, _linalg.residual_outside(v, rows))
    return res


def _multiplicative_closure(alg: FiniteDimAlgebra, rows: np.ndarray, tol: Tolerances) -> np.ndarray:
    rows = _linalg.orthonormal_rows(rows, tol.rank_rtol)
    for _ in range(alg.dim + 1):
        if rows.shape[0] == 0:
            return rows
        lefts = np.einsum("rj,ijk->rik", rows, alg.mul).reshape(-1, alg.dim)
        rights = np.einsum("rj,jik->rik", rows, alg.mul).reshape(-1, alg.dim)
        grown = _linalg.orthonormal_rows(np.vstack([rows, lefts, rights]), tol.rank_rtol)
        if grown.shape[0] == rows.shape[0]:
            return rows
        rows = grown
    return rows


def commutator_ideal(alg: FiniteDimAlgebra, tol: Tolerances = DEFAULT_TOL) -> Ideal:
    """Smallest two-sided ideal containing all basis commutators."""
    n = alg.dim
    comms = (alg.mul - alg.mul.transpose(1, 0, 2)).reshape(n * n, n)
    rows = _multiplicative_closure(alg, comms, tol)
    return Ideal.verified(alg, rows, tol)


@dataclass(frozen=True, eq=False)
class Quotient:
    """Quotient algebra with the projection homomorphism and a linear lift."""

    algebra: FiniteDimAlgebra
    projection: np.ndarray  # (r, n): coordinates of x + I
    lift: np.ndarray        # (n, r): representative of each quotient basis vector


def _coordinate_complement(ideal_rows: np.ndarray, n: int, rtol: float) -> list[int]:
    # Greedily select coordinates whose span complements the ideal.
    q = _linalg.orthonormal_rows(ideal_rows, rtol)
    idxs: list[int] = []
    for i in range(n):
        e = np.zeros(n, dtype=complex)
        e[i] = 1.0
        r = e - _linalg.project_onto_rows(e, q)
        nrm = np.linalg.norm(r)
        if nrm > 1e-6:
            idxs.append(i)
            q = np.vstack([q, r / nrm])
    return idxs


def quotient(
    alg: FiniteDimAlgebra, ideal: Ideal, tol: Tolerances = DEFAULT_TOL
) -> Quotient:
    """Algebra on a coordinate complement of the ideal, with induced constants.

    The complement is chosen among standard basis vectors, so quotients by
    coordinate-aligned ideals reproduce the remaining block exactly.  The
    quotient basis is uniformly rescaled when needed to restore the l1 bound.
    """
    if ideal.parent is not alg and ideal.parent.dim != alg.dim:
        raise ValueError("ideal does not belong to this algebra")
    res = ideal_closure_residual(alg, ideal.basis)
    if res > 100.0 * tol.tau_assoc:
        raise ValueError(f"not an ideal (closure residual {res:.3e})")
    n = alg.dim
    idxs = _coordinate_complement(ideal.basis, n, tol.rank_rtol)
    r = len(idxs)
    if r + ideal.dim != n:
        raise RadicalVerificationError(
            f"complement selection found {r} coordinates for codimension {n - ideal.dim}"
        )
    u = np.zeros((n, r), dtype=complex)
    for a, i in enumerate(idxs):
        u[i, a] = 1.0
    m = np.hstack([u, ideal.basis.T]) if ideal.dim else u
    minv = np.linalg.inv(m)
    proj = minv[:r, :]
    prods = np.einsum("ia,jb,ijl->abl", u, u, alg.mul)
    c = np.einsum("abl,rl->abr", prods, proj)
    lift = u
    if r:
        rowmax = float(np.abs(c).sum(axis=2).max())
        if rowmax > 1.0:
            c = c / rowmax
            proj = proj * rowmax
            lift = u / rowmax
    labels = tuple(f"[{alg.basis_labels[i]}]" for i in idxs)
    return Quotient(FiniteDimAlgebra(c, labels), proj, lift)


def jacobson_radical(alg: FiniteDimAlgebra, tol: Tolerances = DEFAULT_TOL) -> Ideal:
    """Radical via the trace form of the left regular representation.

    Computed in the unitization; the raw kernel is re-verified to be a
    nilpotent ideal, and verification failure raises rather than returning
    an uncertified subspace.
    """
    n = alg.dim
    if n == 0:
        return Ideal(np.zeros((0, 0), dtype=complex), alg)
    sharp, _ = unitize(alg)
    lmats = sharp.mul.transpose(0, 2, 1)  # stack of left multiplication matrices
    gram = np.einsum("akj,bjk->ab", lmats, lmats)
    rows = _linalg.nullspace_rows(gram[1:, :].T, tol.rank_rtol)
    try:
        rad = Ideal.verified(alg, rows, tol)
    except ValueError as exc:
        raise RadicalVerificationError(str(exc)) from exc
    _verify_nilpotent(alg, rad.basis, tol)
    return rad


def _verify_nilpotent(alg: FiniteDimAlgebra, rows: np.ndarray, tol: Tolerances) -> None:
    power = rows
    for _ in range(alg.dim + 1):
        if power.shape[0] == 0:
            return
        prods = np.einsum("pj,rl,jlk->prk", power, rows, alg.mul).reshape(-1, alg.dim)
        nxt = _linalg.orthonormal_rows(prods, tol.rank_rtol)
        if nxt.shape[0] >= power.shape[0]:
            raise RadicalVerificationError(
                f"radical candidate of dim {rows.shape[0]} is not nilpotent "
                f"(power stabilized at dim {nxt.shape[0]})"
            )
        power = nxt
    if power.shape[0]:
        raise RadicalVerificationError("nilpotency not reached within dimension bound")


def is_semisimple(alg: FiniteDimAlgebra, tol: Tolerances = DEFAULT_TOL) -> bool:
    return jacobson_radical(alg, tol).dim == 0


def _characters_semisimple_commutative(
    alg: FiniteDimAlgebra, rng: np.random.Generator, tol: Tolerances, seed: int
) -> list[tuple[np.ndarray, float]]:
    """Characters of a commutative semisimple unital algebra.

    Left eigenvectors of a random real combination of left multiplication
    operators, normalized at the identity.  Retries with a fresh combination
    when eigenvalues collide or a vector fails the multiplicativity check.
    """
    d = alg.dim
    if d == 0:
        return []
    unit = find_identity(alg, tol)
    if unit is None:
        raise SolverRetryError("quotient algebra unexpectedly lost its identity", seed)
    lstack = alg.mul.transpose(0, 2, 1)
    for _ in range(tol.retry_limit):
        t = rng.standard_normal(d)
        m = np.einsum("a,akj->kj", t, lstack)
        lam, vecs = np.linalg.eig(m.T)
        if d > 1:
            gaps = np.abs(lam[:, None] - lam[None, :]) + np.eye(d)
            if float(gaps.min()) <= 1e-8 * (1.0 + float(np.abs(lam).max())):
                continue
        out = []
        ok = True
        for k in range(d):
            chi = vecs[:, k]
            z = np.dot(chi, unit)
            if abs(z) < 1e-8:
                ok = False
                break
            chi = chi / z
            res = character_residual(alg, chi)
            if res > tol.tau_char:
                ok = False
                break
            out.append((chi, res))
        if ok:
            return out
    raise SolverRetryError(
        "eigenvector extraction failed after retry budget", seed
    )


def characters(alg: FiniteDimAlgebra, *, seed: int = 0, tol: Tolerances = DEFAULT_TOL) -> GelfandSet:
    """All characters of ``alg``.

    Pipeline: unitize; quotient by the commutator ideal, then by the radical;
    extract characters of the resulting algebra from joint left eigenvectors;
    pull back along the projections, restrict to ``alg``, drop the zero
    restriction, verify, and deduplicate.
    """
    rng = np.random.default_rng(seed)
    sharp, _ = unitize(alg)
    comm = commutator_ideal(sharp, tol)
    q1 = quotient(sharp, comm, tol)
    rad = jacobson_radical(q1.algebra, tol)
    q2 = quotient(q1.algebra, rad, tol)
    pulled = q2.projection @ q1.projection  # (d, n+1)

    cands: list[Character] = []
    for chi, _ in _characters_semisimple_commutative(q2.algebra, rng, tol, seed):
        on_sharp = pulled.T @ chi
        phi = on_sharp[1:]
        if phi.size == 0 or float(np.max(np.abs(phi))) <= tol.delta_dedup:
            continue  # the added identity's own character restricts to zero
        res = character_residual(alg, phi)
        if res > tol.tau_char:
            raise SolverRetryError(
                f"pulled-back character failed verification (residual {res:.3e})", seed
            )
        cands.append(Character(phi, res))
    return make_gelfand_set(cands, tol)


#: Localization radius of the Newton oracle.  A residual-driven solver in
#: double precision cannot place an m-fold degenerate root more accurately
#: than about eps**(1/m); with dim <= 4 the multiplicity can reach 4, so the
#: oracle only distinguishes roots to about 1e-3.
ORACLE_RESOLUTION = 1e-3


def characters_bruteforce(
    alg: FiniteDimAlgebra,
    *,
    seed: int = 0,
    starts: int | None = None,
    tol: Tolerances = DEFAULT_TOL,
    resolution: float = ORACLE_RESOLUTION,
) -> GelfandSet:
    """Independent oracle: multi-start damped Newton on the quadratic system.

    Solves ``phi_i phi_j = sum_k mul[i, j, k] phi_k`` from random complex
    starts and keeps converged nonzero solutions, deduplicated at the
    oracle's own `resolution` (see `ORACLE_RESOLUTION`).  Possibly
    incomplete, since a start may miss a root, so it serves as a containment
    oracle: its output is expected to be a subset of `characters` up to the
    resolution.  Limited to dimension 4.
    """
    n = alg.dim
    if n > 4:
        raise ValueError("brute-force character search is limited to dim <= 4")
    if n == 0:
        return GelfandSet((), tol.tau_char, resolution)
    rng = np.random.default_rng(seed)
    s = starts if starts is not None else tol.newton_starts
    phi = rng.standard_normal((s, n)) + 1j * rng.standard_normal((s, n))
    eye = np.eye(n)

    def residuals(p):
        f = np.einsum("si,sj->sij", p, p) - np.einsum("ijk,sk->sij", alg.mul, p)
        return f, np.abs(f).reshape(s, -1).max(axis=1)

    # Gauss-Newton steps through a batched SVD pseudoinverse.  Degenerate
    # roots converge only linearly, so run a fixed iteration budget instead
    # of stopping at the residual threshold.
    f, res = residuals(phi)
    for _ in range(80):
        jac = (
            np.einsum("ik,sj->sijk", eye, phi)
            + np.einsum("jk,si->sijk", eye, phi)
            - alg.mul[None, :, :, :]
        ).reshape(s, n * n, n)
        ff = f.reshape(s, n * n)
        u, sv, vh = np.linalg.svd(jac, full_matrices=False)
        keep = sv > 1e-13 * sv[:, :1]
        sinv = np.where(keep, 1.0 / np.where(sv == 0.0, 1.0, sv), 0.0)
        coeff = np.einsum("ski,sk->si", u.conj(), ff) * sinv
        step = np.einsum("sij,si->sj", vh.conj(), coeff)
        lam = np.ones(s)
        for _ in range(7):
            trial = phi - lam[:, None] * step
            f_t, res_t = residuals(trial)
            worse = res_t > res
            if not worse.any():
                break
            lam[worse] *= 0.5
        improved = res_t <= res
        phi = np.where(improved[:, None], trial, phi)
        f, res = residuals(phi)

    cands = [
        Character(phi[k], float(res[k]))
        for k in range(s)
        if res[k] <= tol.newton_residual and float(np.max(np.abs(phi[k]))) > resolution
    ]
    return make_gelfand_set(cands, tol, dedup_radius=resolution)


def _product_functional(phi: np.ndarray, psi: np.ndarray) -> np.ndarray:
    return np.concatenate([np.asarray(phi, complex), np.asarray(psi, complex)])


def gelfand_parts(
    a: FiniteDimAlgebra,
    b: FiniteDimAlgebra,
    action: BimoduleAction,
    *,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOL,
) -> tuple[GelfandSet, GelfandSet]:
    """The two predicted pieces of the product's Gelfand space.

    First piece: characters of ``a`` extended by zero on ``b``.  Second
    piece: pairs ``(phi, psi)`` with ``psi`` a character of ``b``, ``phi`` a
    character of ``a`` or zero, and ``psi(a.b) = psi(b.a) = phi(a) psi(b)``
    on all basis pairs.  Both are packaged as functionals on the product via
    ``(phi, psi)(a, b) = phi(a) + psi(b)``; their residual metadata comes
    from the component characters and the coupling condition, not from the
    assembled product.
    """
    chars_a = characters(a, seed=seed, tol=tol)
    chars_b = characters(b, seed=seed + 1, tol=tol)
    n = a.dim

    lifted = [
        Character(_product_functional(c.coeffs, np.zeros(b.dim)), c.residual) for c in chars_a
    ]

    paired: list[Character] = []
    phis = [(c.coeffs, c.residual) for c in chars_a] + [(np.zeros(n, dtype=complex), 0.0)]
    for psi_char in chars_b:
        psi = psi_char.coeffs
        lhs_left = np.einsum("ipq,q->ip", action.left, psi)
        lhs_right = np.einsum("piq,q->ip", action.right, psi)
        for phi, phi_res in phis:
            target = np.outer(phi, psi)
            coupling = max(
                float(np.max(np.abs(lhs_left - target), initial=0.0)),
                float(np.max(np.abs(lhs_right - target), initial=0.0)),
            )
            if coupling <= tol.tau_char:
                paired.append(
                    Character(
                        _product_functional(phi, psi),
                        max(phi_res, psi_char.residual, coupling),
                    )
                )
    return (
        GelfandSet(tuple(lifted), tol.tau_char, tol.delta_dedup),
        make_gelfand_set(paired, tol),
    )


@dataclass(frozen=True)
class SetMatchVerdict:
    """Outcome of comparing two finite functional sets up to a tolerance."""

    name: str
    equal: bool
    size_left: int
    size_right: int
    max_match_distance: float | None
    details: dict

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": "agree" if self.equal else "mismatch",
            "size_left": self.size_left,
            "size_right": self.size_right,
            "max_match_distance": self.max_match_distance,
            "details": self.details,
        }


def match_functional_sets(
    left: np.ndarray, right: np.ndarray, tolerance: float
) -> tuple[bool, float | None]:
    """Optimal assignment between two stacked coefficient sets, max-norm metric."""
    if left.shape[0] != right.shape[0]:
        return False, None
    if left.shape[0] == 0:
        return True, 0.0
    cost = np.abs(left[:, None, :] - right[None, :, :]).max(axis=2)
    rows, cols = linear_sum_assignment(cost)
    worst = float(cost[rows, cols].max())
    return worst <= tolerance, worst


def verify_gelfand_decomposition(
    a: FiniteDimAlgebra,
    b: FiniteDimAlgebra,
    action: BimoduleAction,
    *,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOL,
) -> SetMatchVerdict:
    """Characters of the product versus the predicted two-piece union.

    The left side runs the full character pipeline on the assembled product;
    the right side is `gelfand_parts`, computed only from the factors and the
    action.  Sets are compared by optimal max-norm matching.
    """
    bow = build_bowtie(a, b, action, tol)
    direct = characters(bow.carrier, seed=seed + 2, tol=tol)
    lifted, paired = gelfand_parts(a, b, action, seed=seed, tol=tol)
    predicted = make_gelfand_set(list(lifted) + list(paired), tol)

    dim = bow.carrier.dim
    equal, worst = match_functional_sets(
        direct.coeff_rows(dim), predicted.coeff_rows(dim), tol.delta_dedup
    )
    details = {
        "lifted_count": len(lifted),
        "paired_count": len(paired),
    }
    if not equal:
        details["direct"] = direct.as_dict()
        details["predicted"] = predicted.as_dict()
    return SetMatchVerdict(
        "gelfand", equal, len(direct), len(predicted), worst, details
    )


def check_semisimplicity_criterion(
    a: FiniteDimAlgebra,
    b: FiniteDimAlgebra,
    action: BimoduleAction,
    tol: Tolerances = DEFAULT_TOL,
) -> EquivalenceVerdict:
    """Product semisimple iff both factors are; needs commutative symmetric data."""
    problems = []
    if not is_commutative(a, tol):
        problems.append("A not commutative")
    if not is_commutative(b, tol):
        problems.append("B not commutative")
    if not is_symmetric(action, tol):
        problems.append("action not symmetric")
    if problems:
        raise HypothesisViolationError(
            "semisimplicity criterion needs commutative factors and a symmetric action: "
            + "; ".join(problems)
        )
    bow = build_bowtie(a, b, action, tol)
    lhs = is_semisimple(bow.carrier, tol)
    ss_a = is_semisimple(a, tol)
    ss_b = is_semisimple(b, tol)
    rhs = ss_a and ss_b
    return EquivalenceVerdict(
        "semisimplicity",
        lhs,
        rhs,
        lhs == rhs,
        {"semisimple_a": ss_a, "semisimple_b": ss_b},
    )
