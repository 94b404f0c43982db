"""Seeded random generation of valid product instances for the four families.

Algebras are assembled from multiplicatively closed building blocks
(pointwise algebras, truncated polynomial algebras, matrix-unit spans, zero
multiplication blocks, and direct sums of these), optionally rewritten in a
random unitary basis and uniformly rescaled so the l1 basis bound survives.
Character-Lau instances draw their character from the spectrum of the
generated left factor; homomorphism-Lau instances draw from a menu of
canonical homomorphisms between blocks; module extensions use regular and
quotient bimodules plus trivial padding.

Everything is driven by `numpy.random.Generator`, so a seed pins the whole
sweep.  Each generated instance is re-validated before use.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algcore import DEFAULT_TOL, FiniteDimAlgebra, Tolerances, validate
from .bimodule import (
    BimoduleAction,
    algebraic_report,
    scale_algebra_side,
    transform_action,
    validate_bimodule,
    zero_action,
)
from .bowtie import BowtieAlgebra, build_bowtie, t_lau, theta_lau
from .catalog import (
    basis_change,
    diagonal_algebra,
    direct_sum,
    full_matrix_algebra,
    l1_rescaled,
    matrix_unit_algebra,
    rescale_basis,
    truncated_poly_algebra,
    zero_mult_algebra,
)
from .errors import BalgError, GenerationError
from .spectrum import characters

FAMILIES = ("direct", "module-ext", "theta-lau", "t-lau")

_RETRIES = 10


@dataclass(frozen=True)
class InstanceSpec:
    """What to generate: family, dimensions (None means sampled), seed."""

    family: str
    dim_a: int | None
    dim_b: int | None
    seed: int

    def __post_init__(self):
        if self.family not in FAMILIES + ("custom",):
            raise ValueError(f"unknown family {self.family!r}")


@dataclass(frozen=True, eq=False)
class Instance:
    """A generated, validated instance ready for the checker battery."""

    family: str
    algebra_a: FiniteDimAlgebra
    algebra_b: FiniteDimAlgebra
    action: BimoduleAction
    bowtie: BowtieAlgebra
    seed: int


@dataclass(frozen=True)
class _Block:
    kind: str
    size: int
    algebra: FiniteDimAlgebra
    # coordinate ideal sizes available inside this block
    ideal_sizes: tuple[int, ...]


def _make_block(kind: str, size: int) -> _Block:
    if kind == "diagonal":
        return _Block(kind, size, diagonal_algebra(size), tuple(range(size + 1)))
    if kind == "truncpoly":
        return _Block(kind, size, truncated_poly_algebra(size), tuple(range(size + 1)))
    if kind == "zero":
        return _Block(kind, size, zero_mult_algebra(size), tuple(range(size + 1)))
    if kind == "triangular_pair":
        return _Block(kind, 2, matrix_unit_algebra([(0, 0), (0, 1)]), (0, 1, 2))
    if kind == "full_matrix":
        return _Block(kind, 4, full_matrix_algebra(2), (0, 4))
    raise ValueError(kind)


def _block_ideal_coords(block: _Block, take: int) -> list[int]:
    # Coordinates, inside the block, of an ideal of the requested dimension.
    if take == 0:
        return []
    if take == block.size:
        return list(range(block.size))
    if block.kind in ("diagonal", "zero"):
        return list(range(take))
    if block.kind == "truncpoly":
        return list(range(block.size - take, block.size))  # the tail powers of t
    if block.kind == "triangular_pair" and take == 1:
        return [1]  # the span of E12
    raise ValueError(f"no ideal of dim {take} in block {block.kind}")


def _random_blocks(
    rng: np.random.Generator, dim: int, commutative: bool, need_characters: bool
) -> list[_Block]:
    blocks: list[_Block] = []
    remaining = dim
    while remaining > 0:
        kinds = ["diagonal", "truncpoly"]
        weights = [0.4, 0.3]
        if remaining >= 1:
            kinds.append("zero")
            weights.append(0.1)
        if not commutative and remaining >= 2:
            kinds.append("triangular_pair")
            weights.append(0.15)
        if not commutative and remaining >= 4:
            kinds.append("full_matrix")
            weights.append(0.05)
        w = np.array(weights) / sum(weights)
        kind = str(rng.choice(kinds, p=w))
        if kind in ("diagonal", "truncpoly"):
            size = int(rng.integers(1, remaining + 1))
        elif kind == "zero":
            size = int(rng.integers(1, min(remaining, 2) + 1))
        elif kind == "triangular_pair":
            size = 2
        else:
            size = 4
        blocks.append(_make_block(kind, size))
        remaining -= size
    if need_characters and all(b.kind in ("zero", "full_matrix") for b in blocks):
        blocks[0] = _make_block("diagonal", blocks[0].size)
    return blocks


def _random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_algebra(
    rng: np.random.Generator,
    dim: int,
    *,
    commutative: bool = False,
    need_characters: bool = False,
    change_basis: bool | None = None,
) -> FiniteDimAlgebra:
    """Random valid algebra of the requested dimension."""
    if dim == 0:
        return FiniteDimAlgebra(np.zeros((0, 0, 0), dtype=complex))
    blocks = _random_blocks(rng, dim, commutative, need_characters)
    alg = blocks[0].algebra
    for b in blocks[1:]:
        alg = direct_sum(alg, b.algebra)
    if change_basis is None:
        change_basis = bool(rng.random() < 0.5)
    if change_basis:
        alg = l1_rescaled(basis_change(alg, _random_unitary(rng, dim)))
    return alg


def _blocks_and_algebra(
    rng: np.random.Generator, dim: int, commutative: bool
) -> tuple[list[_Block], FiniteDimAlgebra]:
    blocks = _random_blocks(rng, dim, commutative, need_characters=False)
    alg = blocks[0].algebra
    for b in blocks[1:]:
        alg = direct_sum(alg, b.algebra)
    return blocks, alg


def _module_ext_action(
    rng: np.random.Generator, dim_a: int, dim_b: int, commutative: bool
) -> tuple[FiniteDimAlgebra, BimoduleAction]:
    """Left algebra plus a bimodule on a dim_b space (regular, quotient, padded)."""
    if dim_a == 0 or dim_b == 0:
        a = random_algebra(rng, dim_a, commutative=commutative, change_basis=False)
        return a, zero_action(dim_a, dim_b)

    blocks, a = _blocks_and_algebra(rng, dim_a, commutative)
    n = a.dim
    c = a.mul

    if dim_b == n:
        left, right = c.copy(), c.copy()
    elif dim_b < n:
        # quotient bimodule on A / I for a coordinate-aligned ideal I
        target = n - dim_b
        coords: list[int] = []
        offset = 0
        for b in blocks:
            take = min(target - len(coords), max(s for s in b.ideal_sizes if s <= target - len(coords)))
            if take > 0:
                coords += [offset + i for i in _block_ideal_coords(b, take)]
            offset += b.size
        if len(coords) != target:
            # fall back to a trivial module when the blocks cannot supply the ideal
            return a, zero_action(n, dim_b)
        keep = [i for i in range(n) if i not in set(coords)]
        left = c[np.ix_(range(n), keep, keep)].copy()
        right = c[np.ix_(keep, range(n), keep)].copy()
    else:
        # regular action padded with inert coordinates
        pad = dim_b - n
        left = np.zeros((n, dim_b, dim_b), dtype=complex)
        right = np.zeros((dim_b, n, dim_b), dtype=complex)
        left[:, :n, :n] = c
        right[:n, :, :n] = c
    return a, BimoduleAction(left, right)


def _contractify(a: FiniteDimAlgebra, action: BimoduleAction) -> tuple[FiniteDimAlgebra, BimoduleAction]:
    """Shrink the acting algebra's basis until both action tensors satisfy the l1 bound."""
    rows = 0.0
    if action.left.size:
        rows = max(rows, float(np.abs(action.left).sum(axis=2).max()))
    if action.right.size:
        rows = max(rows, float(np.abs(action.right).sum(axis=2).max()))
    if rows <= 1.0:
        return a, action
    factor = 1.0 / rows
    return rescale_basis(a, factor), scale_algebra_side(action, factor)


def _maybe_transform_pair(
    rng: np.random.Generator,
    a: FiniteDimAlgebra,
    b: FiniteDimAlgebra,
    action: BimoduleAction,
) -> tuple[FiniteDimAlgebra, FiniteDimAlgebra, BimoduleAction]:
    """Random unitary basis changes on both sides, with l1 repair."""
    if a.dim and rng.random() < 0.5:
        s = _random_unitary(rng, a.dim)
        a2 = basis_change(a, s)
        scale = 1.0
        if a2.dim:
            rowmax = float(np.abs(a2.mul).sum(axis=2).max())
            scale = 1.0 / rowmax if rowmax > 1.0 else 1.0
        a = rescale_basis(a2, scale) if scale != 1.0 else a2
        action = transform_action(action, s, np.eye(b.dim, dtype=complex))
        if scale != 1.0:
            action = scale_algebra_side(action, scale)
    if b.dim and rng.random() < 0.5:
        s = _random_unitary(rng, b.dim)
        b2 = basis_change(b, s)
        scale = 1.0
        if b2.dim:
            rowmax = float(np.abs(b2.mul).sum(axis=2).max())
            scale = 1.0 / rowmax if rowmax > 1.0 else 1.0
        b = rescale_basis(b2, scale) if scale != 1.0 else b2
        action = transform_action(action, np.eye(a.dim, dtype=complex), s)
    a, action = _contractify(a, action)
    return a, b, action


def _t_lau_parts(
    rng: np.random.Generator, dim_a: int, dim_b: int, commutative: bool
) -> tuple[FiniteDimAlgebra, FiniteDimAlgebra, np.ndarray]:
    """Left/right algebras plus a contractive homomorphism matrix between them."""
    choice = rng.random()
    if choice < 0.25 or dim_a == 0 or dim_b == 0:
        a = random_algebra(rng, dim_a, commutative=commutative)
        b = random_algebra(rng, dim_b, commutative=True)
        return a, b, np.zeros((dim_b, dim_a), dtype=complex)
    if choice < 0.55:
        a = diagonal_algebra(dim_a)
        b = diagonal_algebra(dim_b)
        t = np.zeros((dim_b, dim_a), dtype=complex)
        targets = rng.permutation(dim_a)[: min(dim_a, dim_b)]
        slots = rng.permutation(dim_b)[: len(targets)]
        for p, i in zip(slots, targets):
            if rng.random() < 0.85:
                t[p, i] = 1.0
        return a, b, t
    if choice < 0.8 and dim_a >= 1 and dim_b >= 1:
        a = truncated_poly_algebra(dim_a)
        b = truncated_poly_algebra(dim_b)
        # unital evaluation at a contractive nilpotent: t -> z * t^j
        t = np.zeros((dim_b, dim_a), dtype=complex)
        t[0, 0] = 1.0
        if dim_a >= 2 and dim_b >= 2:
            j = int(rng.integers(1, dim_b))
            if j * dim_a >= dim_b:  # ensures the image of t is nilpotent enough
                z = (rng.standard_normal() + 1j * rng.standard_normal()) / 2.0
                z = z / max(1.0, abs(z))
                img = np.zeros(dim_b, dtype=complex)
                img[j] = z
                acc = np.zeros(dim_b, dtype=complex)
                acc[0] = 1.0
                for k in range(1, dim_a):
                    acc = np.einsum("i,j,ijk->k", acc, img, b.mul)
                    t[:, k] = acc
        return a, b, t
    # characters into a unital commutative algebra: T(a) = theta(a) * 1_B
    a = random_algebra(rng, dim_a, commutative=commutative, need_characters=True)
    b = truncated_poly_algebra(dim_b)
    seed = int(rng.integers(2**31))
    chars = characters(a, seed=seed)
    if not len(chars):
        raise GenerationError("generated left factor has no characters")
    theta = chars.characters[int(rng.integers(len(chars)))].coeffs
    t = np.zeros((dim_b, dim_a), dtype=complex)
    t[0, :] = theta
    return a, b, t


def random_instance(
    spec: InstanceSpec,
    *,
    commutative_symmetric: bool = False,
    tol: Tolerances = DEFAULT_TOL,
) -> Instance:
    """Generate one valid instance, retrying a few times before giving up."""
    rng = np.random.default_rng(spec.seed)
    last: Exception | None = None
    for _ in range(_RETRIES):
        try:
            return _attempt(rng, spec, commutative_symmetric, tol)
        except BalgError as exc:
            last = exc
        except np.linalg.LinAlgError as exc:
            last = GenerationError(str(exc))
    raise GenerationError(
        f"could not generate a valid {spec.family} instance (seed {spec.seed}): {last}"
    )


def _sample_dim(rng: np.random.Generator, requested: int | None, minimum: int) -> int:
    if requested is not None:
        return requested
    return int(rng.integers(minimum, 6))


def _attempt(
    rng: np.random.Generator,
    spec: InstanceSpec,
    commutative_symmetric: bool,
    tol: Tolerances,
) -> Instance:
    family = spec.family
    comm = commutative_symmetric

    if family == "direct":
        dim_a = _sample_dim(rng, spec.dim_a, 0)
        dim_b = _sample_dim(rng, spec.dim_b, 0)
        a = random_algebra(rng, dim_a, commutative=comm)
        b = random_algebra(rng, dim_b, commutative=comm)
        action = zero_action(a.dim, b.dim)
    elif family == "module-ext":
        dim_a = _sample_dim(rng, spec.dim_a, 0)
        dim_b = _sample_dim(rng, spec.dim_b, 0)
        a, action = _module_ext_action(rng, dim_a, dim_b, comm)
        b = zero_mult_algebra(action.dim_module)
        a, b, action = _maybe_transform_pair(rng, a, b, action)
    elif family == "theta-lau":
        dim_a = _sample_dim(rng, spec.dim_a, 1)
        dim_b = _sample_dim(rng, spec.dim_b, 0)
        a = random_algebra(rng, dim_a, commutative=comm, need_characters=True)
        b = random_algebra(rng, dim_b, commutative=comm)
        seed = int(rng.integers(2**31))
        chars = characters(a, seed=seed, tol=tol)
        if not len(chars):
            raise GenerationError("generated left factor has no characters")
        theta = chars.characters[int(rng.integers(len(chars)))]
        bow = theta_lau(a, b, theta, tol)
        return Instance(family, a, b, bow.action, bow, spec.seed)
    elif family == "t-lau":
        dim_a = _sample_dim(rng, spec.dim_a, 1)
        dim_b = _sample_dim(rng, spec.dim_b, 1)
        a, b, t = _t_lau_parts(rng, dim_a, dim_b, comm)
        bow = t_lau(a, b, t, tol)
        return Instance(family, a, b, bow.action, bow, spec.seed)
    else:
        raise GenerationError(f"cannot generate family {family!r}")

    if not validate(a, tol).passed or not validate(b, tol).passed:
        raise GenerationError("generated algebra failed validation")
    if not validate_bimodule(a, b, action, tol).passed:
        raise GenerationError("generated action failed module validation")
    if not algebraic_report(a, b, action, tol).passed:
        raise GenerationError("generated action failed the compatibility identities")
    bow = build_bowtie(a, b, action, tol)
    return Instance(family, a, b, action, bow, spec.seed)


def instance_stream(
    family: str,
    count: int,
    seed: int,
    *,
    dim_a: int | None = None,
    dim_b: int | None = None,
    commutative_symmetric: bool = False,
    tol: Tolerances = DEFAULT_TOL,
):
    """Yield ``(index, Instance | GenerationError)`` pairs, deterministically."""
    root = np.random.default_rng(seed)
    families = FAMILIES if family == "all" else (family,)
    for idx in range(count):
        fam = families[idx % len(families)]
        sub = int(root.integers(2**31))
        spec = InstanceSpec(fam, dim_a, dim_b, sub)
        try:
            yield idx, random_instance(
                spec, commutative_symmetric=commutative_symmetric, tol=tol
            )
        except GenerationError as exc:
            yield idx, exc
