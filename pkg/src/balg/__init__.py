"""Computational workbench for bowtie products of finite-dimensional Banach algebras."""

__version__ = "0.1.0"

from .algcore import (
    AffineSubspace,
    FiniteDimAlgebra,
    ValidationReport,
    find_identity,
    find_left_identities,
    is_commutative,
    l1_norm,
    multiply,
    unitize,
    validate,
)
from .bimodule import (
    BimoduleAction,
    act_left,
    act_right,
    algebraic_report,
    is_algebraic,
    is_symmetric,
    regular_action,
    validate_bimodule,
    zero_action,
)
from .bowtie import (
    BowtieAlgebra,
    EquivalenceVerdict,
    build_bowtie,
    check_commutativity_criterion,
    check_identity_criterion,
    check_left_identity_criterion,
    direct_product,
    module_extension,
    t_lau,
    theta_lau,
)
from .config import DEFAULT_TOL, Tolerances
from .duality import (
    adjoint1,
    adjoint2,
    adjoint3,
    arens_first,
    bidual_action,
    dual_pair_eval,
    dual_pair_norm,
    module_topological_center,
    topological_center,
    verify_bidual_isomorphism,
    verify_center_decomposition,
)
from .spectrum import (
    Character,
    GelfandSet,
    Ideal,
    characters,
    characters_bruteforce,
    check_semisimplicity_criterion,
    commutator_ideal,
    gelfand_parts,
    is_semisimple,
    jacobson_radical,
    quotient,
    verify_gelfand_decomposition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
