import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from balg import catalog
from balg.algcore import multiply, validate
from balg.bimodule import regular_action, zero_action
from balg.bowtie import direct_product, module_extension, theta_lau
from balg.errors import HypothesisViolationError
from balg.spectrum import (
    Ideal,
    characters,
    characters_bruteforce,
    check_semisimplicity_criterion,
    commutator_ideal,
    gelfand_parts,
    is_semisimple,
    jacobson_radical,
    match_functional_sets,
    quotient,
    verify_gelfand_decomposition,
)
from conftest import rand_vector


def contains(gelfand, vec, tol=1e-6):
    vec = np.asarray(vec, dtype=complex)
    return any(np.max(np.abs(c.coeffs - vec), initial=0.0) <= tol for c in gelfand)


class TestCommutatorIdeal:
    def test_commutative_gives_zero(self, diag2):
        assert commutator_ideal(diag2).dim == 0

    def test_matrix_unit_pair(self, upper_pair):
        # [E11, E12] = E12, and span{E12} is already an ideal
        ideal = commutator_ideal(upper_pair)
        assert ideal.dim == 1
        assert np.abs(ideal.basis[0][0]) < 1e-12
        assert np.abs(np.abs(ideal.basis[0][1]) - 1.0) < 1e-12

    def test_full_matrix_algebra_is_whole(self):
        assert commutator_ideal(catalog.full_matrix_algebra(2)).dim == 4


class TestQuotient:
    def test_bowtie_modulo_module_block_recovers_first_factor(self, diag2, dual_numbers):
        from balg.config import DEFAULT_TOL

        bow = direct_product(diag2, dual_numbers)
        rows = np.zeros((2, 4), dtype=complex)
        rows[0, 2] = 1.0
        rows[1, 3] = 1.0
        ideal = Ideal.verified(bow.carrier, rows, DEFAULT_TOL)
        q = quotient(bow.carrier, ideal)
        assert np.array_equal(q.algebra.mul, diag2.mul)

    def test_whole_algebra_gives_zero(self, diag2):
        from balg.config import DEFAULT_TOL

        ideal = Ideal.verified(diag2, np.eye(2, dtype=complex), DEFAULT_TOL)
        q = quotient(diag2, ideal)
        assert q.algebra.dim == 0

    def test_dual_numbers_mod_nilpotents_is_scalar(self, dual_numbers):
        from balg.config import DEFAULT_TOL

        rows = np.zeros((1, 2), dtype=complex)
        rows[0, 1] = 1.0
        q = quotient(dual_numbers, Ideal.verified(dual_numbers, rows, DEFAULT_TOL))
        assert q.algebra.dim == 1
        assert q.algebra.mul[0, 0, 0] == 1.0

    def test_projection_is_homomorphism(self, dual_numbers):
        from balg.config import DEFAULT_TOL

        rows = np.zeros((1, 2), dtype=complex)
        rows[0, 1] = 1.0
        q = quotient(dual_numbers, Ideal.verified(dual_numbers, rows, DEFAULT_TOL))
        rng = np.random.default_rng(0)
        for _ in range(10):
            x, y = rand_vector(rng, 2), rand_vector(rng, 2)
            lhs = q.projection @ multiply(dual_numbers, x, y)
            rhs = multiply(q.algebra, q.projection @ x, q.projection @ y)
            assert np.max(np.abs(lhs - rhs)) < 1e-12


class TestRadical:
    def test_dual_numbers(self, dual_numbers):
        rad = jacobson_radical(dual_numbers)
        assert rad.dim == 1
        assert np.abs(rad.basis[0][0]) < 1e-12

    def test_pointwise_semisimple(self, diag2):
        assert jacobson_radical(diag2).dim == 0
        assert is_semisimple(diag2)

    def test_dual_numbers_not_semisimple(self, dual_numbers):
        assert not is_semisimple(dual_numbers)

    def test_full_matrix_semisimple(self):
        assert is_semisimple(catalog.full_matrix_algebra(2))

    def test_module_extension_radical_is_module_block(self, diag2):
        bow = module_extension(diag2, regular_action(diag2))
        rad = jacobson_radical(bow.carrier)
        assert rad.dim == 2
        # every radical vector is supported on the module block
        assert np.max(np.abs(rad.basis[:, :2])) < 1e-10


class TestCharacters:
    def test_pointwise_coordinate_functionals(self):
        for n in range(1, 7):
            gel = characters(catalog.diagonal_algebra(n))
            assert len(gel) == n
            for i in range(n):
                assert contains(gel, np.eye(n)[i])

    def test_dual_numbers_single_character(self, dual_numbers):
        gel = characters(dual_numbers)
        assert len(gel) == 1
        assert contains(gel, [1.0, 0.0])

    def test_full_matrix_has_none(self):
        assert len(characters(catalog.full_matrix_algebra(2))) == 0

    def test_zero_algebra_has_none(self):
        assert len(characters(catalog.zero_mult_algebra(3))) == 0

    def test_dim_zero(self):
        assert len(characters(catalog.diagonal_algebra(0))) == 0

    def test_residuals_certified(self, dual_numbers):
        for c in characters(dual_numbers):
            assert c.residual <= 1e-8

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=20, deadline=None)
    def test_invariant_under_basis_permutation(self, seed):
        rng = np.random.default_rng(seed)
        alg = catalog.direct_sum(catalog.diagonal_algebra(2), catalog.truncated_poly_algebra(2))
        perm = rng.permutation(4)
        pmat = np.eye(4)[perm].T
        alg_p = catalog.basis_change(alg, pmat)
        gel = characters(alg, seed=seed)
        gel_p = characters(alg_p, seed=seed + 1)
        assert len(gel) == len(gel_p)
        for c in gel:
            assert contains(gel_p, c.coeffs[perm])

    def test_radical_quotient_pulls_back_bijectively(self, dual_numbers):
        from balg.config import DEFAULT_TOL

        alg = catalog.direct_sum(catalog.diagonal_algebra(2), catalog.truncated_poly_algebra(3))
        rad = jacobson_radical(alg)
        q = quotient(alg, rad)
        down = characters(q.algebra, seed=3)
        up = characters(alg, seed=4)
        assert len(down) == len(up)
        for c in down:
            assert contains(up, q.projection.T @ c.coeffs)


class TestBruteforce:
    def test_pointwise_two_solutions(self, diag2):
        gel = characters_bruteforce(diag2)
        assert len(gel) == 2
        assert contains(gel, [1, 0]) and contains(gel, [0, 1])

    def test_dual_numbers_one_solution(self, dual_numbers):
        gel = characters_bruteforce(dual_numbers)
        assert len(gel) == 1
        assert contains(gel, [1, 0])

    def test_zero_algebra_empty(self):
        assert len(characters_bruteforce(catalog.zero_mult_algebra(2))) == 0

    def test_dim_guard(self):
        with pytest.raises(ValueError):
            characters_bruteforce(catalog.diagonal_algebra(5))

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=15, deadline=None)
    def test_contained_in_pipeline_output(self, seed):
        from balg.fuzz import random_algebra

        rng = np.random.default_rng(seed)
        alg = random_algebra(rng, int(rng.integers(1, 5)))
        oracle = characters_bruteforce(alg, seed=seed)
        pipeline = characters(alg, seed=seed + 1)
        for c in oracle:
            assert contains(pipeline, c.coeffs)


class TestGelfandParts:
    def test_lau_pairs_force_the_character(self, diag2, dual_numbers):
        theta = characters(diag2).characters[0]
        bow = theta_lau(diag2, dual_numbers, theta)
        lifted, paired = gelfand_parts(diag2, dual_numbers, bow.action)
        assert len(lifted) == 2
        assert len(paired) == len(characters(dual_numbers))  # one pair per psi
        for c in paired:
            assert np.max(np.abs(c.coeffs[:2] - theta.coeffs)) < 1e-8

    def test_module_extension_has_no_pairs(self, diag2):
        bow = module_extension(diag2, regular_action(diag2))
        lifted, paired = gelfand_parts(diag2, bow.algebra_b, bow.action)
        assert len(paired) == 0
        assert len(lifted) == 2

    def test_direct_product_pairs_have_zero_first_component(self, diag2, dual_numbers):
        lifted, paired = gelfand_parts(diag2, dual_numbers, zero_action(2, 2))
        assert len(lifted) == 2
        assert len(paired) == 1  # only (0, psi)
        assert np.max(np.abs(paired.characters[0].coeffs[:2])) < 1e-12


class TestGelfandDecomposition:
    def test_unitization_of_scalar(self):
        one = catalog.scalar_algebra()
        bow = theta_lau(one, one, np.array([1.0]))
        verdict = verify_gelfand_decomposition(one, one, bow.action)
        assert verdict.equal
        assert verdict.size_left == 2

    def test_lau_counts_add(self, diag2):
        one = catalog.scalar_algebra()
        theta = characters(diag2).characters[0]
        bow = theta_lau(diag2, one, theta)
        verdict = verify_gelfand_decomposition(diag2, one, bow.action)
        assert verdict.equal and verdict.size_left == 3

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=15, deadline=None)
    def test_module_extensions_have_lifted_spectrum_only(self, seed):
        from balg.fuzz import InstanceSpec, random_instance

        inst = random_instance(InstanceSpec("module-ext", None, None, seed))
        verdict = verify_gelfand_decomposition(
            inst.algebra_a, inst.algebra_b, inst.action, seed=seed
        )
        assert verdict.equal
        assert verdict.details["paired_count"] == 0


class TestMatching:
    def test_size_mismatch(self):
        assert match_functional_sets(np.zeros((1, 2)), np.zeros((2, 2)), 1e-6)[0] is False

    def test_permutation_matched(self):
        rng = np.random.default_rng(0)
        left = rng.standard_normal((4, 3))
        right = left[::-1] + 1e-9
        ok, worst = match_functional_sets(left, right, 1e-6)
        assert ok and worst <= 1e-8


class TestSemisimplicityCriterion:
    def test_scalar_lau(self):
        one = catalog.scalar_algebra()
        bow = theta_lau(one, one, np.array([1.0]))
        verdict = check_semisimplicity_criterion(one, one, bow.action)
        assert verdict.agree and verdict.bowtie_side and verdict.component_side

    def test_nilpotent_second_factor(self, diag2, dual_numbers):
        theta = characters(diag2).characters[0]
        bow = theta_lau(diag2, dual_numbers, theta)
        verdict = check_semisimplicity_criterion(diag2, dual_numbers, bow.action)
        assert verdict.agree
        assert not verdict.bowtie_side and not verdict.component_side

    def test_nilpotent_first_factor(self, dual_numbers):
        one = catalog.scalar_algebra()
        verdict = check_semisimplicity_criterion(dual_numbers, one, zero_action(2, 1))
        assert verdict.agree
        assert not verdict.bowtie_side and not verdict.component_side

    def test_hypotheses_enforced(self, upper_pair, diag2):
        with pytest.raises(HypothesisViolationError):
            check_semisimplicity_criterion(upper_pair, diag2, zero_action(2, 2))
