import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from balg import catalog
from balg.algcore import find_identity, is_commutative, multiply, validate
from balg.bimodule import BimoduleAction, regular_action, zero_action
from balg.bowtie import (
    build_bowtie,
    check_commutativity_criterion,
    check_identity_criterion,
    check_left_identity_criterion,
    direct_product,
    module_extension,
    t_lau,
    theta_lau,
)
from balg.errors import InvalidActionError
from conftest import rand_vector


def bowtie_product_oracle(bow, a1, b1, a2, b2):
    """The defining formula, evaluated componentwise."""
    from balg.bimodule import act_left, act_right

    a = multiply(bow.algebra_a, a1, a2)
    b = (
        act_left(bow.action, a1, b2)
        + act_right(bow.action, b1, a2)
        + multiply(bow.algebra_b, b1, b2)
    )
    return a, b


class TestBuild:
    def test_direct_product_formula(self):
        c1 = catalog.scalar_algebra()
        bow = direct_product(c1, c1)
        assert np.array_equal(bow.carrier.mul, catalog.diagonal_algebra(2).mul)

    def test_block_structure_is_exact(self, diag2, dual_numbers):
        bow = direct_product(diag2, dual_numbers)
        c = bow.carrier.mul
        assert np.all(c[:2, 2:, :2] == 0)
        assert np.all(c[2:, :2, :2] == 0)
        assert np.all(c[2:, 2:, :2] == 0)
        assert np.all(c[:2, :2, 2:] == 0)

    def test_labels(self, diag2, dual_numbers):
        bow = direct_product(diag2, dual_numbers)
        assert bow.carrier.basis_labels == ("A.d0", "A.d1", "B.1", "B.t")

    def test_product_matches_formula_on_samples(self, diag2, dual_numbers):
        from balg.spectrum import characters

        theta = characters(diag2).characters[0]
        bow = theta_lau(diag2, dual_numbers, theta)
        rng = np.random.default_rng(5)
        for _ in range(20):
            a1, a2 = rand_vector(rng, 2), rand_vector(rng, 2)
            b1, b2 = rand_vector(rng, 2), rand_vector(rng, 2)
            u = bow.embed_a(a1) + bow.embed_b(b1)
            v = bow.embed_a(a2) + bow.embed_b(b2)
            pa, pb = bowtie_product_oracle(bow, a1, b1, a2, b2)
            w = multiply(bow.carrier, u, v)
            assert np.allclose(bow.project_a(w), pa, atol=1e-12)
            assert np.allclose(bow.project_b(w), pb, atol=1e-12)

    def test_invalid_action_refused_with_axiom_name(self, diag2, dual_numbers):
        left = np.zeros((2, 2, 2), dtype=complex)
        left[0, 0, 0] = 1.0
        left[1, 0, 0] = 0.5  # not a module action for diag2
        action = BimoduleAction(left, left.transpose(1, 0, 2).copy())
        with pytest.raises(InvalidActionError) as err:
            build_bowtie(diag2, dual_numbers, action)
        assert "left_action_associative" in str(err.value)


class TestDirectProduct:
    def test_identity_exists_iff_both_unital(self, dual_numbers):
        bow = direct_product(dual_numbers, catalog.scalar_algebra())
        ident = find_identity(bow.carrier)
        assert np.allclose(ident, [1, 0, 1])
        bow2 = direct_product(dual_numbers, catalog.zero_mult_algebra(1))
        assert find_identity(bow2.carrier) is None

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_commutativity_splits(self, seed):
        from balg.fuzz import random_algebra

        rng = np.random.default_rng(seed)
        a = random_algebra(rng, int(rng.integers(1, 4)))
        b = random_algebra(rng, int(rng.integers(1, 4)))
        bow = direct_product(a, b)
        assert is_commutative(bow.carrier) == (is_commutative(a) and is_commutative(b))


class TestModuleExtension:
    def test_scalar_extension_is_dual_numbers(self, dual_numbers):
        one = catalog.scalar_algebra()
        bow = module_extension(one, regular_action(one))
        assert np.array_equal(bow.carrier.mul, dual_numbers.mul)

    def test_square_formula(self, diag2):
        from balg.bimodule import act_left, act_right

        bow = module_extension(diag2, regular_action(diag2))
        rng = np.random.default_rng(2)
        a, x = rand_vector(rng, 2), rand_vector(rng, 2)
        v = bow.embed_a(a) + bow.embed_b(x)
        sq = multiply(bow.carrier, v, v)
        assert np.allclose(bow.project_a(sq), multiply(diag2, a, a), atol=1e-12)
        expected_b = act_left(bow.action, a, x) + act_right(bow.action, x, a)
        assert np.allclose(bow.project_b(sq), expected_b, atol=1e-12)

    def test_module_block_is_square_zero(self, diag2):
        bow = module_extension(diag2, regular_action(diag2))
        f0 = bow.embed_b(np.array([1.0, 0.0]))
        f1 = bow.embed_b(np.array([0.0, 1.0]))
        assert np.all(multiply(bow.carrier, f0, f1) == 0)
        assert np.all(multiply(bow.carrier, f1, f0) == 0)


class TestThetaLau:
    def test_unitization_identity(self, dual_numbers):
        bow = theta_lau(catalog.scalar_algebra(), dual_numbers, np.array([1.0]))
        assert np.allclose(find_identity(bow.carrier), [1, 0, 0])

    def test_spectrum_count(self, diag2):
        from balg.spectrum import characters

        theta = characters(diag2).characters[0]
        bow = theta_lau(diag2, catalog.scalar_algebra(), theta)
        assert len(characters(bow.carrier)) == 3

    def test_action_is_symmetric(self, diag2, dual_numbers):
        from balg.bimodule import is_symmetric
        from balg.spectrum import characters

        theta = characters(diag2).characters[0]
        bow = theta_lau(diag2, dual_numbers, theta)
        assert is_symmetric(bow.action)

    def test_non_character_rejected(self, diag2):
        with pytest.raises(InvalidActionError):
            theta_lau(diag2, diag2, np.array([1.0, 0.5]))

    def test_zero_functional_rejected(self, diag2):
        with pytest.raises(InvalidActionError):
            theta_lau(diag2, diag2, np.zeros(2))


class TestTLau:
    def test_zero_hom_is_direct_product(self, diag2, dual_numbers):
        bow = t_lau(diag2, dual_numbers, np.zeros((2, 2)))
        ref = direct_product(diag2, dual_numbers)
        assert np.array_equal(bow.carrier.mul, ref.carrier.mul)

    def test_identity_hom_product_formula(self, dual_numbers):
        bow = t_lau(dual_numbers, dual_numbers, np.eye(2))
        rng = np.random.default_rng(9)
        a1, b1, a2, b2 = (rand_vector(rng, 2) for _ in range(4))
        u = bow.embed_a(a1) + bow.embed_b(b1)
        v = bow.embed_a(a2) + bow.embed_b(b2)
        w = multiply(bow.carrier, u, v)
        expect_b = (
            multiply(dual_numbers, a1, b2)
            + multiply(dual_numbers, b1, a2)
            + multiply(dual_numbers, b1, b2)
        )
        assert np.allclose(bow.project_b(w), expect_b, atol=1e-12)

    def test_non_homomorphism_rejected(self, diag2):
        # T(e1) = 0.5 f1 fails T(e1 e1) = T(e1) T(e1)
        with pytest.raises(InvalidActionError) as err:
            t_lau(diag2, diag2, np.array([[1.0, 0.0], [0.0, 0.5]]))
        assert "homomorphism" in str(err.value)

    def test_norm_bound_rejected(self, diag2):
        # columns sum above 1: scaled identity map is still a hom only if scale in {0,1},
        # so use a hom into a 3-dim pointwise algebra hitting two coordinates
        b = catalog.diagonal_algebra(3)
        t = np.zeros((3, 2))
        t[0, 0] = 1.0
        t[1, 0] = 1.0  # T(e0) = f0 + f1, an idempotent, but column norm 2
        with pytest.raises(InvalidActionError) as err:
            t_lau(diag2, b, t)
        assert "norm" in str(err.value)

    def test_noncentral_image_in_noncommutative_module_refused(self):
        # T = identity on the full 2x2 matrix algebra: the symmetric action
        # breaks the interchange identity (oracle: a=E12, b=E21, b'=E11 gives
        # (T(a) b) b' = E11 while b (T(a) b') = 0), so assembly must refuse
        m2 = catalog.full_matrix_algebra(2)
        from balg.bimodule import algebraic_report, BimoduleAction

        left = np.einsum("ri,rpq->ipq", np.eye(4, dtype=complex), m2.mul)
        action = BimoduleAction(left, left.transpose(1, 0, 2).copy())
        assert "actions_interchange" in algebraic_report(m2, m2, action).failed_names()
        with pytest.raises(InvalidActionError):
            t_lau(m2, m2, np.eye(4))


class TestCriteria:
    def _lau(self, a, b, seed=0):
        from balg.spectrum import characters

        theta = characters(a, seed=seed).characters[0]
        return theta_lau(a, b, theta)

    def test_commutativity_both_true(self, diag2, dual_numbers):
        verdict = check_commutativity_criterion(self._lau(diag2, dual_numbers))
        assert verdict.agree and verdict.bowtie_side and verdict.component_side

    def test_commutativity_both_false_noncommutative_b(self, diag2, upper_pair):
        verdict = check_commutativity_criterion(direct_product(diag2, upper_pair))
        assert verdict.agree and not verdict.bowtie_side and not verdict.component_side

    def test_commutativity_symmetric_action_noncommutative_a(self, upper_pair, diag2):
        verdict = check_commutativity_criterion(direct_product(upper_pair, diag2))
        assert verdict.agree and not verdict.bowtie_side
        assert verdict.details["symmetric_action"]

    def test_identity_unitization(self, dual_numbers):
        bow = theta_lau(catalog.scalar_algebra(), dual_numbers, np.array([1.0]))
        verdict = check_identity_criterion(bow)
        assert verdict.agree and verdict.bowtie_side and verdict.component_side

    def test_identity_direct_product_of_unital(self, diag2, dual_numbers):
        verdict = check_identity_criterion(direct_product(diag2, dual_numbers))
        assert verdict.agree and verdict.bowtie_side

    def test_identity_module_extension_of_unital(self, diag2):
        bow = module_extension(diag2, regular_action(diag2))
        verdict = check_identity_criterion(bow)
        assert verdict.agree and verdict.bowtie_side
        assert np.allclose(verdict.details["identity"], [1, 1, 0, 0])

    def test_left_identity_unitization(self, dual_numbers):
        bow = theta_lau(catalog.scalar_algebra(), dual_numbers, np.array([1.0]))
        verdict = check_left_identity_criterion(bow)
        assert verdict.agree and verdict.bowtie_side

    def test_left_identity_zero_module_with_zero_action(self, diag2):
        # no left identities: the module coordinates can never be recovered
        bow = direct_product(diag2, catalog.zero_mult_algebra(2))
        verdict = check_left_identity_criterion(bow)
        assert verdict.agree
        assert not verdict.bowtie_side and not verdict.component_side

    def test_left_identity_lau_with_unital_a(self, diag2, dual_numbers):
        verdict = check_left_identity_criterion(self._lau(diag2, dual_numbers))
        assert verdict.agree and verdict.bowtie_side


@given(seed=st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_fuzzed_instances_assemble_associatively(seed):
    from balg.fuzz import instance_stream

    for _, inst in instance_stream("all", 1, seed):
        if isinstance(inst, Exception):
            return
        rep = validate(inst.bowtie.carrier)
        assert rep.passed
        assert rep["associativity"].residual <= 1e-9


@given(seed=st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_projection_is_homomorphism_and_module_block_is_ideal(seed):
    from balg.fuzz import instance_stream

    rng = np.random.default_rng(seed)
    for _, inst in instance_stream("all", 1, int(rng.integers(2**31))):
        if isinstance(inst, Exception):
            return
        bow = inst.bowtie
        dim = bow.carrier.dim
        u, v = rand_vector(rng, dim), rand_vector(rng, dim)
        lhs = bow.project_a(multiply(bow.carrier, u, v))
        rhs = multiply(bow.algebra_a, bow.project_a(u), bow.project_a(v))
        assert np.max(np.abs(lhs - rhs), initial=0.0) < 1e-10
        if bow.dim_b:
            f = bow.embed_b(rand_vector(rng, bow.dim_b))
            assert np.all(bow.project_a(multiply(bow.carrier, f, u)) == 0)
            assert np.all(bow.project_a(multiply(bow.carrier, u, f)) == 0)
