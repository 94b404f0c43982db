import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from balg import catalog
from balg.algcore import (
    FiniteDimAlgebra,
    find_identity,
    find_left_identities,
    is_commutative,
    l1_norm,
    multiply,
    unitize,
    validate,
)
from balg.config import DEFAULT_TOL
from balg.errors import DimensionMismatchError
from conftest import rand_vector


def multiply_oracle(mul, x, y):
    # naive triple-loop contraction, independent of the einsum path
    n = len(x)
    out = np.zeros(n, dtype=complex)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out[k] += x[i] * y[j] * mul[i, j, k]
    return out


class TestMultiply:
    def test_pointwise(self, diag2):
        assert np.allclose(multiply(diag2, [1, 2], [3, 4]), [3, 8])

    def test_nilpotent_square(self, dual_numbers):
        assert np.allclose(multiply(dual_numbers, [0, 1], [0, 1]), [0, 0])

    def test_matches_naive_contraction_on_random_instance(self):
        rng = np.random.default_rng(3)
        alg = catalog.l1_rescaled(
            catalog.basis_change(catalog.truncated_poly_algebra(3), np.eye(3) + 0.1 * rng.standard_normal((3, 3)))
        )
        assert validate(alg).passed
        x, y = rand_vector(rng, 3), rand_vector(rng, 3)
        assert np.allclose(multiply(alg, x, y), multiply_oracle(alg.mul, x, y), atol=1e-13)

    def test_dimension_mismatch(self, diag2):
        with pytest.raises(DimensionMismatchError):
            multiply(diag2, [1, 2, 3], [1, 2])


class TestL1Norm:
    def test_signs(self):
        assert l1_norm([1, -1]) == 2.0

    def test_zero(self):
        assert l1_norm(np.zeros(5)) == 0.0

    def test_complex_modulus(self):
        assert l1_norm([3 + 4j, 0]) == pytest.approx(5.0)


class TestValidate:
    def test_pointwise_valid(self, diag2):
        rep = validate(diag2)
        assert rep.passed
        assert rep["associativity"].residual == 0.0

    def test_norm_bound_violation(self):
        c = np.zeros((1, 1, 1))
        c[0, 0, 0] = 2.0
        rep = validate(FiniteDimAlgebra(c))
        assert not rep.passed
        assert rep["l1_basis_bound"].residual == pytest.approx(1.0)
        assert rep["associativity"].passed

    def test_associativity_perturbation_located(self, dual_numbers):
        c = dual_numbers.mul.copy()
        c[0, 1, 0] += 1e-4  # now 1*t = t + eps, breaking (1 1) t = 1 (1 t)
        rep = validate(FiniteDimAlgebra(c))
        # oracle: recompute the worst associator directly
        worst = 0.0
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    lhs = multiply_oracle(c, multiply_oracle(c, np.eye(2)[i], np.eye(2)[j]), np.eye(2)[k])
                    rhs = multiply_oracle(c, np.eye(2)[i], multiply_oracle(c, np.eye(2)[j], np.eye(2)[k]))
                    worst = max(worst, np.max(np.abs(lhs - rhs)))
        assert not rep["associativity"].passed
        assert rep["associativity"].residual == pytest.approx(worst)

    def test_nan_rejected(self):
        c = np.zeros((1, 1, 1))
        c[0, 0, 0] = np.nan
        assert not validate(FiniteDimAlgebra(c)).passed

    def test_dim_zero_vacuous(self):
        assert validate(FiniteDimAlgebra(np.zeros((0, 0, 0)))).passed


class TestIdentity:
    def test_pointwise(self, diag2):
        assert np.allclose(find_identity(diag2), [1, 1])

    def test_dual_numbers(self, dual_numbers):
        assert np.allclose(find_identity(dual_numbers), [1, 0])

    def test_zero_mult_has_none(self):
        assert find_identity(catalog.zero_mult_algebra(1)) is None

    def test_identity_is_two_sided_on_random_elements(self, dual_numbers):
        rng = np.random.default_rng(0)
        e = find_identity(dual_numbers)
        for _ in range(100):
            x = rand_vector(rng, 2)
            assert np.max(np.abs(multiply(dual_numbers, e, x) - x)) < 1e-10
            assert np.max(np.abs(multiply(dual_numbers, x, e) - x)) < 1e-10


class TestLeftIdentities:
    def test_pointwise_unique(self, diag2):
        sol = find_left_identities(diag2)
        assert sol.dim == 0
        assert np.allclose(sol.point, [1, 1])

    def test_zero_mult_empty(self):
        assert find_left_identities(catalog.zero_mult_algebra(1)) is None

    def test_matrix_unit_span_affine_line(self, upper_pair):
        # oracle: independent least-squares on the explicitly looped system
        c = upper_pair.mul
        rows, rhs = [], []
        for j in range(2):
            for k in range(2):
                rows.append([c[0, j, k], c[1, j, k]])
                rhs.append(1.0 if j == k else 0.0)
        x0, res, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
        assert np.max(np.abs(np.array(rows) @ x0 - np.array(rhs))) < 1e-12

        sol = find_left_identities(upper_pair)
        assert sol is not None
        # left identities are exactly E11 + mu E12
        assert sol.dim == 1
        assert sol.contains(np.array([1.0, 0.0]), 1e-9)
        assert sol.contains(np.array([1.0, 3.7 - 2j]), 1e-9)
        assert not sol.contains(np.array([0.0, 1.0]), 1e-6)
        assert sol.contains(x0, 1e-8)


class TestCommutativity:
    def test_pointwise(self, diag2):
        assert is_commutative(diag2)

    def test_matrix_units(self, upper_pair):
        assert not is_commutative(upper_pair)

    def test_lau_product_of_commutative_factors(self, diag2, dual_numbers):
        from balg.bowtie import theta_lau
        from balg.spectrum import characters

        theta = characters(diag2).characters[0]
        bow = theta_lau(diag2, dual_numbers, theta)
        assert is_commutative(bow.carrier)


class TestUnitize:
    def test_zero_mult(self):
        sharp, embed = unitize(catalog.zero_mult_algebra(1))
        assert sharp.dim == 2
        assert np.allclose(find_identity(sharp), [1, 0])
        assert embed.shape == (2, 1)

    def test_scalar_gives_two_characters(self):
        from balg.spectrum import characters

        sharp, _ = unitize(catalog.scalar_algebra())
        assert len(characters(sharp)) == 2

    def test_unit_is_first_coordinate(self, dual_numbers):
        sharp, _ = unitize(dual_numbers)
        expected = np.zeros(3)
        expected[0] = 1
        assert np.allclose(find_identity(sharp), expected)

    def test_matches_lau_unitization(self, dual_numbers):
        from balg.bowtie import theta_lau

        sharp, _ = unitize(dual_numbers)
        bow = theta_lau(catalog.scalar_algebra(), dual_numbers, np.array([1.0]))
        assert np.array_equal(sharp.mul, bow.carrier.mul)

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_always_valid_and_unital(self, seed):
        from balg.fuzz import random_algebra

        rng = np.random.default_rng(seed)
        alg = random_algebra(rng, int(rng.integers(0, 5)))
        sharp, _ = unitize(alg)
        assert validate(sharp).passed
        unit = find_identity(sharp)
        assert unit is not None
        expected = np.zeros(sharp.dim)
        if sharp.dim:
            expected[0] = 1
        assert np.allclose(unit, expected, atol=1e-9)


@given(seed=st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_multiply_is_submultiplicative_for_l1(seed):
    from balg.fuzz import random_algebra

    rng = np.random.default_rng(seed)
    alg = random_algebra(rng, int(rng.integers(1, 6)))
    assert validate(alg).passed
    x, y = rand_vector(rng, alg.dim), rand_vector(rng, alg.dim)
    assert l1_norm(multiply(alg, x, y)) <= l1_norm(x) * l1_norm(y) + 1e-9


@given(seed=st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_multiply_is_bilinear(seed):
    from balg.fuzz import random_algebra

    rng = np.random.default_rng(seed)
    alg = random_algebra(rng, int(rng.integers(1, 6)))
    x, x2, y = (rand_vector(rng, alg.dim) for _ in range(3))
    alpha = complex(rng.standard_normal(), rng.standard_normal())
    lhs = multiply(alg, alpha * x + x2, y)
    rhs = alpha * multiply(alg, x, y) + multiply(alg, x2, y)
    assert np.max(np.abs(lhs - rhs)) < 1e-12
    lhs = multiply(alg, y, alpha * x + x2)
    rhs = alpha * multiply(alg, y, x) + multiply(alg, y, x2)
    assert np.max(np.abs(lhs - rhs)) < 1e-12
