import numpy as np
import pytest

from balg import catalog
from balg.config import DEFAULT_TOL


@pytest.fixture(scope="session")
def tol():
    return DEFAULT_TOL


@pytest.fixture(scope="session")
def diag2():
    return catalog.diagonal_algebra(2)


@pytest.fixture(scope="session")
def dual_numbers():
    # C[t]/(t^2) with basis (1, t)
    return catalog.truncated_poly_algebra(2)


@pytest.fixture(scope="session")
def upper_pair():
    # span{E11, E12}, noncommutative
    return catalog.matrix_unit_algebra([(0, 0), (0, 1)])


def rand_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)
