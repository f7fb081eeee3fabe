import numpy as np
import pytest

from spinmz import build_basis, build_collective_ops


@pytest.fixture(scope="session")
def basis10():
    return build_basis(10)


@pytest.fixture(scope="session")
def ops10(basis10):
    return build_collective_ops(basis10)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
