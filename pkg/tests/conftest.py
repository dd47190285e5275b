import numpy as np
import pytest

GRID = [np.pi / 12, np.pi / 8, np.pi / 6, np.pi / 5, np.pi / 4]


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
