import numpy as np
import pytest

from triclone.verification import compute_grid


@pytest.fixture(scope="session")
def grid():
    """Channel outputs and measures over the 201-point alpha grid."""
    return compute_grid()


@pytest.fixture
def rng():
    return np.random.default_rng(987)
