import numpy as np
import pytest


@pytest.fixture
def rng():
    # a fixed seed, so that a failing draw can be reproduced
    return np.random.default_rng(1234)
