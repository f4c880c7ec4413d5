import numpy as np
import pytest

from logwave.grid import TorusGrid


@pytest.fixture
def grid64():
    return TorusGrid(1, 64)


@pytest.fixture
def grid256():
    return TorusGrid(1, 256)


@pytest.fixture
def grid1024():
    return TorusGrid(1, 1024)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
