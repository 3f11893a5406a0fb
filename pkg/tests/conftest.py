import numpy as np
import pytest

from qcore import QContext


@pytest.fixture
def ctx03():
    return QContext(q=0.3)


@pytest.fixture
def ctx05():
    return QContext(q=0.5)


@pytest.fixture
def ctx09():
    return QContext(q=0.9)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
