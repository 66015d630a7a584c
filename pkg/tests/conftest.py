import numpy as np
import pytest

from uvlab import corpus


@pytest.fixture(scope="session")
def k3():
    return corpus.load("k3_n2")


@pytest.fixture(scope="session")
def k3_coloring():
    return corpus.witness_coloring("k3_n2")


@pytest.fixture(scope="session")
def k4():
    return corpus.load("k4_n2")


@pytest.fixture
def rng():
    return np.random.default_rng(20240731)
