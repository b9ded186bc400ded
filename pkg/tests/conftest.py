import numpy as np
import pytest

from crowdtherm import ModelParams, ParticleState, SimConfig


@pytest.fixture
def params():
    return ModelParams()


@pytest.fixture
def config():
    return SimConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def make_state(rng, n=10, span=1.0):
    return ParticleState(rng.uniform(0.0, span, size=(n, 2)))
