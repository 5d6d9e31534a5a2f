import numpy as np
import pytest
from hypothesis import settings

from prahm.modes import canonical_mode

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def te_mode():
    return canonical_mode("TE")


@pytest.fixture(scope="session")
def tm_mode():
    return canonical_mode("TM")


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
