import random

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from assocf import zoo

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def builtins():
    return {name: builder() for name, builder in zoo.BUILTINS.items()}


@pytest.fixture
def rng():
    return random.Random(20260817)


def random_magma(seed, size):
    """A uniformly random operation table, stdlib-seeded for reproducibility."""
    gen = np.random.default_rng(seed)
    names = tuple(f"g{i}" for i in range(size))
    from assocf.magmas import Magma

    return Magma(names, gen.integers(0, size, size=(size, size)))
