import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from weakdiscord.states import random_density, werner_singlet

settings.register_profile(
    "repro", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repro")


@pytest.fixture(scope="session")
def werner_half():
    return werner_singlet(0.5)


@pytest.fixture(scope="session")
def singlet():
    return werner_singlet(1.0)


@pytest.fixture(scope="session")
def two_qubit_states():
    """Ten seeded two-qubit states spanning ranks 1..4."""
    return [random_density(2, 2, 1 + i % 4, seed=1000 + i) for i in range(10)]


def maxabs(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
