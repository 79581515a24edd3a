import numpy as np
import pytest

from qspsim.config import get_settings
from qspsim.numerics.models import PhaseSequence
from qspsim.services.hamiltonian_io import random_hamiltonian


@pytest.fixture(autouse=True)
def _fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240521)


def random_phases(rng: np.random.Generator, N: int) -> PhaseSequence:
    return PhaseSequence(phases=tuple(rng.uniform(-np.pi, np.pi, N)))


@pytest.fixture
def small_hamiltonian(rng):
    """Random 2-qubit, 2-sparse instance."""
    return random_hamiltonian(2, 2, rng)


@pytest.fixture
def theta_samples(rng) -> np.ndarray:
    return rng.uniform(-np.pi, np.pi, 1000)
