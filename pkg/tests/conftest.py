from functools import lru_cache, reduce
from math import sqrt

import numpy as np
import pytest

from qcardgame.game import monte_carlo
from qcardgame.rng import SplitMix64

GHZ = np.array([1, 0, 0, 0, 0, 0, 0, 1], dtype=complex) / sqrt(2)


def kron_all(*ops):
    """Full operator/state by repeated Kronecker product, qubit 0 leftmost."""
    return reduce(np.kron, ops)


def random_state(rng: np.random.Generator, n: int = 3) -> np.ndarray:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def np_rng():
    return np.random.default_rng(20001118)


@pytest.fixture
def stream():
    return SplitMix64(7)


@lru_cache(maxsize=None)
def cached_monte_carlo(strategy, rounds, seed):
    """Shared across test modules so large runs happen once per session."""
    return monte_carlo(strategy, rounds, seed)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in sorted(test_acceptance.RESULTS.items()):
        terminalreporter.write_line(f"{verdict}  {name}")
