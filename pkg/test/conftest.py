"""Shared fixtures: seeded generators, random states and exact QFT-MPOs."""

from typing import Callable, Dict

import numpy as np
import pytest

from app.qft.circuit import build_qn_dense
from app.qft.mpo import mpo_cache
from app.schemas.policy import EXACT
from app.tn.chain import Mpo


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240229)


@pytest.fixture
def random_vector(rng: np.random.Generator) -> Callable[[int], np.ndarray]:
    """Factory of unit-norm complex Gaussian vectors of length 2^n"""

    def make(n: int) -> np.ndarray:
        v = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
        return v / np.linalg.norm(v)

    return make


@pytest.fixture(scope="session")
def exact_qft_mpo() -> Callable[[int], Mpo]:
    """Uncompressed QFT-MPO of Q_n, shared through the process cache"""
    return lambda n: mpo_cache.get(n, EXACT)


@pytest.fixture(scope="session")
def qn_dense() -> Callable[[int], np.ndarray]:
    """Dense Q_n as a plain array, built once per n"""
    cache: Dict[int, np.ndarray] = {}

    def get(n: int) -> np.ndarray:
        if n not in cache:
            cache[n] = np.asarray(build_qn_dense(n))
        return cache[n]

    return get
