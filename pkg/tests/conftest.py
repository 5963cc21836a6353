"""Shared fixtures for the test suite."""
import os
import sys

import numpy as np
import pytest

# Add root directory to path so we can import the packages
root_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, root_dir)

from landscape.nk_instance import NkInstance, generate_instance  # noqa: E402
from neural.trainer import TrainConfig  # noqa: E402
from search.memetic_optimizer import AlgorithmConfig  # noqa: E402


def exhaustive_neighbor_check(instance, genome, fitness, tol=1e-12):
    """True when no single flip improves on fitness (full, unmetered evaluations)."""
    for j in range(instance.n):
        flipped = genome.copy()
        flipped[j] ^= 1
        if instance.fitness(flipped) > fitness + tol:
            return False
    return True


@pytest.fixture
def small_instance() -> NkInstance:
    return generate_instance(12, 3, seed=7)


@pytest.fixture
def medium_instance() -> NkInstance:
    return generate_instance(20, 3, seed=11)


@pytest.fixture
def tiny_memetic_config() -> AlgorithmConfig:
    return AlgorithmConfig(
        population_size=8,
        offspring_per_parent=3,
        hidden_size=16,
        latent_dim=4,
        train=TrainConfig(batch_size=4, epochs=3),
        max_evaluations=20_000,
        seed=5,
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
