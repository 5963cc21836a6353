"""
Population module - individuals, populations, the all-time history set and offspring batches.
"""
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from landscape.nk_instance import genome_key


class Individual(NamedTuple):
    genome: np.ndarray
    fitness: float


@dataclass
class Population:
    members: list = field(default_factory=list)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def fitnesses(self):
        return np.array([m.fitness for m in self.members], dtype=np.float64)

    def genomes_matrix(self):
        """Members as a float matrix with bits mapped to 0.0 / 1.0 (training data)."""
        return np.array([m.genome for m in self.members], dtype=np.float64)

    def best(self):
        return max(self.members, key=lambda m: m.fitness) if self.members else None

    def summary(self):
        """
        Fitness statistics of the population

        Returns:
        - Dictionary with size, best, mean, min and unique member count
        """
        if not self.members:
            return {"size": 0, "best": None, "mean": None, "min": None, "unique": 0}
        values = self.fitnesses
        return {
            "size": len(self.members),
            "best": float(values.max()),
            "mean": float(values.mean()),
            "min": float(values.min()),
            "unique": len({genome_key(m.genome) for m in self.members}),
        }


class HistorySet:
    """All genomes produced in a run, keyed by their full bit content."""

    def __init__(self):
        self._keys = set()

    def __len__(self):
        return len(self._keys)

    def __contains__(self, genome):
        return genome_key(genome) in self._keys

    def add(self, genome):
        self._keys.add(genome_key(genome))

    def update(self, genomes):
        for genome in genomes:
            self.add(genome)

    def snapshot(self):
        return frozenset(self._keys)


@dataclass
class OffspringBatch:
    raw: list
    refined: list
    unique: list
    exhausted: bool = False
