"""
NK instance module - random-neighborhood NK landscapes with full and incremental evaluation.

Variables are indexed from 0. The payoff table of subfunction i is indexed by the bit pattern
(x_i, x_{i_1}, ..., x_{i_k}) read as a binary number with x_i as the most significant bit.
"""
import numpy as np

PRNG_NAME = "PCG64"
BRUTE_FORCE_LIMIT = 24
GENOME_DTYPE = np.uint8


def as_genome(bits, n=None):
    """
    Coerce a bit sequence into the canonical genome representation

    Parameters:
    - bits: Sequence of 0/1 values
    - n: Expected length (optional)

    Returns:
    - 1-D numpy array of dtype uint8
    """
    genome = np.asarray(bits)
    if genome.ndim != 1:
        raise ValueError(f"genome must be one-dimensional, got shape {genome.shape}")
    if n is not None and genome.size != n:
        raise ValueError(f"genome length {genome.size} does not match n={n}")
    if genome.size and not np.all((genome == 0) | (genome == 1)):
        raise ValueError("genome entries must be 0 or 1")
    return genome.astype(GENOME_DTYPE, copy=False)


def genome_key(genome):
    """Exact, hashable content of a genome (used for set membership)."""
    return np.ascontiguousarray(genome, dtype=GENOME_DTYPE).tobytes()


def genome_to_string(genome):
    return "".join("1" if b else "0" for b in genome)


def genome_from_string(text):
    return as_genome([int(c) for c in text.strip()])


def random_genome(n, rng):
    return rng.integers(0, 2, size=n, dtype=GENOME_DTYPE)


class NkInstance:
    def __init__(self, n, k, neighbors, tables, seed=None):
        """
        Build an instance from explicit neighbor lists and payoff tables

        Parameters:
        - n: Number of variables
        - k: Number of co-dependent variables per subfunction
        - neighbors: Integer array-like of shape (n, k)
        - tables: Float array-like of shape (n, 2^(k+1)), entries in [0, 1)
        - seed: Generation seed, kept as metadata (None for hand-built instances)
        """
        if n < 1:
            raise ValueError("n must be at least 1")
        if not 0 <= k <= n - 1:
            raise ValueError(f"k must satisfy 0 <= k <= n-1, got n={n}, k={k}")

        neighbors = np.asarray(neighbors, dtype=np.int64).reshape(n, k)
        tables = np.asarray(tables, dtype=np.float64)
        if tables.shape != (n, 2 ** (k + 1)):
            raise ValueError(f"tables must have shape {(n, 2 ** (k + 1))}, got {tables.shape}")
        if not np.all((tables >= 0.0) & (tables < 1.0)):
            raise ValueError("table entries must lie in [0, 1)")
        for i in range(n):
            row = neighbors[i]
            if np.any((row < 0) | (row >= n)) or np.any(row == i) or len(set(row.tolist())) != k:
                raise ValueError(f"neighbors of variable {i} must be {k} distinct indices other than {i}")

        self.n = int(n)
        self.k = int(k)
        self.seed = None if seed is None else int(seed)
        self.neighbors = neighbors
        self.tables = tables
        self.neighbors.setflags(write=False)
        self.tables.setflags(write=False)

        # Row i lists the arguments of subfunction i, most significant first
        self._args = np.concatenate([np.arange(n, dtype=np.int64)[:, None], neighbors], axis=1)
        self._weights = (1 << np.arange(k, -1, -1)).astype(np.int64)
        self._rows = np.arange(n)

        self.inverse_index = []
        self._flip_weights = []
        for j in range(n):
            rows, positions = np.nonzero(self._args == j)
            self.inverse_index.append(rows)
            self._flip_weights.append(self._weights[positions])

    def __eq__(self, other):
        if not isinstance(other, NkInstance):
            return NotImplemented
        return (self.n == other.n and self.k == other.k and self.seed == other.seed
                and np.array_equal(self.neighbors, other.neighbors)
                and np.array_equal(self.tables, other.tables))

    def __repr__(self):
        return f"NkInstance(n={self.n}, k={self.k}, seed={self.seed})"

    def context_indices(self, genome):
        """Table index of every subfunction for the given genome."""
        return np.asarray(genome)[self._args].astype(np.int64) @ self._weights

    def fitness(self, genome):
        """Objective value without touching any budget."""
        return float(self.tables[self._rows, self.context_indices(genome)].sum() / self.n)

    def evaluate(self, genome, budget=None):
        """
        Full evaluation f(x) = mean over i of the subfunction payoffs

        Parameters:
        - genome: Genome of length n
        - budget: EvaluationBudget charged one evaluation (None evaluates unmetered)

        Returns:
        - Fitness in [0, 1)
        """
        if len(genome) != self.n:
            raise ValueError(f"genome length {len(genome)} does not match n={self.n}")
        if budget is not None:
            budget.charge()
        value = self.fitness(genome)
        if budget is not None:
            budget.record(value)
        return value

    def evaluate_delta(self, genome, current_fitness, flip_index, budget=None):
        """
        Fitness of genome with one bit flipped, re-evaluating only the affected subfunctions

        Parameters:
        - genome: Genome whose fitness is current_fitness (not modified)
        - current_fitness: evaluate(genome)
        - flip_index: Variable to flip
        - budget: EvaluationBudget charged one evaluation (None evaluates unmetered)

        Returns:
        - Fitness of the flipped genome
        """
        if not 0 <= flip_index < self.n:
            raise IndexError(f"flip_index {flip_index} out of range for n={self.n}")
        if len(genome) != self.n:
            raise ValueError(f"genome length {len(genome)} does not match n={self.n}")
        if budget is not None:
            budget.charge()

        rows = self.inverse_index[flip_index]
        old_idx = np.asarray(genome)[self._args[rows]].astype(np.int64) @ self._weights
        new_idx = old_idx ^ self._flip_weights[flip_index]
        table_rows = self.tables[rows]
        change = table_rows[np.arange(len(rows)), new_idx].sum() - table_rows[np.arange(len(rows)), old_idx].sum()
        value = float(current_fitness + change / self.n)

        if budget is not None:
            budget.record(value)
        return value

    def brute_force_optimum(self, chunk_bits=14):
        """
        Global maximizer by exhaustive enumeration (n <= 24)

        Ties are broken towards the lowest binary value, reading x_0 as the most significant bit.
        No budget is consulted.

        Returns:
        - Tuple (genome, fitness)
        """
        if self.n > BRUTE_FORCE_LIMIT:
            raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_LIMIT}, got n={self.n}")

        shifts = np.arange(self.n - 1, -1, -1, dtype=np.int64)
        total = 1 << self.n
        step = 1 << min(chunk_bits, self.n)
        best_value, best_fitness = 0, -np.inf

        for start in range(0, total, step):
            values = np.arange(start, min(start + step, total), dtype=np.int64)
            bits = ((values[:, None] >> shifts) & 1).astype(np.int64)
            idx = bits[:, self._args] @ self._weights
            fitness = self.tables[self._rows, idx].sum(axis=1) / self.n
            pos = int(np.argmax(fitness))
            if fitness[pos] > best_fitness:
                best_fitness = float(fitness[pos])
                best_value = int(values[pos])

        genome = as_genome((best_value >> shifts) & 1)
        return genome, best_fitness


def _partial_fisher_yates(pool, k, rng):
    pool = pool.copy()
    for t in range(k):
        r = int(rng.integers(t, len(pool)))
        pool[t], pool[r] = pool[r], pool[t]
    return pool[:k]


def generate_instance(n, k, seed):
    """
    Seeded random NK instance

    Parameters:
    - n: Problem size
    - k: Epistasis degree, 0 <= k <= n-1
    - seed: Integer seed for the PCG64 generator

    Returns:
    - NkInstance, bit-identical for identical (n, k, seed)
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if k < 0 or k >= n:
        raise ValueError(f"cannot pick k={k} distinct neighbors among n-1={n - 1} variables")

    rng = np.random.Generator(np.random.PCG64(seed))
    everyone = np.arange(n, dtype=np.int64)
    neighbors = np.empty((n, k), dtype=np.int64)
    for i in range(n):
        neighbors[i] = _partial_fisher_yates(everyone[everyone != i], k, rng)
    tables = rng.random((n, 2 ** (k + 1)))
    return NkInstance(n, k, neighbors, tables, seed=seed)


def evaluate(instance, genome, budget=None):
    return instance.evaluate(genome, budget)


def evaluate_delta(instance, genome, current_fitness, flip_index, budget=None):
    return instance.evaluate_delta(genome, current_fitness, flip_index, budget)


def brute_force_optimum(instance):
    return instance.brute_force_optimum()
