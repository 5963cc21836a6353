"""
Hill climber module - First Improvement Hill Climber over single-bit flips.
"""
from dataclasses import dataclass

import numpy as np

from landscape.evaluation_budget import BudgetExhausted

SHUFFLE_ONCE = "once"
SHUFFLE_PER_SWEEP = "per-sweep"


@dataclass
class FihcResult:
    genome: np.ndarray
    fitness: float | None
    evaluations_used: int
    improved: bool
    exhausted: bool = False


class FirstImprovementHillClimber:
    def __init__(self, instance, shuffle=SHUFFLE_ONCE):
        """
        Initialize the climber for one instance

        Parameters:
        - instance: NkInstance to climb on
        - shuffle: "once" draws one random bit order per call, "per-sweep" redraws it every sweep
        """
        if shuffle not in (SHUFFLE_ONCE, SHUFFLE_PER_SWEEP):
            raise ValueError(f"shuffle must be '{SHUFFLE_ONCE}' or '{SHUFFLE_PER_SWEEP}', got {shuffle!r}")
        self.instance = instance
        self.shuffle = shuffle

    def climb(self, start, rng, budget, start_fitness=None):
        """
        Climb from start to a 1-flip local optimum

        Each sweep visits the bit positions in random order and keeps the first strictly improving
        flip it meets. A position is skipped when no flip has been accepted since it was last tried.
        The climb stops after a sweep without an accepted flip, or when the budget runs out.

        Parameters:
        - start: Starting genome (not modified)
        - rng: numpy Generator used for the bit order
        - budget: EvaluationBudget charged for every evaluation
        - start_fitness: Known fitness of start; evaluated (and charged) when None

        Returns:
        - FihcResult; on exhaustion the best genome reached so far with exhausted=True
        """
        instance = self.instance
        n = instance.n
        genome = np.array(start, dtype=np.uint8, copy=True)
        used_before = budget.used

        fitness = start_fitness
        if fitness is None:
            try:
                fitness = instance.evaluate(genome, budget)
            except BudgetExhausted:
                return FihcResult(genome, None, budget.used - used_before, False, exhausted=True)

        accepted = 0
        # Number of accepted flips at the time each position was last tried
        tried_at = np.full(n, -1, dtype=np.int64)
        order = rng.permutation(n)
        first_sweep = True

        try:
            while True:
                if self.shuffle == SHUFFLE_PER_SWEEP and not first_sweep:
                    order = rng.permutation(n)
                first_sweep = False
                accepted_in_sweep = False

                for j in order:
                    if tried_at[j] == accepted:
                        continue
                    tried_at[j] = accepted
                    candidate = instance.evaluate_delta(genome, fitness, j, budget)
                    if candidate > fitness:
                        genome[j] ^= 1
                        fitness = candidate
                        accepted += 1
                        tried_at[j] = accepted
                        accepted_in_sweep = True

                if not accepted_in_sweep:
                    break
        except BudgetExhausted:
            return FihcResult(genome, fitness, budget.used - used_before, accepted > 0, exhausted=True)

        return FihcResult(genome, fitness, budget.used - used_before, accepted > 0)


def fihc(instance, start, rng, budget, shuffle=SHUFFLE_ONCE):
    return FirstImprovementHillClimber(instance, shuffle).climb(start, rng, budget)
