"""
Evaluation budget module - counts objective evaluations and records best-so-far milestones.
"""
import numpy as np


class BudgetExhausted(Exception):
    """Raised when an evaluation is requested after the budget has been spent.

    This is a termination signal for the search loop, not a failure.
    """


def milestone_schedule(max_evaluations, ratio_exponent=10):
    """
    Geometric evaluation checkpoints round(10^(i/ratio_exponent)), deduplicated

    Parameters:
    - max_evaluations: Largest evaluation count of interest
    - ratio_exponent: Checkpoints per decade (10 gives a ratio of about 1.26)

    Returns:
    - Sorted numpy array of distinct checkpoint counts, all <= max_evaluations
    """
    if max_evaluations < 1:
        return np.array([], dtype=np.int64)
    decades = np.log10(max_evaluations) * ratio_exponent
    exponents = np.arange(0, int(np.floor(decades + 1e-9)) + 1)
    points = np.unique(np.round(10.0 ** (exponents / ratio_exponent)).astype(np.int64))
    return points[points <= max_evaluations]


class EvaluationBudget:
    def __init__(self, max_evaluations):
        """
        Initialize a fresh budget

        Parameters:
        - max_evaluations: Maximum number of objective evaluations allowed
        """
        if max_evaluations < 0:
            raise ValueError("max_evaluations must be non-negative")
        self.max_evaluations = int(max_evaluations)
        self.used = 0
        self.best_fitness = None
        self.trace = []
        self._checkpoints = milestone_schedule(self.max_evaluations)
        self._next_checkpoint = 0

    @property
    def remaining(self):
        return self.max_evaluations - self.used

    @property
    def exhausted(self):
        return self.used >= self.max_evaluations

    def charge(self):
        """Account for one evaluation; raises BudgetExhausted if none is left."""
        if self.used >= self.max_evaluations:
            raise BudgetExhausted(f"evaluation budget of {self.max_evaluations} spent")
        self.used += 1

    def record(self, fitness):
        """
        Register the objective value revealed by the evaluation just charged

        Parameters:
        - fitness: Objective value returned to the caller
        """
        if self.best_fitness is None or fitness > self.best_fitness:
            self.best_fitness = float(fitness)

        checkpoints = self._checkpoints
        while self._next_checkpoint < len(checkpoints) and checkpoints[self._next_checkpoint] <= self.used:
            self.trace.append((int(self.used), self.best_fitness))
            self._next_checkpoint += 1

    def final_trace(self):
        """
        Milestone trace with the final evaluation count appended

        Returns:
        - List of (evaluations, best fitness so far) pairs
        """
        trace = list(self.trace)
        if self.best_fitness is not None and (not trace or trace[-1][0] != self.used):
            trace.append((int(self.used), self.best_fitness))
        return trace
