"""
Baselines module - multi-start local search and uniform random sampling under the same budget.
"""
import numpy as np

from landscape.evaluation_budget import BudgetExhausted, EvaluationBudget
from landscape.nk_instance import genome_to_string, random_genome
from search.hill_climber import SHUFFLE_ONCE, FirstImprovementHillClimber
from search.run_record import RunRecord, instance_summary


def _record(algorithm, instance, budget, best, starts, seed, trial):
    best_genome, _ = best
    return RunRecord(
        algorithm=algorithm,
        trial=trial,
        seed=seed,
        instance=instance_summary(instance),
        max_evaluations=budget.max_evaluations,
        evaluations_used=budget.used,
        final_best_fitness=budget.best_fitness,
        best_genome=genome_to_string(best_genome) if best_genome is not None else None,
        generations=starts,
        trace=budget.final_trace(),
        seeds={"master": seed},
    )


def msls_run(instance, budget, rng, shuffle=SHUFFLE_ONCE, seed=None, trial=0, algorithm="msls"):
    """
    Multi-start local search: hill-climb fresh uniform random genomes until the budget is spent

    A climb cut off by the budget still contributes the best genome it reached.

    Parameters:
    - instance: NkInstance
    - budget: Fresh EvaluationBudget
    - rng: numpy Generator
    - shuffle: Hill climber bit-order policy
    - seed, trial, algorithm: Metadata stored in the record

    Returns:
    - RunRecord; `generations` counts the started climbs
    """
    climber = FirstImprovementHillClimber(instance, shuffle)
    best, starts = (None, -np.inf), 0
    while not budget.exhausted:
        result = climber.climb(random_genome(instance.n, rng), rng, budget)
        starts += 1
        if result.fitness is not None and result.fitness > best[1]:
            best = (result.genome, result.fitness)
        if result.exhausted:
            break
    return _record(algorithm, instance, budget, best, starts, seed, trial)


def random_search_run(instance, budget, rng, seed=None, trial=0, algorithm="random"):
    """
    Uniform random sampling until the budget is spent

    Returns:
    - RunRecord; `generations` counts the sampled genomes
    """
    best, samples = (None, -np.inf), 0
    while True:
        genome = random_genome(instance.n, rng)
        try:
            fitness = instance.evaluate(genome, budget)
        except BudgetExhausted:
            break
        samples += 1
        if fitness > best[1]:
            best = (genome, fitness)
    return _record(algorithm, instance, budget, best, samples, seed, trial)


def run_baseline(kind, instance, max_evaluations, seed, trial=0, algorithm=None, shuffle=SHUFFLE_ONCE):
    """Seeded entry point used by the experiment runner."""
    rng = np.random.Generator(np.random.PCG64(seed))
    budget = EvaluationBudget(max_evaluations)
    if kind == "msls":
        return msls_run(instance, budget, rng, shuffle, seed, trial, algorithm or kind)
    if kind == "random":
        return random_search_run(instance, budget, rng, seed, trial, algorithm or kind)
    raise ValueError(f"unknown baseline kind {kind!r}")
