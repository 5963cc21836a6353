"""Tests for the First Improvement Hill Climber."""
import numpy as np
import pytest

from conftest import exhaustive_neighbor_check
from landscape.evaluation_budget import EvaluationBudget
from landscape.nk_instance import NkInstance, generate_instance
from search.hill_climber import SHUFFLE_PER_SWEEP, FirstImprovementHillClimber, fihc


class TestFihc:
    """Core behavior of fihc()."""

    def test_optimum_is_returned_unchanged(self, small_instance, rng) -> None:
        optimum, value = small_instance.brute_force_optimum()
        result = fihc(small_instance, optimum, rng, EvaluationBudget(10_000))
        np.testing.assert_array_equal(result.genome, optimum)
        assert not result.improved
        assert result.fitness == pytest.approx(value, abs=1e-12)

    def test_separable_instance_climbs_to_all_ones(self, rng) -> None:
        tables = np.column_stack([np.linspace(0.05, 0.4, 9), np.linspace(0.5, 0.95, 9)])
        instance = NkInstance(9, 0, np.zeros((9, 0)), tables)
        for _ in range(5):
            start = rng.integers(0, 2, 9).astype(np.uint8)
            result = fihc(instance, start, rng, EvaluationBudget(1000))
            np.testing.assert_array_equal(result.genome, np.ones(9))

    def test_results_are_local_optima(self, rng) -> None:
        instance = generate_instance(16, 3, seed=5)
        for _ in range(100):
            start = rng.integers(0, 2, 16).astype(np.uint8)
            result = fihc(instance, start, rng, EvaluationBudget(100_000))
            assert not result.exhausted
            assert exhaustive_neighbor_check(instance, result.genome, result.fitness)

    def test_local_optima_across_instances(self) -> None:
        checked = 0
        for seed in range(20):
            instance = generate_instance(14 + seed % 5, 1 + seed % 5, seed=seed)
            rng = np.random.default_rng(seed)
            for _ in range(10):
                start = rng.integers(0, 2, instance.n).astype(np.uint8)
                result = fihc(instance, start, rng, EvaluationBudget(100_000))
                if result.exhausted:
                    continue
                assert exhaustive_neighbor_check(instance, result.genome, result.fitness)
                checked += 1
        assert checked == 200

    def test_fitness_matches_full_evaluation(self, medium_instance, rng) -> None:
        start = rng.integers(0, 2, 20).astype(np.uint8)
        result = fihc(medium_instance, start, rng, EvaluationBudget(100_000))
        assert abs(result.fitness - medium_instance.evaluate(result.genome)) <= 1e-12

    def test_monotone(self, medium_instance, rng) -> None:
        for _ in range(20):
            start = rng.integers(0, 2, 20).astype(np.uint8)
            start_fitness = medium_instance.evaluate(start)
            result = fihc(medium_instance, start, rng, EvaluationBudget(100_000))
            assert result.fitness >= start_fitness
            assert result.improved == (result.fitness > start_fitness)

    def test_deterministic(self, medium_instance) -> None:
        start = np.random.default_rng(3).integers(0, 2, 20).astype(np.uint8)
        a = fihc(medium_instance, start, np.random.default_rng(9), EvaluationBudget(100_000))
        b = fihc(medium_instance, start, np.random.default_rng(9), EvaluationBudget(100_000))
        np.testing.assert_array_equal(a.genome, b.genome)
        assert a.evaluations_used == b.evaluations_used

    def test_start_is_not_modified(self, medium_instance, rng) -> None:
        start = rng.integers(0, 2, 20).astype(np.uint8)
        before = start.copy()
        fihc(medium_instance, start, rng, EvaluationBudget(100_000))
        np.testing.assert_array_equal(start, before)

    def test_optimum_costs_one_sweep(self, small_instance, rng) -> None:
        """From a local optimum: one start evaluation plus one trial per bit."""
        optimum, _ = small_instance.brute_force_optimum()
        budget = EvaluationBudget(10_000)
        result = fihc(small_instance, optimum, rng, budget)
        assert result.evaluations_used == budget.used == small_instance.n + 1

    def test_per_sweep_shuffle_also_reaches_local_optimum(self, medium_instance, rng) -> None:
        climber = FirstImprovementHillClimber(medium_instance, shuffle=SHUFFLE_PER_SWEEP)
        for _ in range(20):
            result = climber.climb(rng.integers(0, 2, 20).astype(np.uint8), rng, EvaluationBudget(100_000))
            assert exhaustive_neighbor_check(medium_instance, result.genome, result.fitness)

    def test_rejects_unknown_shuffle_policy(self, medium_instance) -> None:
        with pytest.raises(ValueError):
            FirstImprovementHillClimber(medium_instance, shuffle="sometimes")


class TestFihcBudget:
    """Budget exhaustion inside a climb."""

    def test_exhaustion_keeps_progress(self, medium_instance, rng) -> None:
        start = rng.integers(0, 2, 20).astype(np.uint8)
        start_fitness = medium_instance.evaluate(start)
        budget = EvaluationBudget(8)
        result = fihc(medium_instance, start, rng, budget)
        assert result.exhausted
        assert budget.used == 8
        assert result.fitness >= start_fitness
        assert abs(result.fitness - medium_instance.evaluate(result.genome)) <= 1e-12

    def test_exhausted_before_start(self, medium_instance, rng) -> None:
        budget = EvaluationBudget(0)
        result = fihc(medium_instance, np.zeros(20, dtype=np.uint8), rng, budget)
        assert result.exhausted
        assert result.fitness is None
        assert budget.used == 0
