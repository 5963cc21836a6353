# Search package initialization
from search.hill_climber import FihcResult, FirstImprovementHillClimber, fihc
from search.population import HistorySet, Individual, OffspringBatch, Population
from search.run_record import RunRecord
from search.memetic_optimizer import AlgorithmConfig, VaeMemeticOptimizer, survival_selection
from search.baselines import msls_run, random_search_run
