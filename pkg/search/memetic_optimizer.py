"""
Memetic optimizer module - VAE offspring sampling hybridized with First Improvement Hill Climbing.

One generation: train the VAE on the population, sample n_vae offspring per parent from the
parent's posterior, refine them by hill climbing, drop everything already generated in this run,
and keep the lambda fittest of parents plus new offspring.
"""
from dataclasses import dataclass, field

import numpy as np

from landscape.evaluation_budget import BudgetExhausted, EvaluationBudget
from landscape.nk_instance import genome_key, genome_to_string, random_genome
from neural.trainer import TrainConfig, VaeTrainer
from neural.vae_model import INFERENCE, VaeModel
from search.hill_climber import SHUFFLE_ONCE, FirstImprovementHillClimber
from search.population import HistorySet, Individual, OffspringBatch, Population
from search.run_record import (TERMINATION_BUDGET, TERMINATION_GENERATIONS, TERMINATION_INIT,
                               TERMINATION_STALLED, RunRecord, instance_summary)

MODEL_FRESH = "fresh"
MODEL_WARM = "warm"


@dataclass
class AlgorithmConfig:
    population_size: int | None = None
    offspring_per_parent: int = 10
    hidden_size: int = 4096
    latent_dim: int = 32
    train: TrainConfig = field(default_factory=TrainConfig)
    shuffle: str = SHUFFLE_ONCE
    filter_raw: bool = True
    model_init: str = MODEL_FRESH
    local_search: bool = True
    max_evaluations: int = 30_000_000
    seed: int = 0
    max_stalled_generations: int = 50
    max_generations: int | None = None

    def __post_init__(self):
        if isinstance(self.train, dict):
            self.train = TrainConfig(**self.train)
        if self.population_size is not None and self.population_size < 1:
            raise ValueError("population_size must be at least 1")
        if self.offspring_per_parent < 1:
            raise ValueError("offspring_per_parent must be at least 1")
        if self.model_init not in (MODEL_FRESH, MODEL_WARM):
            raise ValueError(f"model_init must be '{MODEL_FRESH}' or '{MODEL_WARM}'")

    def lambda_for(self, instance):
        """Population size; defaults to the problem size N."""
        return self.population_size if self.population_size is not None else instance.n


def survival_selection(population, offspring, population_size):
    """
    Truncation selection over parents plus offspring

    Ties in fitness prefer offspring over parents, then the lexicographically smaller genome.

    Parameters:
    - population: Current Population
    - offspring: List of Individual (C'')
    - population_size: lambda

    Returns:
    - Next Population of the population_size fittest
    """
    pool = [(ind, 1) for ind in population] + [(ind, 0) for ind in offspring]
    pool.sort(key=lambda entry: (-entry[0].fitness, entry[1], genome_key(entry[0].genome)))
    return Population([ind for ind, _ in pool[:population_size]])


class VaeMemeticOptimizer:
    def __init__(self, instance, config, verbose=False):
        """
        Initialize the optimizer for one instance

        Parameters:
        - instance: NkInstance
        - config: AlgorithmConfig
        - verbose: Print one line per generation
        """
        self.instance = instance
        self.config = config
        self.verbose = verbose
        self.population_size = config.lambda_for(instance)
        self.climber = FirstImprovementHillClimber(instance, config.shuffle)

    def initialize(self, rng, budget):
        """
        Lambda uniform random genomes, each refined by hill climbing

        Returns:
        - Tuple (Population, HistorySet, exhausted)
        """
        population, history = Population(), HistorySet()
        for _ in range(self.population_size):
            result = self.climber.climb(random_genome(self.instance.n, rng), rng, budget)
            if result.fitness is not None:
                population.members.append(Individual(result.genome, result.fitness))
                history.add(result.genome)
            if result.exhausted:
                return population, history, True
        return population, history, False

    def generate_offspring(self, model, population, rng, history):
        """
        Sample offspring_per_parent genomes from each parent's posterior

        Each draw is z = mu + exp(logvar / 2) * noise with fresh noise; decoded probabilities of 0.5
        or more become 1. With filter_raw on, samples already in history or already drawn this
        generation are dropped rather than resampled.

        Returns:
        - List of raw offspring genomes (C)
        """
        if not len(population):
            return []
        parents = population.genomes_matrix()
        n_vae = self.config.offspring_per_parent
        mu, logvar = model.encode(parents)
        noise = rng.standard_normal((mu.shape[0], n_vae, mu.shape[1]))
        z = mu[:, None, :] + np.exp(0.5 * logvar)[:, None, :] * noise
        probabilities = model.decode(z.reshape(-1, mu.shape[1]))
        samples = (probabilities >= 0.5).astype(np.uint8)

        if not self.config.filter_raw:
            return list(samples)
        offspring, seen = [], set()
        for genome in samples:
            key = genome_key(genome)
            if key in seen or genome in history:
                continue
            seen.add(key)
            offspring.append(genome)
        return offspring

    def refine_and_dedup(self, raw, rng, budget, history):
        """
        Hill-climb every raw offspring and keep the new unique results

        C'' holds one copy of each refined genome absent from history before this call. All raw
        and refined genomes are added to history afterwards.

        Returns:
        - Tuple (OffspringBatch, history)
        """
        refined, exhausted = [], False
        for genome in raw:
            if self.config.local_search:
                result = self.climber.climb(genome, rng, budget)
                if result.fitness is not None:
                    refined.append(Individual(result.genome, result.fitness))
                exhausted = result.exhausted
            else:
                try:
                    refined.append(Individual(genome, self.instance.evaluate(genome, budget)))
                except BudgetExhausted:
                    exhausted = True
            if exhausted:
                break

        unique, seen = [], set()
        for ind in refined:
            key = genome_key(ind.genome)
            if key in seen or ind.genome in history:
                continue
            seen.add(key)
            unique.append(ind)

        history.update(raw)
        history.update(ind.genome for ind in refined)
        return OffspringBatch(raw=list(raw), refined=refined, unique=unique, exhausted=exhausted), history

    def survival_selection(self, population, offspring):
        return survival_selection(population, offspring, self.population_size)

    def _build_model(self, rng):
        config = self.config
        return VaeModel(self.instance.n, config.hidden_size, config.latent_dim, rng)

    def run(self, trial=0, algorithm="memetic", on_generation=None):
        """
        Run until the evaluation budget is spent

        Parameters:
        - trial: Trial number stored in the record
        - algorithm: Algorithm name stored in the record
        - on_generation: Optional callback(generation, population, batch) after each selection

        Returns:
        - RunRecord
        """
        config = self.config
        search_seq, model_seq, shuffle_seq = np.random.SeedSequence(config.seed).spawn(3)
        search_rng = np.random.Generator(np.random.PCG64(search_seq))
        model_rng = np.random.Generator(np.random.PCG64(model_seq))
        shuffle_rng = np.random.Generator(np.random.PCG64(shuffle_seq))
        budget = EvaluationBudget(config.max_evaluations)

        population, history, exhausted = self.initialize(search_rng, budget)
        termination = TERMINATION_INIT if exhausted else TERMINATION_BUDGET
        generation, stalled, model = 0, 0, None

        while not exhausted:
            if config.max_generations is not None and generation >= config.max_generations:
                termination = TERMINATION_GENERATIONS
                break
            if stalled >= config.max_stalled_generations:
                termination = TERMINATION_STALLED
                break

            if model is None or config.model_init == MODEL_FRESH:
                model = self._build_model(model_rng)
            train_config = TrainConfig(config.train.batch_size, config.train.epochs,
                                       config.train.learning_rate, int(shuffle_rng.integers(2 ** 62)))
            VaeTrainer(train_config).train(model, population.genomes_matrix(), model_rng)
            model.set_mode(INFERENCE)

            used_before = budget.used
            raw = self.generate_offspring(model, population, search_rng, history)
            batch, history = self.refine_and_dedup(raw, search_rng, budget, history)
            population = self.survival_selection(population, batch.unique)
            generation += 1
            exhausted = batch.exhausted or budget.exhausted
            stalled = stalled + 1 if budget.used == used_before else 0

            if self.verbose:
                print(f"Generation {generation}: |C|={len(raw)} |C''|={len(batch.unique)} "
                      f"best={population.best().fitness:.6f} evaluations={budget.used}")
            if on_generation is not None:
                on_generation(generation, population, batch)

        best = population.best()
        overall = budget.best_fitness
        return RunRecord(
            algorithm=algorithm,
            trial=trial,
            seed=config.seed,
            instance=instance_summary(self.instance),
            max_evaluations=config.max_evaluations,
            evaluations_used=budget.used,
            final_best_fitness=overall,
            best_genome=genome_to_string(best.genome) if best is not None else None,
            generations=generation,
            termination=termination,
            trace=budget.final_trace(),
            population=population.summary(),
            history_size=len(history),
            seeds={"master": config.seed, "search": int(search_seq.generate_state(1)[0]),
                   "model": int(model_seq.generate_state(1)[0]), "shuffle": int(shuffle_seq.generate_state(1)[0])},
        )
