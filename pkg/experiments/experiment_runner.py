"""
Experiment runner module - runs seeded trials of every algorithm and aggregates the results.
"""
import glob
import json
import multiprocessing as mp
import os
import warnings
import zlib

import numpy as np

from analysis.result_analyzer import FAILURES_FILE, RECORDS_DIR, ResultAnalyzer, records_to_frame
from analysis.table_writer import emit_table
from experiments.settings import Settings
from landscape.instance_store import write_instance
from search.baselines import run_baseline
from search.memetic_optimizer import VaeMemeticOptimizer


def derive_seed(master_seed, algorithm, trial):
    """
    Trial seed as a pure function of (master seed, algorithm name, trial number)

    Returns:
    - Non-negative 63-bit integer
    """
    entropy = [int(master_seed), zlib.crc32(algorithm.encode("utf-8")), int(trial)]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def record_filename(algorithm, trial):
    return f"{algorithm}__trial{trial:04d}.json"


def run_trial(instance, algorithm, trial, seed, max_evaluations):
    """
    One seeded run of one algorithm

    Parameters:
    - instance: NkInstance
    - algorithm: AlgorithmSpec
    - trial: Trial number
    - seed: Trial seed from derive_seed
    - max_evaluations: Evaluation budget

    Returns:
    - RunRecord
    """
    if algorithm.kind == "memetic":
        config = algorithm.memetic_config(max_evaluations, seed)
        return VaeMemeticOptimizer(instance, config).run(trial=trial, algorithm=algorithm.name)
    shuffle = algorithm.options.get("shuffle", "once")
    return run_baseline(algorithm.kind, instance, max_evaluations, seed, trial, algorithm.name, shuffle)


def _run_job(job):
    instance, algorithm, trial, seed, max_evaluations = job
    try:
        return algorithm.name, trial, run_trial(instance, algorithm, trial, seed, max_evaluations), None
    except Exception as e:
        return algorithm.name, trial, None, f"{type(e).__name__}: {e}"


class ExperimentRunner:
    def __init__(self, spec, settings=None):
        """
        Initialize with a validated experiment spec

        Parameters:
        - spec: ExperimentSpec
        - settings: Settings (read from the environment if None)
        """
        self.spec = spec
        self.settings = settings or Settings.from_env()
        self.output_dir = spec.output_dir or self.settings.output_dir
        self.records = []
        self.failures = []

    def jobs(self, instance):
        spec = self.spec
        for algorithm in spec.algorithms:
            for trial in range(spec.trials):
                seed = derive_seed(spec.seed, algorithm.name, trial)
                yield instance, algorithm, trial, seed, spec.max_evaluations

    def _collect(self, result):
        name, trial, record, error = result
        if record is None:
            self.failures.append({"algorithm": name, "trial": trial, "error": error})
            print(f"❌ {name} trial {trial} failed: {error}")
            return
        self.records.append(record)
        record.save(os.path.join(self.output_dir, RECORDS_DIR, record_filename(name, trial)))
        if self.settings.verbose:
            print(f"{name} trial {trial}: best={record.final_best_fitness:.6f} "
                  f"evaluations={record.evaluations_used} termination={record.termination}")

    def run_experiment(self):
        """
        Run every (algorithm, trial), persist the RunRecords and build the result table

        Returns:
        - ResultTable computed from the completed trials
        """
        spec = self.spec
        records_dir = os.path.join(self.output_dir, RECORDS_DIR)
        os.makedirs(records_dir, exist_ok=True)
        # records/ holds only the trials of this run
        for path in glob.glob(os.path.join(records_dir, "*.json")):
            os.remove(path)
        failures_path = os.path.join(self.output_dir, FAILURES_FILE)
        if os.path.exists(failures_path):
            os.remove(failures_path)
        instance = spec.build_instance()
        write_instance(instance, os.path.join(self.output_dir, "instance.npz"))
        print(f"Running {spec.trials} trial(s) of {', '.join(spec.algorithm_names())} on {instance}")

        self.records, self.failures = [], []
        jobs = list(self.jobs(instance))
        workers = 1 if self.settings.reproducible else self.settings.workers
        if workers > 1:
            with mp.Pool(workers) as pool:
                for result in pool.imap(_run_job, jobs):
                    self._collect(result)
        else:
            for job in jobs:
                self._collect(_run_job(job))

        with open(os.path.join(self.output_dir, FAILURES_FILE), "w", encoding="utf-8") as f:
            json.dump(self.failures, f, indent=2)
        if self.failures:
            warnings.warn(f"{len(self.failures)} trial(s) failed; table uses completed trials only")

        analyzer = ResultAnalyzer(records_to_frame(self.records), failures=self.failures)
        table = analyzer.build_table(reference=spec.reference, comparison=spec.comparison)
        print(emit_table(table, self.output_dir))
        print(f"Results saved to {self.output_dir}")
        return table


def run_experiment(spec, settings=None):
    return ExperimentRunner(spec, settings).run_experiment()
