"""
Result analyzer module - aggregates final best fitnesses of many trials into a result table.
"""
import glob
import json
import os
import warnings
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from analysis.posthoc_tests import dunn_holm, kruskal_wallis, significance_stars
from search.run_record import RunRecord

RECORDS_DIR = "records"
FAILURES_FILE = "failures.json"
COMPARE_REFERENCE = "reference"
COMPARE_ALL_PAIRS = "all-pairs"


TRIAL_COLUMNS = ["algorithm", "trial", "seed", "final_best_fitness", "evaluations_used",
                 "generations", "termination", "n", "k", "instance_seed"]


def records_to_frame(records):
    """
    One row per RunRecord, sorted by algorithm and trial

    Returns:
    - DataFrame with TRIAL_COLUMNS
    """
    rows = []
    for record in records:
        rows.append({
            "algorithm": record.algorithm,
            "trial": record.trial,
            "seed": record.seed,
            "final_best_fitness": record.final_best_fitness,
            "evaluations_used": record.evaluations_used,
            "generations": record.generations,
            "termination": record.termination,
            "n": record.instance.get("n"),
            "k": record.instance.get("k"),
            "instance_seed": record.instance.get("seed"),
        })
    frame = pd.DataFrame(rows, columns=TRIAL_COLUMNS)
    return frame.sort_values(["algorithm", "trial"], kind="mergesort").reset_index(drop=True)


def load_run_records(directory):
    """
    Load every persisted RunRecord of an experiment

    Parameters:
    - directory: Experiment output directory (or its records/ subdirectory)

    Returns:
    - DataFrame with one row per trial
    """
    records_dir = os.path.join(directory, RECORDS_DIR)
    if not os.path.isdir(records_dir):
        records_dir = directory
    paths = sorted(glob.glob(os.path.join(records_dir, "*.json")))
    return records_to_frame([RunRecord.load(path) for path in paths])


def load_failures(directory):
    path = os.path.join(directory, FAILURES_FILE)
    if not os.path.exists(path):
        return []
    with open(path, encoding="utf-8") as f:
        return json.load(f)


@dataclass
class ResultTable:
    rows: pd.DataFrame
    reference: str | None
    comparison: str = COMPARE_REFERENCE
    kruskal_h: float | None = None
    kruskal_p: float | None = None
    pairwise: pd.DataFrame | None = None
    insufficient_samples: bool = False
    warnings: list = field(default_factory=list)

    def equals(self, other):
        """Same numbers (NaN-aware) and same flags."""
        return (self.reference == other.reference
                and self.insufficient_samples == other.insufficient_samples
                and self.rows.reset_index(drop=True).equals(other.rows.reset_index(drop=True)))


class ResultAnalyzer:
    def __init__(self, data_source, failures=None):
        """
        Initialize with trial results from an experiment directory or a pandas DataFrame

        Parameters:
        - data_source: Path to an experiment output directory, path to a CSV of trials,
          or a DataFrame with at least the columns algorithm and final_best_fitness
        - failures: List of failed-trial entries ({"algorithm", "trial", "error"}); read from the
          directory when data_source is a directory and this is None
        """
        if isinstance(data_source, str):
            if os.path.isdir(data_source):
                self.df = load_run_records(data_source)
                if failures is None:
                    failures = load_failures(data_source)
            else:
                self.df = pd.read_csv(data_source)
        elif isinstance(data_source, pd.DataFrame):
            self.df = data_source
        else:
            raise TypeError("data_source must be a directory/CSV path string or pandas DataFrame")
        if "trial" in self.df.columns:
            self.df = self.df.sort_values(["algorithm", "trial"], kind="mergesort").reset_index(drop=True)
        self.failures = failures or []

    def algorithms(self, reference=None):
        """Algorithm names sorted, with the reference (if any) first."""
        names = sorted(set(self.df["algorithm"].tolist()) | {f["algorithm"] for f in self.failures})
        if reference in names:
            names.remove(reference)
            names.insert(0, reference)
        return names

    def samples(self, algorithms=None):
        algorithms = algorithms or self.algorithms()
        completed = self.df.dropna(subset=["final_best_fitness"])
        return [completed.loc[completed["algorithm"] == a, "final_best_fitness"].to_numpy(dtype=np.float64)
                for a in algorithms]

    def calculate_summary(self, reference=None):
        """
        Mean and sample standard deviation of the final best fitness per algorithm

        Returns:
        - DataFrame with columns algorithm, trials, failed, mean, std
        """
        algorithms = self.algorithms(reference)
        failed = pd.Series([f["algorithm"] for f in self.failures], dtype=object).value_counts()
        rows = []
        for algorithm, values in zip(algorithms, self.samples(algorithms)):
            rows.append({
                "algorithm": algorithm,
                "trials": int(values.size),
                "failed": int(failed.get(algorithm, 0)),
                "mean": float(values.mean()) if values.size else np.nan,
                "std": float(values.std(ddof=1)) if values.size > 1 else np.nan,
            })
        return pd.DataFrame(rows, columns=["algorithm", "trials", "failed", "mean", "std"])

    def build_table(self, reference=None, comparison=COMPARE_REFERENCE):
        """
        Result table with Diff against the reference algorithm and Dunn-Holm significance

        Diff is mean(reference) - mean(other) from unrounded means; positive means the reference is better.

        Parameters:
        - reference: Reference algorithm name (defaults to the first algorithm)
        - comparison: "reference" compares reference vs. each other algorithm under one Holm family,
          "all-pairs" adjusts over every pair and reports the reference pairs

        Returns:
        - ResultTable
        """
        if comparison not in (COMPARE_REFERENCE, COMPARE_ALL_PAIRS):
            raise ValueError(f"comparison must be '{COMPARE_REFERENCE}' or '{COMPARE_ALL_PAIRS}'")
        if reference is None:
            names = self.algorithms()
            reference = names[0] if names else None
        summary = self.calculate_summary(reference)
        algorithms = summary["algorithm"].tolist()
        if algorithms and reference not in algorithms:
            raise ValueError(f"reference algorithm {reference!r} has no results")
        notes = [f"{f['algorithm']} trial {f['trial']} failed: {f.get('error', '')}" for f in self.failures]

        rows = summary.copy()
        rows["diff"] = np.nan
        rows["p_raw"] = np.nan
        rows["p_adjusted"] = np.nan
        rows["stars"] = ""
        rows["is_best"] = rows["mean"] == rows["mean"].max()
        rows["reference"] = rows["algorithm"] == reference

        table = ResultTable(rows=rows, reference=reference, comparison=comparison, warnings=notes)
        if len(algorithms) < 2:
            return table

        ref_index = algorithms.index(reference)
        ref_mean = rows.loc[ref_index, "mean"]
        rows.loc[rows.index != ref_index, "diff"] = ref_mean - rows.loc[rows.index != ref_index, "mean"]

        samples = self.samples(algorithms)
        if any(s.size < 2 for s in samples):
            table.insufficient_samples = True
            table.warnings.append("fewer than 2 completed trials for some algorithm; p-values omitted")
            warnings.warn(table.warnings[-1])
            return table

        table.kruskal_h, table.kruskal_p = kruskal_wallis(samples)
        pairwise = dunn_holm(samples, reference=ref_index if comparison == COMPARE_REFERENCE else None)
        pairwise["algorithm_a"] = [algorithms[i] for i in pairwise["group_a"]]
        pairwise["algorithm_b"] = [algorithms[i] for i in pairwise["group_b"]]
        table.pairwise = pairwise

        for _, pair in pairwise.iterrows():
            a, b = int(pair["group_a"]), int(pair["group_b"])
            if ref_index not in (a, b):
                continue
            other = b if a == ref_index else a
            rows.loc[other, "p_raw"] = pair["p_raw"]
            rows.loc[other, "p_adjusted"] = pair["p_adjusted"]
            rows.loc[other, "stars"] = significance_stars(pair["p_adjusted"])
        return table
