"""Full-size comparison of the memetic optimizer against multi-start local search."""
import os

import pytest

from experiments.experiment_runner import ExperimentRunner
from experiments.experiment_spec import load_spec
from experiments.settings import Settings

SPECS_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "specs")

pytestmark = [
    pytest.mark.acceptance,
    pytest.mark.skipif(os.getenv("NKVAE_ACCEPTANCE") != "1", reason="set NKVAE_ACCEPTANCE=1 to run"),
]


def test_memetic_mean_at_least_msls_on_most_instances(tmp_path) -> None:
    wins = 0
    for name in ("n60_k2", "n60_k4", "n60_k6"):
        spec = load_spec(os.path.join(SPECS_DIR, f"{name}.json"))
        spec.output_dir = str(tmp_path / name)
        settings = Settings(output_dir=spec.output_dir, workers=os.cpu_count() or 1, reproducible=False, verbose=False)
        table = ExperimentRunner(spec, settings).run_experiment()
        means = dict(zip(table.rows["algorithm"], table.rows["mean"]))
        wins += means["memetic"] >= means["msls"]
    assert wins >= 2
