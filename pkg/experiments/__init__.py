# Experiments package initialization
from experiments.settings import Settings
from experiments.experiment_spec import ExperimentSpec, SpecError, load_spec, parse_spec
from experiments.experiment_runner import ExperimentRunner, derive_seed, run_experiment
