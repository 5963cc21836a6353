# Main package initialization
from landscape import nk_instance, evaluation_budget, instance_store
from search import hill_climber, memetic_optimizer, baselines
from neural import vae_model, nadam, trainer
from analysis import posthoc_tests, result_analyzer, table_writer
from experiments import experiment_spec, experiment_runner

__version__ = '1.0.0'
