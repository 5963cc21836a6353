# Landscape package initialization
from landscape.evaluation_budget import BudgetExhausted, EvaluationBudget
from landscape.nk_instance import NkInstance, as_genome, generate_instance
from landscape.instance_store import InstanceFormatError, load_instance, save_instance
