"""
Run record module - the per-trial result written by every search algorithm.

One RunRecord serializes to one JSON document with these keys (stable order):

    algorithm, trial, seed, instance {n, k, seed}, max_evaluations, evaluations_used,
    final_best_fitness, best_genome (bit string), generations, termination,
    trace [[evaluations, best fitness], ...], population {size, best, mean, min, unique},
    history_size, seeds {name: value}
"""
import json
from dataclasses import asdict, dataclass, field

TERMINATION_BUDGET = "budget"
TERMINATION_INIT = "init"
TERMINATION_STALLED = "stalled"
TERMINATION_GENERATIONS = "generations"


@dataclass
class RunRecord:
    algorithm: str
    trial: int
    seed: int
    instance: dict
    max_evaluations: int
    evaluations_used: int
    final_best_fitness: float | None
    best_genome: str | None
    generations: int = 0
    termination: str = TERMINATION_BUDGET
    trace: list = field(default_factory=list)
    population: dict = field(default_factory=dict)
    history_size: int = 0
    seeds: dict = field(default_factory=dict)

    def to_dict(self):
        record = asdict(self)
        record["trace"] = [[int(e), float(f)] for e, f in self.trace]
        return record

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data["trace"] = [(int(e), float(f)) for e, f in data.get("trace", [])]
        return cls(**data)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def save(self, path):
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json())

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as f:
            return cls.from_json(f.read())


def instance_summary(instance):
    return {"n": instance.n, "k": instance.k, "seed": instance.seed}
