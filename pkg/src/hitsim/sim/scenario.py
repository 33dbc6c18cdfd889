"""Scenario files: a declarative description of one task run.

Scenarios are JSON (human-editable key/value plus lists) with a
`version` field.  Schema, all fields required unless noted:

    {
      "version": 1,
      "group": "default" | "tiny",
      "task": {
        "questions": 106,
        "budget": 400,
        "quota": 4,
        "threshold": 4,
        "range": {"low": 0, "high": 1},
        "goldens": {"indices": [2, 19, ...], "solutions": [1, 0, ...]}
      },
      "requester": {"balance": 1000, "strategy": "honest"},
      "workers": [
        {"id": "w1", "answers": [0, 1, ...], "strategy": "honest"},
        ...
      ],
      "scheduler": {"strategy": "fifo", "seed": 0,
                    "target": "w1"?, "order": ["w2","w1"]?},
      "seed": 42,
      "max_clock": 64            (optional, default 64)
    }

Worker strategies may carry a target after a colon, e.g.
"copy_commit:w1".  Validation happens before any run.
"""

import json
import random
from dataclasses import dataclass, field
from typing import Optional

from ..groups import GROUPS, Group
from ..quality import GoldenSet
from ..vpke import AnswerRange

SCENARIO_VERSION = 1
DEFAULT_MAX_CLOCK = 64

REQUESTER_ID = "requester"


class ScenarioError(ValueError):
    pass


@dataclass
class WorkerSpec:
    worker_id: str
    answers: list[int]
    strategy: str = "honest"

    @property
    def strategy_name(self) -> str:
        return self.strategy.split(":", 1)[0]

    @property
    def strategy_target(self) -> Optional[str]:
        parts = self.strategy.split(":", 1)
        return parts[1] if len(parts) == 2 else None


@dataclass
class SchedulerSpec:
    strategy: str = "fifo"
    seed: int = 0
    target: Optional[str] = None
    order: Optional[list[str]] = None


@dataclass
class Scenario:
    group_name: str
    questions: int
    budget: int
    quota: int
    threshold: int
    range_low: int
    range_high: int
    golden_indices: list[int]
    golden_solutions: list[int]
    requester_balance: int
    requester_strategy: str
    workers: list[WorkerSpec]
    scheduler: SchedulerSpec = field(default_factory=SchedulerSpec)
    seed: int = 0
    max_clock: int = DEFAULT_MAX_CLOCK

    # -- derived views -------------------------------------------------------

    @property
    def group(self) -> Group:
        return GROUPS[self.group_name]

    @property
    def answer_range(self) -> AnswerRange:
        return AnswerRange(self.range_low, self.range_high)

    @property
    def goldens(self) -> GoldenSet:
        return GoldenSet(tuple(self.golden_indices), tuple(self.golden_solutions))

    @property
    def payout(self) -> int:
        return self.budget // self.quota

    def honest_parties(self) -> list[str]:
        parties = []
        if self.requester_strategy == "honest":
            parties.append(REQUESTER_ID)
        parties += [w.worker_id for w in self.workers if w.strategy == "honest"]
        return parties

    def worker_ids(self) -> list[str]:
        return [w.worker_id for w in self.workers]

    def rng_for(self, role: str) -> random.Random:
        """Per-role deterministic RNG derived from the scenario seed."""
        return random.Random(f"hitsim/{self.seed}/{role}")

    # -- validation ----------------------------------------------------------

    def validate(self) -> None:
        from .strategies import REQUESTER_STRATEGIES, WORKER_STRATEGIES

        if self.group_name not in GROUPS:
            raise ScenarioError(f"unknown group: {self.group_name}")
        if self.questions < 1:
            raise ScenarioError("need at least one question")
        if self.quota < 1:
            raise ScenarioError("need at least one worker slot")
        if not 0 <= self.threshold <= self.questions:
            raise ScenarioError("threshold outside [0, questions]")
        if self.budget < 0 or self.budget % self.quota:
            raise ScenarioError("budget must be divisible by the quota")
        if self.requester_balance < 0:
            raise ScenarioError("negative requester balance")
        if self.max_clock < 1:
            raise ScenarioError("max_clock must be positive")
        try:
            answer_range = self.answer_range
            goldens = self.goldens
        except ValueError as exc:
            raise ScenarioError(str(exc)) from exc
        if answer_range.high >= self.group.order:
            raise ScenarioError("answer range does not fit below the group order")
        if goldens.indices and goldens.indices[-1] > self.questions:
            raise ScenarioError("golden index beyond the question count")
        if any(s not in answer_range for s in goldens.solutions):
            raise ScenarioError("golden solution outside the range")

        if self.requester_strategy not in REQUESTER_STRATEGIES:
            raise ScenarioError(f"unknown requester strategy: {self.requester_strategy}")

        ids = set()
        for spec in self.workers:
            if spec.worker_id in ids or spec.worker_id == REQUESTER_ID:
                raise ScenarioError(f"duplicate party id: {spec.worker_id}")
            ids.add(spec.worker_id)
            if spec.strategy_name not in WORKER_STRATEGIES:
                raise ScenarioError(f"unknown worker strategy: {spec.strategy}")
            if len(spec.answers) != self.questions:
                raise ScenarioError(f"{spec.worker_id}: wrong answer vector length")
            if any(not isinstance(a, int) or a < 0 or a >= 1 << 63 for a in spec.answers):
                raise ScenarioError(f"{spec.worker_id}: answers must be ints in [0, 2^63)")
            if spec.strategy == "honest" and any(a not in answer_range for a in spec.answers):
                raise ScenarioError(
                    f"{spec.worker_id}: honest worker holds an out-of-range answer"
                )
            target = spec.strategy_target
            if target is not None and target not in {w.worker_id for w in self.workers}:
                raise ScenarioError(f"{spec.worker_id}: unknown strategy target {target}")

    # -- (de)serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "version": SCENARIO_VERSION,
            "group": self.group_name,
            "task": {
                "questions": self.questions,
                "budget": self.budget,
                "quota": self.quota,
                "threshold": self.threshold,
                "range": {"low": self.range_low, "high": self.range_high},
                "goldens": {
                    "indices": list(self.golden_indices),
                    "solutions": list(self.golden_solutions),
                },
            },
            "requester": {
                "balance": self.requester_balance,
                "strategy": self.requester_strategy,
            },
            "workers": [
                {"id": w.worker_id, "answers": list(w.answers), "strategy": w.strategy}
                for w in self.workers
            ],
            "scheduler": {
                "strategy": self.scheduler.strategy,
                "seed": self.scheduler.seed,
                **({"target": self.scheduler.target} if self.scheduler.target else {}),
                **({"order": self.scheduler.order} if self.scheduler.order else {}),
            },
            "seed": self.seed,
            "max_clock": self.max_clock,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        try:
            if data.get("version") != SCENARIO_VERSION:
                raise ScenarioError(f"unsupported scenario version: {data.get('version')}")
            task = data["task"]
            sched = data.get("scheduler", {})
            scenario = cls(
                group_name=data.get("group", "default"),
                questions=task["questions"],
                budget=task["budget"],
                quota=task["quota"],
                threshold=task["threshold"],
                range_low=task["range"]["low"],
                range_high=task["range"]["high"],
                golden_indices=list(task["goldens"]["indices"]),
                golden_solutions=list(task["goldens"]["solutions"]),
                requester_balance=data["requester"]["balance"],
                requester_strategy=data["requester"].get("strategy", "honest"),
                workers=[
                    WorkerSpec(w["id"], list(w["answers"]), w.get("strategy", "honest"))
                    for w in data["workers"]
                ],
                scheduler=SchedulerSpec(
                    strategy=sched.get("strategy", "fifo"),
                    seed=sched.get("seed", 0),
                    target=sched.get("target"),
                    order=sched.get("order"),
                ),
                seed=data.get("seed", 0),
                max_clock=data.get("max_clock", DEFAULT_MAX_CLOCK),
            )
        except (KeyError, TypeError) as exc:
            raise ScenarioError(f"malformed scenario: {exc}") from exc
        scenario.validate()
        return scenario


def load_scenario(path: str) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        return Scenario.from_dict(json.load(fh))


def save_scenario(scenario: Scenario, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario.to_dict(), fh, indent=2)
        fh.write("\n")
