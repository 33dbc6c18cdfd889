"""Clocked adversarial simulation: scenarios, schedulers, the real and
ideal world drivers, outcome comparison, and the CLI."""

from .compare import ComparisonReport, compare
from .outcome import RunOutcome
from .randomized import random_scenario
from .run import run_ideal, run_real
from .scenario import Scenario, ScenarioError, SchedulerSpec, WorkerSpec, load_scenario, save_scenario
from .scheduling import make_scheduler

__all__ = [
    "ComparisonReport",
    "RunOutcome",
    "Scenario",
    "ScenarioError",
    "SchedulerSpec",
    "WorkerSpec",
    "compare",
    "load_scenario",
    "make_scheduler",
    "random_scenario",
    "run_ideal",
    "run_real",
    "save_scenario",
]
