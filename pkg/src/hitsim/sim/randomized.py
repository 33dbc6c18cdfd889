"""Randomized scenario generation for the fuzz command and the
real-vs-ideal equivalence sweep."""

import random

from .scenario import Scenario, SchedulerSpec, WorkerSpec

_CORRUPT_WORKER = [
    "raw_answers",
    "withhold_reveal",
    "copy_commit",
    "double_commit",
    "reveal_foreign",
    "silent",
]
_CORRUPT_REQUESTER = [
    "withhold_golden",
    "bad_golden_key",
    "reject_all",
    "false_low_quality",
    "fake_outrange",
]
_COMMITTING = {"honest", "raw_answers", "withhold_reveal", "double_commit", "reveal_foreign"}
_REVEALING = {"honest", "raw_answers"}
_SCHEDULERS = ["fifo", "reverse", "random", "target_exclude", "defer_max"]


def random_scenario(seed: int, group_name: str = "default") -> Scenario:
    """A small random task with random corruption and scheduling.

    Deterministic in the seed.  Roughly 5% of scenarios underfund the
    requester (both worlds then stall at publish), and worker counts
    may exceed the quota so scheduling decides who enters.
    """
    rng = random.Random(f"hitsim-fuzz-{seed}")
    questions = rng.randint(3, 10)
    high = rng.randint(1, 3)
    golden_count = rng.randint(1, min(3, questions))
    indices = sorted(rng.sample(range(1, questions + 1), golden_count))
    solutions = [rng.randint(0, high) for _ in indices]
    quota = rng.randint(1, 4)
    threshold = rng.randint(0, min(golden_count + 1, questions))
    budget = quota * rng.randint(1, 5)
    balance = budget + rng.randint(0, 10)
    if rng.random() < 0.05:
        balance = max(0, budget - 1)

    count = quota + rng.randint(0, 2)
    ids = [f"w{i+1}" for i in range(count)]
    strategies = {}
    for wid in ids:
        if rng.random() < 0.6:
            strategies[wid] = "honest"
        else:
            strategies[wid] = rng.choice(_CORRUPT_WORKER)

    # second pass: wire up targets, demoting strategies with no valid prey
    workers = []
    for wid in ids:
        name = strategies[wid]
        if name == "copy_commit":
            prey = [o for o in ids if o != wid and strategies[o] in _COMMITTING]
            name = f"copy_commit:{rng.choice(prey)}" if prey else "silent"
        elif name == "reveal_foreign":
            prey = [o for o in ids if o != wid and strategies[o] in _REVEALING]
            name = f"reveal_foreign:{rng.choice(prey)}" if prey else "withhold_reveal"
        answers = [rng.randint(0, high) for _ in range(questions)]
        if name == "raw_answers" and rng.random() < 0.7:
            answers[rng.randrange(questions)] = high + 1 + rng.randint(0, 5)
        workers.append(WorkerSpec(wid, answers, name))

    requester_strategy = "honest" if rng.random() < 0.5 else rng.choice(_CORRUPT_REQUESTER)
    sched_name = rng.choice(_SCHEDULERS)
    scheduler = SchedulerSpec(
        strategy=sched_name,
        seed=rng.randrange(1 << 30),
        target=rng.choice(ids) if sched_name == "target_exclude" else None,
    )

    scenario = Scenario(
        group_name=group_name,
        questions=questions,
        budget=budget,
        quota=quota,
        threshold=threshold,
        range_low=0,
        range_high=high,
        golden_indices=indices,
        golden_solutions=solutions,
        requester_balance=balance,
        requester_strategy=requester_strategy,
        workers=workers,
        scheduler=scheduler,
        seed=seed,
        max_clock=64,
    )
    scenario.validate()
    return scenario
