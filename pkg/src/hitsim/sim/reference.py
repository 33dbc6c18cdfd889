"""Reference task: a typical image-labeling batch of 106 binary
questions with 6 hidden golden standards, 4 worker slots, and a
pass threshold of 4 correct goldens.

Three variants cover the interesting verdict shapes:

* all_qualified    -- every worker clears the threshold, nobody rejected
* one_unqualified  -- one worker fails 3 of 6 goldens and is rejected
* golden_withheld  -- the requester never opens the goldens, so the
                      contract's default branch pays everyone
"""

import random

from .scenario import Scenario, SchedulerSpec, WorkerSpec

QUESTIONS = 106
GOLDEN_COUNT = 6
QUOTA = 4
THRESHOLD = 4
BUDGET = 400

VARIANTS = ("all_qualified", "one_unqualified", "golden_withheld")


def reference_scenario(variant: str = "all_qualified", seed: int = 2024) -> Scenario:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant: {variant}")
    rng = random.Random(f"reference-{seed}")
    indices = sorted(rng.sample(range(1, QUESTIONS + 1), GOLDEN_COUNT))
    solutions = [rng.randint(0, 1) for _ in range(GOLDEN_COUNT)]

    workers = []
    for n in range(1, QUOTA + 1):
        answers = [rng.randint(0, 1) for _ in range(QUESTIONS)]
        wrong = 3 if (variant == "one_unqualified" and n == QUOTA) else 1
        for pos, (gi, sol) in enumerate(zip(indices, solutions)):
            answers[gi - 1] = (1 - sol) if pos < wrong else sol
        workers.append(WorkerSpec(f"w{n}", answers, "honest"))

    return Scenario(
        group_name="default",
        questions=QUESTIONS,
        budget=BUDGET,
        quota=QUOTA,
        threshold=THRESHOLD,
        range_low=0,
        range_high=1,
        golden_indices=indices,
        golden_solutions=solutions,
        requester_balance=BUDGET + 100,
        requester_strategy="withhold_golden" if variant == "golden_withheld" else "honest",
        workers=workers,
        scheduler=SchedulerSpec("fifo", 0),
        seed=seed,
    )
