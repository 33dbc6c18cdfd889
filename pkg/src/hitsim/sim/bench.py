"""Desk-scale timing of the proof operations on the reference task
shape (106 binary questions, 6 golden standards, worst case: every
golden answered wrongly, so proving and verifying touch all six).

Thresholds are order-of-magnitude bounds for a commodity desktop.
"""

import random
import time

from ..groups import DEFAULT_GROUP, Group
from ..quality import GoldenSet, prove_quality, verify_quality
from ..vpke import AnswerRange, DecryptTable, enc, keygen, prove_pke, verify_pke

THRESHOLDS = {
    "prove_pke": 0.030,
    "prove_quality": 0.100,
    "verify_quality": 0.050,
}

REFERENCE_SHAPE = {"questions": 106, "goldens": 6, "quota": 4, "threshold": 4}


def _median(samples: list[float]) -> float:
    ordered = sorted(samples)
    return ordered[len(ordered) // 2]


def _time(fn, reps: int) -> float:
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return _median(samples)


def run_benchmarks(group: Group = DEFAULT_GROUP, reps: int = 11) -> dict[str, float]:
    rng = random.Random("hitsim-bench")
    answer_range = AnswerRange(0, 1)
    table = DecryptTable(group, answer_range)
    keys = keygen(group, rng)
    questions = REFERENCE_SHAPE["questions"]
    golden_count = REFERENCE_SHAPE["goldens"]
    indices = tuple(range(1, golden_count + 1))
    solutions = tuple(1 for _ in indices)
    goldens = GoldenSet(indices, solutions)

    # all goldens wrong: worst-case disclosure count
    answers = [0] * golden_count + [rng.randint(0, 1) for _ in range(questions - golden_count)]
    cts = [enc(group, a, keys.public, rng) for a in answers]

    times: dict[str, float] = {}
    times["prove_pke"] = _time(
        lambda: prove_pke(group, keys, cts[0], answer_range, rng, table), reps
    )
    times["prove_quality"] = _time(
        lambda: prove_quality(group, keys, cts, goldens, answer_range, rng, table), reps
    )
    claim, proof = prove_quality(group, keys, cts, goldens, answer_range, rng, table)
    times["verify_quality"] = _time(
        lambda: verify_quality(
            group, keys.public, cts, claim, proof, goldens, answer_range, table
        ),
        reps,
    )
    disclosed, pke_proof = prove_pke(group, keys, cts[0], answer_range, rng, table)
    times["verify_pke"] = _time(
        lambda: verify_pke(group, keys.public, disclosed, cts[0], pke_proof, answer_range, table),
        reps,
    )
    return times


def format_report(times: dict[str, float]) -> str:
    lines = [
        "operation        median      bound       status",
        "-" * 48,
    ]
    for op, t in times.items():
        bound = THRESHOLDS.get(op)
        if bound is None:
            lines.append(f"{op:<16} {t*1000:8.2f} ms          -       -")
            continue
        status = "ok" if t <= bound else "OVER"
        lines.append(f"{op:<16} {t*1000:8.2f} ms {bound*1000:8.0f} ms    {status}")
    return "\n".join(lines)


def within_bounds(times: dict[str, float]) -> bool:
    return all(times[op] <= bound for op, bound in THRESHOLDS.items() if op in times)
