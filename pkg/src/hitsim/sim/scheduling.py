"""Adversarial message scheduling.

At every clock boundary the driver hands the scheduler the batch of
pending messages; the scheduler returns a delivery order plus a subset
to defer to the next boundary.  Deferral is allowed only for messages
the driver marked deferrable (messages whose target phase spans clock
periods), and a message can be deferred at most once, so everything a
party sends is delivered within the protocol's synchrony bound.

Built-in behaviors: fifo, reverse, random (seeded shuffle plus random
deferral), target_exclude (a named party's messages are deferred when
possible and delivered last otherwise), defer_max (defer everything
deferrable), priority (explicit sender order, for exhaustive tests).
"""

import random
from dataclasses import dataclass
from typing import Optional, Sequence


@dataclass(frozen=True)
class BatchItem:
    """What the adversary sees about one pending message."""

    sender: str
    kind: str
    deferrable: bool


Arrangement = tuple[list[int], list[int]]  # (delivery order, deferred)


class Scheduler:
    name = "base"

    def arrange(self, items: Sequence[BatchItem], clock: int) -> Arrangement:
        raise NotImplementedError


class FifoScheduler(Scheduler):
    name = "fifo"

    def arrange(self, items, clock):
        return list(range(len(items))), []


class ReverseScheduler(Scheduler):
    name = "reverse"

    def arrange(self, items, clock):
        return list(reversed(range(len(items)))), []


class RandomScheduler(Scheduler):
    """Seeded shuffle; each deferrable message is deferred with p=1/4."""

    name = "random"

    def __init__(self, seed: int):
        self.rng = random.Random(f"scheduler-{seed}")

    def arrange(self, items, clock):
        deferred = [i for i, it in enumerate(items) if it.deferrable and self.rng.random() < 0.25]
        rest = [i for i in range(len(items)) if i not in deferred]
        self.rng.shuffle(rest)
        return rest, deferred


class TargetExcludeScheduler(Scheduler):
    """Push one party's messages as late as the rules allow."""

    name = "target_exclude"

    def __init__(self, target: str):
        self.target = target

    def arrange(self, items, clock):
        deferred = [i for i, it in enumerate(items) if it.sender == self.target and it.deferrable]
        others = [i for i, it in enumerate(items) if i not in deferred and it.sender != self.target]
        stragglers = [
            i for i, it in enumerate(items) if i not in deferred and it.sender == self.target
        ]
        return others + stragglers, deferred


class DeferMaxScheduler(Scheduler):
    name = "defer_max"

    def arrange(self, items, clock):
        deferred = [i for i, it in enumerate(items) if it.deferrable]
        rest = [i for i in range(len(items)) if i not in deferred]
        return rest, deferred


class PriorityScheduler(Scheduler):
    """Deliver in an explicit sender order (stable within a sender)."""

    name = "priority"

    def __init__(self, order: Sequence[str]):
        self.rank = {sender: i for i, sender in enumerate(order)}

    def arrange(self, items, clock):
        idx = list(range(len(items)))
        idx.sort(key=lambda i: (self.rank.get(items[i].sender, len(self.rank)), i))
        return idx, []


SCHEDULER_NAMES = ("fifo", "reverse", "random", "target_exclude", "defer_max", "priority")


def make_scheduler(
    strategy: str,
    seed: int = 0,
    target: Optional[str] = None,
    order: Optional[Sequence[str]] = None,
) -> Scheduler:
    if strategy == "fifo":
        return FifoScheduler()
    if strategy == "reverse":
        return ReverseScheduler()
    if strategy == "random":
        return RandomScheduler(seed)
    if strategy == "target_exclude":
        if not target:
            raise ValueError("target_exclude needs a target")
        return TargetExcludeScheduler(target)
    if strategy == "defer_max":
        return DeferMaxScheduler()
    if strategy == "priority":
        return PriorityScheduler(order or [])
    raise ValueError(f"unknown scheduler strategy: {strategy}")


def validate_arrangement(
    items: Sequence[BatchItem], order: Sequence[int], deferred: Sequence[int]
) -> None:
    """The adversary may reorder and defer, never invent, drop, or
    duplicate; deferral only where allowed."""
    seen = sorted(list(order) + list(deferred))
    if seen != list(range(len(items))):
        raise ValueError("scheduler must emit a permutation of the batch")
    for i in deferred:
        if not items[i].deferrable:
            raise ValueError("scheduler deferred a non-deferrable message")
