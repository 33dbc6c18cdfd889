"""Honest requester and worker protocol logic.

The requester commits to their golden set at publish time, opens it
once answers are revealed, and sends a rejection message only for
workers that deserve one: an out-of-range disclosure for vectors with
an out-of-range entry (lowest such index, for reproducible logs), or a
quality claim with proof for vectors below the threshold.  Everyone
else is paid by the contract's default branch.

A worker encrypts one answer per question under the requester's key,
commits to the ciphertext vector behind a fresh blinding key, and
reveals only if their commitment made it into the accepted set --
revealing nothing is the defense against being squeezed out by message
reordering.
"""

import random
from typing import Optional

from .commitments import commit, new_commit_key
from .contract import (
    Commit,
    Committed,
    GoldenOpen,
    Message,
    OutRangeClaim,
    Publish,
    Published,
    QualityClaim,
    Reveal,
    Revealed,
    TaskParams,
    ciphertexts_to_bytes,
)
from .groups import Group
from .quality import GoldenSet, prove_quality, quality
from .vpke import (
    AnswerRange,
    Ciphertext,
    DecryptTable,
    InRange,
    KeyPair,
    dec,
    enc,
    keygen,
    prove_pke,
)


def requester_keygen(group: Group, rng: random.Random) -> KeyPair:
    """One key pair serves arbitrarily many tasks."""
    return keygen(group, rng)


class RequesterClient:
    """Honest requester for a single task."""

    def __init__(
        self,
        group: Group,
        keys: KeyPair,
        goldens: GoldenSet,
        questions: int,
        budget: int,
        quota: int,
        answer_range: AnswerRange,
        threshold: int,
        rng: random.Random,
    ):
        if goldens.indices and goldens.indices[-1] > questions:
            raise ValueError("golden index beyond the question count")
        if any(s not in answer_range for s in goldens.solutions):
            raise ValueError("golden solution outside the answer range")
        self.group = group
        self.keys = keys
        self.goldens = goldens
        self.questions = questions
        self.budget = budget
        self.quota = quota
        self.answer_range = answer_range
        self.threshold = threshold
        self.rng = rng
        self.golden_key: Optional[bytes] = None
        self.params: Optional[TaskParams] = None
        self._table = DecryptTable(group, answer_range)
        self._evaluated = False

    def publish_message(self) -> Publish:
        self.golden_key = new_commit_key(self.rng)
        comm_gs = commit(self.goldens.to_bytes(), self.golden_key)
        self.params = TaskParams(
            questions=self.questions,
            budget=self.budget,
            quota=self.quota,
            answer_range=self.answer_range,
            threshold=self.threshold,
            public_key=self.keys.public,
            golden_commitment=comm_gs,
        )
        self.params.validate(self.group)
        return Publish(self.params)

    def handle_event(self, event) -> list[Message]:
        if isinstance(event, Revealed) and not self._evaluated:
            self._evaluated = True
            return self.evaluate(event)
        return []

    def evaluate(self, event: Revealed) -> list[Message]:
        messages: list[Message] = [
            GoldenOpen(self.goldens.indices, self.goldens.solutions, self.golden_key)
        ]
        for worker, cts in event.answers:
            if cts is None:
                continue
            messages += self._judge(worker, cts)
        return messages

    def _judge(self, worker: str, cts: tuple[Ciphertext, ...]) -> list[Message]:
        results = [dec(self.group, self.keys.secret, ct, self.answer_range, self._table)
                   for ct in cts]
        for index, result in enumerate(results, start=1):
            if not isinstance(result, InRange):
                disclosed, proof = prove_pke(
                    self.group, self.keys, cts[index - 1], self.answer_range,
                    self.rng, self._table,
                )
                return [OutRangeClaim(worker, index, disclosed, proof)]
        answers = [r.value for r in results]
        score = quality(answers, self.goldens)
        if score < self.threshold:
            claim, proof = prove_quality(
                self.group, self.keys, cts, self.goldens, self.answer_range,
                self.rng, self._table,
            )
            return [QualityClaim(worker, claim, proof)]
        return []


class WorkerClient:
    """Honest worker: commit, then reveal only if accepted."""

    def __init__(self, group: Group, worker_id: str, answers: list[int], rng: random.Random):
        self.group = group
        self.worker_id = worker_id
        self.answers = list(answers)
        self.rng = rng
        self.blind_key: Optional[bytes] = None
        self.ciphertexts: Optional[tuple[Ciphertext, ...]] = None
        self._committed = False
        self._revealed = False

    def handle_event(self, event) -> list[Message]:
        if isinstance(event, Published) and not self._committed:
            return [self.commit_message(event.params)]
        if isinstance(event, Committed) and not self._revealed:
            if self.worker_id in event.workers() and self.ciphertexts is not None:
                self._revealed = True
                return [Reveal(self.ciphertexts, self.blind_key)]
        return []

    def commit_message(self, params: TaskParams) -> Commit:
        if len(self.answers) != params.questions:
            raise ValueError("answer vector length differs from the question count")
        for a in self.answers:
            if a not in params.answer_range:
                raise ValueError(f"answer {a} outside the task range")
        return self._commit_unchecked(params)

    def _commit_unchecked(self, params: TaskParams) -> Commit:
        self._committed = True
        self.ciphertexts = tuple(
            enc(self.group, a, params.public_key, self.rng) for a in self.answers
        )
        self.blind_key = new_commit_key(self.rng)
        blob = ciphertexts_to_bytes(self.ciphertexts, self.group)
        return Commit(commit(blob, self.blind_key))
