"""The ideal task functionality: the trusted-party version of the
protocol, used as the fairness oracle the real execution is compared
against.

It sees plaintext answers and the golden set directly, so its verdicts
are ground truth: a worker is paid iff (no rejection message arrived)
the answer exists, or (an evaluate message arrived) the true quality
meets the threshold, or (an outrange message arrived) the referenced
answer is actually in range.  No cryptography is involved anywhere in
this module -- that independence is the point.
"""

import enum
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from ..encoding import encode_parts, encode_text, i64, u32, u64
from ..ledger import Ledger
from ..quality import GoldenSet, quality
from ..vpke import AnswerRange


@dataclass(frozen=True)
class IdealPublish:
    kind = "publish"
    questions: int
    budget: int
    quota: int
    answer_range: AnswerRange
    threshold: int
    goldens: GoldenSet

    def to_bytes(self, group=None) -> bytes:
        return encode_parts(
            u32(self.questions),
            u64(self.budget),
            u32(self.quota),
            u64(self.answer_range.low),
            u64(self.answer_range.high),
            u32(self.threshold),
            self.goldens.to_bytes(),
        )


@dataclass(frozen=True)
class IdealAnswer:
    kind = "answer"
    values: Optional[tuple[int, ...]]  # None models an empty submission
    token: tuple[str, int]  # provenance marker for the mirror of commit dedup

    def to_bytes(self, group=None) -> bytes:
        if self.values is None:
            return encode_parts(b"\x00")
        return encode_parts(b"\x01", b"".join(i64(v) for v in self.values))


@dataclass(frozen=True)
class IdealEvaluate:
    kind = "evaluate"
    worker: str

    def to_bytes(self, group=None) -> bytes:
        return encode_parts(encode_text(self.worker))


@dataclass(frozen=True)
class IdealOutrange:
    kind = "outrange"
    worker: str
    index: int

    def to_bytes(self, group=None) -> bytes:
        return encode_parts(encode_text(self.worker), u32(self.index))


IdealMessage = Union[IdealPublish, IdealAnswer, IdealEvaluate, IdealOutrange]


@dataclass(frozen=True)
class IdealEnvelope:
    sender: str
    message: IdealMessage
    sent_at: int = 0


@dataclass(frozen=True)
class IdealPublished:
    kind = "published"
    requester: str
    questions: int
    budget: int
    quota: int

    def to_bytes(self, group=None) -> bytes:
        return encode_parts(
            encode_text(self.requester), u32(self.questions), u64(self.budget), u32(self.quota)
        )


@dataclass(frozen=True)
class AnswersCollected:
    kind = "answers_collected"
    workers: tuple[str, ...]

    def to_bytes(self, group=None) -> bytes:
        return encode_parts(*[encode_text(w) for w in self.workers])


@dataclass(frozen=True)
class IdealVerdicts:
    kind = "verdicts"
    paid: tuple[tuple[str, bool], ...]

    def to_bytes(self, group=None) -> bytes:
        rows = [encode_parts(encode_text(w), b"\x01" if ok else b"\x00") for w, ok in self.paid]
        return encode_parts(*rows)


class IdealPhase(enum.Enum):
    IDLE = "idle"
    COLLECT = "collect"
    EVALUATE = "evaluate"
    CLOSED = "closed"


class IdealFunctionality:
    """Trusted third party running the task on plaintext answers."""

    def __init__(self, ledger: Ledger, contract_id: str = "ideal"):
        self.ledger = ledger
        self.contract_id = contract_id
        self.phase = IdealPhase.IDLE
        self.requester: Optional[str] = None
        self.questions = 0
        self.budget = 0
        self.quota = 0
        self.answer_range: Optional[AnswerRange] = None
        self.threshold = 0
        self.goldens: Optional[GoldenSet] = None
        self.answers: dict[str, Optional[tuple[int, ...]]] = {}
        self.verdicts: dict[str, bool] = {}

    def deliver(self, batch: Sequence[IdealEnvelope], clock: int) -> list:
        events = []
        if self.phase == IdealPhase.IDLE:
            events += self._publish_batch(batch, clock)
        elif self.phase == IdealPhase.COLLECT:
            events += self._collect_batch(batch, clock)
        elif self.phase == IdealPhase.EVALUATE:
            events += self._evaluate_deadline(batch, clock)
        return events

    def _publish_batch(self, batch, clock) -> list:
        events = []
        for env in batch:
            msg = env.message
            if self.phase != IdealPhase.IDLE or not isinstance(msg, IdealPublish):
                continue
            if msg.budget < 0 or msg.quota < 1 or msg.budget % msg.quota:
                continue
            if not self.ledger.freeze(env.sender, self.contract_id, msg.budget, clock):
                continue
            self.requester = env.sender
            self.questions = msg.questions
            self.budget = msg.budget
            self.quota = msg.quota
            self.answer_range = msg.answer_range
            self.threshold = msg.threshold
            self.goldens = msg.goldens
            self.phase = IdealPhase.COLLECT
            events.append(IdealPublished(env.sender, msg.questions, msg.budget, msg.quota))
        return events

    def _collect_batch(self, batch, clock) -> list:
        events = []
        for env in batch:
            if self.phase != IdealPhase.COLLECT or not isinstance(env.message, IdealAnswer):
                continue
            if env.sender in self.answers:
                continue
            self.answers[env.sender] = env.message.values
            if len(self.answers) == self.quota:
                self.phase = IdealPhase.EVALUATE
                events.append(AnswersCollected(tuple(self.answers)))
        return events

    def _evaluate_deadline(self, batch, clock) -> list:
        claims: dict[str, IdealMessage] = {}
        for env in batch:
            msg = env.message
            if not isinstance(msg, (IdealEvaluate, IdealOutrange)):
                continue
            if env.sender != self.requester:
                continue
            if self.answers.get(msg.worker) is None:
                continue
            if isinstance(msg, IdealOutrange) and not 1 <= msg.index <= self.questions:
                continue
            if msg.worker in claims:
                continue
            claims[msg.worker] = msg

        payout = self.budget // self.quota
        for worker, values in self.answers.items():
            claim = claims.get(worker)
            if claim is None:
                paid = values is not None
            elif isinstance(claim, IdealEvaluate):
                paid = values is not None and quality(values, self.goldens) >= self.threshold
            else:
                paid = values is not None and values[claim.index - 1] in self.answer_range
            if paid:
                self.ledger.pay(self.contract_id, worker, payout, clock)
            self.verdicts[worker] = paid
        self.phase = IdealPhase.CLOSED
        return [IdealVerdicts(tuple(self.verdicts.items()))]
