"""The on-chain task contract as a deterministic, clock-driven state
machine over the simulated ledger.

Phases move strictly forward: Idle -> CollectCommits -> CollectReveals
-> Evaluate -> Closed.  Each clock boundary delivers one batch of
messages whose order the adversary already fixed; commit collection
persists across boundaries until the worker quota is reached, while the
reveal and evaluate windows each close at the next boundary after they
open.

Payment rules at the evaluate deadline (quota payout = budget/quota):

* a valid golden opening arrived: a worker is paid unless the requester
  delivered a *valid* rejection -- an out-of-range disclosure that
  verifies, or a quality claim below the threshold whose proof
  verifies; workers recorded without a reveal get nothing;
* no valid golden opening: every committed worker is paid, including
  the ones recorded without a reveal (the contract cannot tell an
  absent reveal from a suppressed one once the requester defaults).

Residual escrow is refunded to the requester when the contract closes.
"""

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .commitments import DIGEST_SIZE, hash_bytes, open_commitment
from .encoding import encode_parts, encode_text, i64, u32, u64
from .groups import Group
from .ledger import Ledger
from .quality import GoldenSet, QualityProof, verify_quality
from .vpke import (
    AnswerRange,
    Ciphertext,
    DecResult,
    DecryptTable,
    InRange,
    OutOfRange,
    VpkeProof,
    dec_result_to_bytes,
    verify_pke,
)


class Phase(enum.Enum):
    IDLE = "idle"
    COLLECT_COMMITS = "collect_commits"
    COLLECT_REVEALS = "collect_reveals"
    EVALUATE = "evaluate"
    CLOSED = "closed"


@dataclass(frozen=True)
class TaskParams:
    """Published task parameters; the golden set stays committed."""

    questions: int
    budget: int
    quota: int
    answer_range: AnswerRange
    threshold: int
    public_key: int
    golden_commitment: bytes

    def validate(self, group: Group) -> None:
        if self.questions < 1:
            raise ValueError("need at least one question")
        if self.quota < 1:
            raise ValueError("need at least one worker")
        if not 0 <= self.threshold <= self.questions:
            raise ValueError("threshold outside [0, questions]")
        if self.budget < 0 or self.budget % self.quota != 0:
            raise ValueError("budget must be non-negative and divisible by the quota")
        if not group.is_element(self.public_key):
            raise ValueError("public key is not a group element")
        if len(self.golden_commitment) != DIGEST_SIZE:
            raise ValueError("golden commitment must be a digest")

    def payout(self) -> int:
        return self.budget // self.quota

    def to_bytes(self, group: Group) -> bytes:
        return encode_parts(
            u32(self.questions),
            u64(self.budget),
            u32(self.quota),
            u64(self.answer_range.low),
            u64(self.answer_range.high),
            u32(self.threshold),
            group.element_to_bytes(self.public_key),
            self.golden_commitment,
        )


# ---------------------------------------------------------------------------
# inbound messages (sender identity is attached by the transport, never
# self-claimed)

@dataclass(frozen=True)
class Publish:
    kind = "publish"
    params: TaskParams

    def to_bytes(self, group: Group) -> bytes:
        return self.params.to_bytes(group)


@dataclass(frozen=True)
class Commit:
    kind = "commit"
    commitment: bytes

    def to_bytes(self, group: Group) -> bytes:
        return encode_parts(self.commitment)


@dataclass(frozen=True)
class Reveal:
    kind = "reveal"
    ciphertexts: tuple[Ciphertext, ...]
    key: bytes

    def to_bytes(self, group: Group) -> bytes:
        return encode_parts(ciphertexts_to_bytes(self.ciphertexts, group), self.key)


@dataclass(frozen=True)
class GoldenOpen:
    kind = "golden"
    indices: tuple[int, ...]
    solutions: tuple[int, ...]
    key: bytes

    def to_bytes(self, group: Group) -> bytes:
        idx = b"".join(u32(i) for i in self.indices)
        sol = b"".join(i64(s) for s in self.solutions)
        return encode_parts(idx, sol, self.key)


@dataclass(frozen=True)
class OutRangeClaim:
    kind = "outrange"
    worker: str
    index: int
    disclosed: DecResult
    proof: VpkeProof

    def to_bytes(self, group: Group) -> bytes:
        return encode_parts(
            encode_text(self.worker),
            u32(self.index),
            dec_result_to_bytes(self.disclosed, group),
            self.proof.to_bytes(group),
        )


@dataclass(frozen=True)
class QualityClaim:
    kind = "evaluate"
    worker: str
    claim: int
    proof: QualityProof

    def to_bytes(self, group: Group) -> bytes:
        return encode_parts(encode_text(self.worker), i64(self.claim), self.proof.to_bytes(group))


Message = Union[Publish, Commit, Reveal, GoldenOpen, OutRangeClaim, QualityClaim]


@dataclass(frozen=True)
class Envelope:
    """A message plus the transport-attached sender and send period."""

    sender: str
    message: Message
    sent_at: int = 0


def ciphertexts_to_bytes(cts: Sequence[Ciphertext], group: Group) -> bytes:
    return encode_parts(*[ct.to_bytes(group) for ct in cts])


# ---------------------------------------------------------------------------
# broadcast events

@dataclass(frozen=True)
class Published:
    kind = "published"
    requester: str
    params: TaskParams

    def to_bytes(self, group: Group) -> bytes:
        return encode_parts(encode_text(self.requester), self.params.to_bytes(group))


@dataclass(frozen=True)
class Committed:
    kind = "committed"
    comms: tuple[tuple[str, bytes], ...]

    def workers(self) -> tuple[str, ...]:
        return tuple(w for w, _ in self.comms)

    def to_bytes(self, group: Group) -> bytes:
        return encode_parts(*[encode_parts(encode_text(w), c) for w, c in self.comms])


@dataclass(frozen=True)
class Revealed:
    kind = "revealed"
    answers: tuple[tuple[str, Optional[tuple[Ciphertext, ...]]], ...]

    def to_bytes(self, group: Group) -> bytes:
        rows = []
        for worker, cts in self.answers:
            blob = b"" if cts is None else ciphertexts_to_bytes(cts, group)
            rows.append(encode_parts(encode_text(worker), blob))
        return encode_parts(*rows)


@dataclass(frozen=True)
class Verdicts:
    kind = "verdicts"
    paid: tuple[tuple[str, bool], ...]
    refund: int

    def to_bytes(self, group: Group) -> bytes:
        rows = [encode_parts(encode_text(w), b"\x01" if ok else b"\x00") for w, ok in self.paid]
        return encode_parts(u64(self.refund), *rows)


Event = Union[Published, Committed, Revealed, Verdicts]


@dataclass
class DroppedMessage:
    """Audit record for a message the contract ignored."""

    clock: int
    sender: str
    kind: str
    reason: str


class TaskContract:
    """Single task instance; mutated only via deliver() at boundaries."""

    def __init__(self, group: Group, ledger: Ledger, contract_id: str = "contract"):
        self.group = group
        self.ledger = ledger
        self.contract_id = contract_id
        self.phase = Phase.IDLE
        self.params: Optional[TaskParams] = None
        self.requester: Optional[str] = None
        self.comms: dict[str, bytes] = {}
        self.answers: dict[str, Optional[tuple[Ciphertext, ...]]] = {}
        self.verdicts: dict[str, bool] = {}
        self.golden_opened: Optional[GoldenSet] = None
        self.dropped: list[DroppedMessage] = []
        self._table: Optional[DecryptTable] = None

    # -- delivery ----------------------------------------------------------

    def deliver(self, batch: Sequence[Envelope], clock: int) -> list[Event]:
        """Process one adversary-ordered batch at a clock boundary.

        Commit collection keeps waiting across boundaries; the reveal
        and evaluate phases close at the end of the batch (their
        deadline is the boundary itself).
        """
        events: list[Event] = []
        if self.phase == Phase.IDLE:
            events += self._idle_batch(batch, clock)
        elif self.phase == Phase.COLLECT_COMMITS:
            events += self._commit_batch(batch, clock)
        elif self.phase == Phase.COLLECT_REVEALS:
            events += self._reveal_deadline(batch, clock)
        elif self.phase == Phase.EVALUATE:
            events += self._evaluate_deadline(batch, clock)
        else:
            for env in batch:
                self._drop(env, clock, "contract closed")
        return events

    def _drop(self, env: Envelope, clock: int, reason: str) -> None:
        self.dropped.append(DroppedMessage(clock, env.sender, env.message.kind, reason))

    # -- phase 1: publish ----------------------------------------------------

    def _idle_batch(self, batch, clock) -> list[Event]:
        events = []
        for pos, env in enumerate(batch):
            if self.phase != Phase.IDLE or not isinstance(env.message, Publish):
                self._drop(env, clock, "not accepting publishes")
                continue
            params = env.message.params
            try:
                params.validate(self.group)
            except ValueError as exc:
                self._drop(env, clock, f"invalid params: {exc}")
                continue
            if not self.ledger.freeze(env.sender, self.contract_id, params.budget, clock):
                self._drop(env, clock, "nofund")
                continue
            self.params = params
            self.requester = env.sender
            self._table = DecryptTable(self.group, params.answer_range)
            self.phase = Phase.COLLECT_COMMITS
            events.append(Published(env.sender, params))
        return events

    # -- phase 2-a: collect commitments ---------------------------------------

    def _commit_batch(self, batch, clock) -> list[Event]:
        events = []
        for env in batch:
            if self.phase != Phase.COLLECT_COMMITS:
                self._drop(env, clock, "commit window closed")
                continue
            if not isinstance(env.message, Commit):
                self._drop(env, clock, "wrong phase for message")
                continue
            comm = env.message.commitment
            if env.sender in self.comms:
                self._drop(env, clock, "worker already committed")
                continue
            if comm in self.comms.values():
                self._drop(env, clock, "duplicate commitment value")
                continue
            if len(comm) != DIGEST_SIZE:
                self._drop(env, clock, "malformed commitment")
                continue
            self.comms[env.sender] = comm
            if len(self.comms) == self.params.quota:
                self.phase = Phase.COLLECT_REVEALS
                events.append(Committed(tuple(self.comms.items())))
        return events

    # -- phase 2-b: collect reveals -------------------------------------------

    def _reveal_deadline(self, batch, clock) -> list[Event]:
        opened: dict[str, tuple[Ciphertext, ...]] = {}
        for env in batch:
            msg = env.message
            if not isinstance(msg, Reveal):
                self._drop(env, clock, "wrong phase for message")
                continue
            if env.sender not in self.comms:
                self._drop(env, clock, "reveal from non-committed worker")
                continue
            if env.sender in opened:
                self._drop(env, clock, "worker already revealed")
                continue
            if not self._valid_reveal(env.sender, msg):
                self._drop(env, clock, "reveal does not open the commitment")
                continue
            opened[env.sender] = msg.ciphertexts
        for worker in self.comms:
            self.answers[worker] = opened.get(worker)
        self.phase = Phase.EVALUATE
        return [Revealed(tuple(self.answers.items()))]

    def _valid_reveal(self, worker: str, msg: Reveal) -> bool:
        cts = msg.ciphertexts
        if len(cts) != self.params.questions:
            return False
        for ct in cts:
            if not isinstance(ct, Ciphertext):
                return False
            if not (self.group.is_element(ct.c1) and self.group.is_element(ct.c2)):
                return False
        blob = ciphertexts_to_bytes(cts, self.group)
        return open_commitment(self.comms[worker], blob, msg.key)

    # -- phase 3: evaluate ------------------------------------------------------

    def _evaluate_deadline(self, batch, clock) -> list[Event]:
        goldens = self._find_golden_opening(batch, clock)
        claims = self._collect_claims(batch, clock)
        payout = self.params.payout()

        for worker, answer in self.answers.items():
            if goldens is None:
                paid = True
            elif answer is None:
                paid = False
            else:
                claim = claims.get(worker)
                if claim is None:
                    paid = True
                elif isinstance(claim, OutRangeClaim):
                    paid = self._outrange_pays(claim, answer)
                else:
                    paid = self._quality_claim_pays(claim, answer, goldens)
            if paid:
                self.ledger.pay(self.contract_id, worker, payout, clock)
            self.verdicts[worker] = paid

        refund = self.ledger.escrow_of(self.contract_id)
        if refund:
            self.ledger.refund(self.contract_id, self.requester, refund, clock)
        self.phase = Phase.CLOSED
        return [Verdicts(tuple(self.verdicts.items()), refund)]

    def _find_golden_opening(self, batch, clock) -> Optional[GoldenSet]:
        chosen = None
        for env in batch:
            msg = env.message
            if not isinstance(msg, GoldenOpen):
                continue
            if env.sender != self.requester:
                self._drop(env, clock, "golden opening not from requester")
                continue
            if chosen is not None:
                self._drop(env, clock, "golden already opened")
                continue
            goldens = self._parse_golden(msg)
            if goldens is None:
                self._drop(env, clock, "golden opening invalid")
                continue
            chosen = goldens
        self.golden_opened = chosen
        return chosen

    def _parse_golden(self, msg: GoldenOpen) -> Optional[GoldenSet]:
        try:
            goldens = GoldenSet(tuple(msg.indices), tuple(msg.solutions))
        except (ValueError, TypeError):
            return None
        if not open_commitment(self.params.golden_commitment, goldens.to_bytes(), msg.key):
            return None
        if goldens.indices and goldens.indices[-1] > self.params.questions:
            return None
        if any(s not in self.params.answer_range for s in goldens.solutions):
            return None
        return goldens

    def _collect_claims(self, batch, clock):
        """First valid rejection message per worker wins, in batch order."""
        claims: dict[str, Union[OutRangeClaim, QualityClaim]] = {}
        for env in batch:
            msg = env.message
            if not isinstance(msg, (OutRangeClaim, QualityClaim)):
                if not isinstance(msg, GoldenOpen):
                    self._drop(env, clock, "wrong phase for message")
                continue
            if env.sender != self.requester:
                self._drop(env, clock, "claim not from requester")
                continue
            if self.answers.get(msg.worker) is None:
                self._drop(env, clock, "claim against missing answer")
                continue
            if isinstance(msg, OutRangeClaim) and not 1 <= msg.index <= self.params.questions:
                self._drop(env, clock, "claim index out of bounds")
                continue
            if msg.worker in claims:
                self._drop(env, clock, "worker already claimed")
                continue
            claims[msg.worker] = msg
        return claims

    def _outrange_pays(self, claim: OutRangeClaim, answer) -> bool:
        """Pay unless the disclosed value is genuinely out of range and
        the decryption proof verifies."""
        disclosed = claim.disclosed
        if isinstance(disclosed, InRange) and disclosed.value in self.params.answer_range:
            return True
        if isinstance(disclosed, OutOfRange) and self._table.encodes_in_range(disclosed.element):
            return True
        ok = verify_pke(
            self.group,
            self.params.public_key,
            disclosed,
            answer[claim.index - 1],
            claim.proof,
            self.params.answer_range,
            self._table,
        )
        return not ok

    def _quality_claim_pays(self, claim: QualityClaim, answer, goldens: GoldenSet) -> bool:
        """Pay unless the claim is below threshold and its proof verifies."""
        if not isinstance(claim.claim, int) or claim.claim >= self.params.threshold:
            return True
        ok = verify_quality(
            self.group,
            self.params.public_key,
            answer,
            claim.claim,
            claim.proof,
            goldens,
            self.params.answer_range,
            self._table,
        )
        return not ok
