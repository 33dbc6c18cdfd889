"""Party behaviors, honest and corrupt, with their ideal-world twins.

Every strategy exists in two forms that the harness keeps paired:

* the real behavior -- what messages the party sends to the contract,
  including rushing behaviors that peek at messages other parties sent
  in the same clock period;
* the ideal twin -- what the simulator makes the corresponding ideal
  party send to the ideal functionality.

Worker twins are expressed as submission intents tagged with a
provenance token: an intent that reuses another worker's token is the
mirror of a copied commitment and gets suppressed by the ideal driver
exactly when the contract's duplicate-value rule would drop the copy.
Requester twins send the same family of rejection messages; because the
ideal functionality re-checks them against ground truth, real and ideal
verdicts agree precisely when the proof layer is sound and complete --
which is the property the comparison harness exists to test.
"""

import random
from typing import Optional

from ..clients import RequesterClient, WorkerClient
from ..commitments import commit, new_commit_key
from ..contract import (
    Commit,
    Committed,
    Envelope,
    GoldenOpen,
    OutRangeClaim,
    Published,
    QualityClaim,
    Reveal,
    Revealed,
    ciphertexts_to_bytes,
)
from ..groups import Group
from ..quality import prove_quality, quality
from ..vpke import OutOfRange, VpkeProof, dec, prove_pke
from .idealworld import IdealEvaluate, IdealOutrange
from .scenario import Scenario, WorkerSpec

# Worker strategies whose real behavior sends a commitment when a task
# is published (everything except staying silent or copying).
_COMMITTING = {"honest", "raw_answers", "withhold_reveal", "double_commit", "reveal_foreign"}

Token = tuple[str, int]
Intent = tuple[Token, Optional[tuple[int, ...]]]


# ---------------------------------------------------------------------------
# workers


class WorkerActor:
    rushing = False

    def __init__(self, group: Group, spec: WorkerSpec, rng: random.Random):
        self.group = group
        self.spec = spec
        self.actor_id = spec.worker_id
        self.rng = rng
        self.client = WorkerClient(group, spec.worker_id, spec.answers, rng)

    def step(self, period: int, events: list, pending: list[Envelope]) -> list:
        raise NotImplementedError


class HonestWorker(WorkerActor):
    def step(self, period, events, pending):
        out = []
        for event in events:
            out += self.client.handle_event(event)
        return out


class RawAnswersWorker(WorkerActor):
    """Encrypts and submits its vector verbatim, skipping the honest
    client's range validation."""

    def step(self, period, events, pending):
        out = []
        for event in events:
            if isinstance(event, Published) and not self.client._committed:
                out.append(self.client._commit_unchecked(event.params))
            elif isinstance(event, Committed) and not self.client._revealed:
                if self.actor_id in event.workers() and self.client.ciphertexts:
                    self.client._revealed = True
                    out.append(Reveal(self.client.ciphertexts, self.client.blind_key))
        return out


class WithholdRevealWorker(WorkerActor):
    """Commits, then abandons the task."""

    def step(self, period, events, pending):
        out = []
        for event in events:
            if isinstance(event, Published) and not self.client._committed:
                out.append(self.client._commit_unchecked(event.params))
        return out


class DoubleCommitWorker(WorkerActor):
    """Sends two distinct commitments over the same ciphertexts; only
    the first one it sent can be opened later."""

    def step(self, period, events, pending):
        out = []
        for event in events:
            if isinstance(event, Published) and not self.client._committed:
                first = self.client._commit_unchecked(event.params)
                blob = ciphertexts_to_bytes(self.client.ciphertexts, self.group)
                second = Commit(commit(blob, new_commit_key(self.rng)))
                out += [first, second]
            elif isinstance(event, Committed) and not self.client._revealed:
                if self.actor_id in event.workers() and self.client.ciphertexts:
                    self.client._revealed = True
                    out.append(Reveal(self.client.ciphertexts, self.client.blind_key))
        return out


class CopyCommitWorker(WorkerActor):
    """Rushing copy-paste: replays the target's commitment bytes from
    the same period's pending traffic.  Having no opening, it can never
    reveal."""

    rushing = True

    def __init__(self, group, spec, rng):
        super().__init__(group, spec, rng)
        self.target = spec.strategy_target
        self._copied = False

    def step(self, period, events, pending):
        if self._copied:
            return []
        for env in pending:
            if env.sender == self.target and isinstance(env.message, Commit):
                self._copied = True
                return [Commit(env.message.commitment)]
        return []


class RevealForeignWorker(WorkerActor):
    """Commits honestly, then tries to reveal the target's ciphertexts
    as its own.  The opening cannot match its commitment."""

    rushing = True

    def __init__(self, group, spec, rng):
        super().__init__(group, spec, rng)
        self.target = spec.strategy_target
        self._in_comms = False

    def step(self, period, events, pending):
        out = []
        for event in events:
            if isinstance(event, Published) and not self.client._committed:
                out.append(self.client._commit_unchecked(event.params))
            elif isinstance(event, Committed):
                self._in_comms = self.actor_id in event.workers()
        if self._in_comms and not self.client._revealed:
            for env in pending:
                if env.sender == self.target and isinstance(env.message, Reveal):
                    self.client._revealed = True
                    out.append(Reveal(env.message.ciphertexts, self.client.blind_key))
        return out


class SilentWorker(WorkerActor):
    def step(self, period, events, pending):
        return []


WORKER_STRATEGIES = {
    "honest": HonestWorker,
    "raw_answers": RawAnswersWorker,
    "withhold_reveal": WithholdRevealWorker,
    "double_commit": DoubleCommitWorker,
    "copy_commit": CopyCommitWorker,
    "reveal_foreign": RevealForeignWorker,
    "silent": SilentWorker,
}


def build_worker_actor(group: Group, spec: WorkerSpec, rng: random.Random) -> WorkerActor:
    cls = WORKER_STRATEGIES[spec.strategy_name]
    return cls(group, spec, rng)


def worker_ideal_intents(spec: WorkerSpec, all_specs: dict[str, WorkerSpec]) -> list[Intent]:
    """The simulator's translation of a worker strategy into ideal
    submissions.  A reused token mirrors a copied commitment; a None
    value mirrors a commitment that is never opened."""
    name = spec.strategy_name
    me = spec.worker_id
    answers = tuple(spec.answers)
    if name in ("honest", "raw_answers"):
        return [((me, 0), answers)]
    if name in ("withhold_reveal", "reveal_foreign"):
        return [((me, 0), None)]
    if name == "double_commit":
        return [((me, 0), answers), ((me, 1), None)]
    if name == "copy_commit":
        target = all_specs.get(spec.strategy_target)
        if target is not None and target.strategy_name in _COMMITTING:
            return [((target.worker_id, 0), None)]
        return []
    if name == "silent":
        return []
    raise ValueError(f"no ideal twin for worker strategy {name}")


# ---------------------------------------------------------------------------
# requesters


class RequesterActor:
    def __init__(self, group: Group, scenario: Scenario, keys, rng: random.Random):
        self.group = group
        self.scenario = scenario
        self.keys = keys
        self.rng = rng
        self.actor_id = "requester"
        self.client = RequesterClient(
            group,
            keys,
            scenario.goldens,
            scenario.questions,
            scenario.budget,
            scenario.quota,
            scenario.answer_range,
            scenario.threshold,
            rng,
        )
        self._published = False

    def step(self, period: int, events: list, pending: list) -> list:
        out = []
        if period == 0 and not self._published:
            self._published = True
            out.append(self.client.publish_message())
        for event in events:
            if isinstance(event, Revealed):
                out += self.phase3_messages(event)
        return out

    def phase3_messages(self, event: Revealed) -> list:
        return self.client.handle_event(event)

    def ideal_messages(self, answers: dict[str, Optional[tuple[int, ...]]]) -> list:
        """Honest twin: evaluate the low-quality vectors, flag the
        out-of-range ones, stay quiet about the rest."""
        goldens = self.scenario.goldens
        answer_range = self.scenario.answer_range
        out = []
        for worker, values in answers.items():
            if values is None:
                continue
            oor = [i for i, v in enumerate(values, start=1) if v not in answer_range]
            if oor:
                out.append(IdealOutrange(worker, min(oor)))
            elif quality(values, goldens) < self.scenario.threshold:
                out.append(IdealEvaluate(worker))
        return out


class WithholdGoldenRequester(RequesterActor):
    """Publishes, collects the answers, then defaults on evaluation."""

    def phase3_messages(self, event):
        return []

    def ideal_messages(self, answers):
        return []


class BadGoldenKeyRequester(RequesterActor):
    """Opens the golden commitment with a corrupted key, which the
    contract treats the same as not opening it at all."""

    def phase3_messages(self, event):
        msgs = self.client.handle_event(event)
        out = []
        for msg in msgs:
            if isinstance(msg, GoldenOpen):
                bad = bytes(b ^ 0xFF for b in msg.key)
                out.append(GoldenOpen(msg.indices, msg.solutions, bad))
            else:
                out.append(msg)
        return out

    def ideal_messages(self, answers):
        return []


class RejectAllRequester(RequesterActor):
    """Sends an honest quality claim for every revealed worker instead
    of only the failing ones."""

    def phase3_messages(self, event):
        out = [GoldenOpen(self.client.goldens.indices, self.client.goldens.solutions,
                          self.client.golden_key)]
        for worker, cts in event.answers:
            if cts is None:
                continue
            claim, proof = prove_quality(
                self.group, self.keys, cts, self.client.goldens,
                self.scenario.answer_range, self.rng, self.client._table,
            )
            out.append(QualityClaim(worker, claim, proof))
        return out

    def ideal_messages(self, answers):
        return [IdealEvaluate(w) for w, values in answers.items() if values is not None]


class FalseLowQualityRequester(RequesterActor):
    """Understates every quality claim to one below the threshold.
    Upper-bound soundness makes the understated claims unverifiable for
    qualified workers, so the contract pays them anyway."""

    def phase3_messages(self, event):
        out = [GoldenOpen(self.client.goldens.indices, self.client.goldens.solutions,
                          self.client.golden_key)]
        for worker, cts in event.answers:
            if cts is None:
                continue
            claim, proof = prove_quality(
                self.group, self.keys, cts, self.client.goldens,
                self.scenario.answer_range, self.rng, self.client._table,
            )
            out.append(QualityClaim(worker, min(claim, self.scenario.threshold - 1), proof))
        return out

    def ideal_messages(self, answers):
        return [IdealEvaluate(w) for w, values in answers.items() if values is not None]


class FakeOutrangeRequester(RequesterActor):
    """Files an out-of-range claim against every revealed worker,
    fabricating the disclosure when the answers are actually in range."""

    def phase3_messages(self, event):
        group = self.group
        answer_range = self.scenario.answer_range
        out = [GoldenOpen(self.client.goldens.indices, self.client.goldens.solutions,
                          self.client.golden_key)]
        for worker, cts in event.answers:
            if cts is None:
                continue
            results = [dec(group, self.keys.secret, ct, answer_range, self.client._table)
                       for ct in cts]
            oor = [i for i, r in enumerate(results, start=1) if isinstance(r, OutOfRange)]
            if oor:
                index = min(oor)
                disclosed, proof = prove_pke(
                    group, self.keys, cts[index - 1], answer_range, self.rng,
                    self.client._table,
                )
                out.append(OutRangeClaim(worker, index, disclosed, proof))
            else:
                fake = OutOfRange(group.exp(group.generator, answer_range.high + 1))
                proof = VpkeProof(group.identity, group.identity, 0)
                out.append(OutRangeClaim(worker, 1, fake, proof))
        return out

    def ideal_messages(self, answers):
        answer_range = self.scenario.answer_range
        out = []
        for worker, values in answers.items():
            if values is None:
                continue
            oor = [i for i, v in enumerate(values, start=1) if v not in answer_range]
            out.append(IdealOutrange(worker, min(oor) if oor else 1))
        return out


REQUESTER_STRATEGIES = {
    "honest": RequesterActor,
    "withhold_golden": WithholdGoldenRequester,
    "bad_golden_key": BadGoldenKeyRequester,
    "reject_all": RejectAllRequester,
    "false_low_quality": FalseLowQualityRequester,
    "fake_outrange": FakeOutrangeRequester,
}


def build_requester_actor(
    group: Group, scenario: Scenario, keys, rng: random.Random
) -> RequesterActor:
    cls = REQUESTER_STRATEGIES[scenario.requester_strategy]
    return cls(group, scenario, keys, rng)
