"""Clock-driven execution of a scenario in the real and ideal worlds.

Both drivers share the same shape: parties act during a period, their
messages queue up, and at the boundary the adversary's scheduler fixes
the delivery order (and may defer commit-phase messages once) before
the contract or the ideal functionality processes the batch.  All
randomness comes from per-role generators derived from the scenario
seed, so a run's audit log is byte-identical across repetitions.
"""

from dataclasses import dataclass

from ..contract import Envelope, Phase, TaskContract
from ..contract import Commit as CommitMessage
from ..ledger import Ledger
from ..vpke import keygen
from .idealworld import (
    AnswersCollected,
    IdealAnswer,
    IdealEnvelope,
    IdealFunctionality,
    IdealPhase,
    IdealPublish,
    IdealPublished,
)
from .outcome import PublicRecord, RunOutcome, record_line
from .scenario import REQUESTER_ID, Scenario
from .scheduling import BatchItem, make_scheduler, validate_arrangement
from .strategies import (
    WORKER_STRATEGIES,
    build_requester_actor,
    build_worker_actor,
    worker_ideal_intents,
)

CONTRACT_ID = "contract"


@dataclass
class _Pending:
    envelope: object
    deferred_once: bool = False


def _build_scheduler(scenario: Scenario):
    spec = scenario.scheduler
    return make_scheduler(spec.strategy, spec.seed, spec.target, spec.order)


def _arrange(scheduler, pending: list[_Pending], deferrable, clock: int):
    """One boundary's adversary consultation; validated for soundness."""
    items = [
        BatchItem(
            p.envelope.sender,
            p.envelope.message.kind,
            deferrable(p.envelope) and not p.deferred_once,
        )
        for p in pending
    ]
    order, defer = scheduler.arrange(items, clock)
    validate_arrangement(items, order, defer)
    delivered = [pending[i].envelope for i in order]
    carried = [_Pending(pending[i].envelope, True) for i in defer]
    return delivered, carried


def _worker_order(scenario: Scenario, actors: dict):
    """Scenario order, non-rushing before rushing, so the same send
    sequence feeds the scheduler in both worlds."""
    calm = [w.worker_id for w in scenario.workers if not actors[w.worker_id].rushing]
    rushing = [w.worker_id for w in scenario.workers if actors[w.worker_id].rushing]
    return calm + rushing


def run_real(scenario: Scenario) -> RunOutcome:
    """Drive contract, clients, and ledger to Closed or timeout."""
    scenario.validate()
    group = scenario.group
    ledger = Ledger({REQUESTER_ID: scenario.requester_balance})
    contract = TaskContract(group, ledger, CONTRACT_ID)
    scheduler = _build_scheduler(scenario)

    keys = keygen(group, scenario.rng_for("requester-keys"))
    requester = build_requester_actor(group, scenario, keys, scenario.rng_for("requester"))
    workers = {
        w.worker_id: build_worker_actor(group, w, scenario.rng_for(f"worker/{w.worker_id}"))
        for w in scenario.workers
    }
    order = [REQUESTER_ID] + _worker_order(scenario, workers)
    actors = {REQUESTER_ID: requester, **workers}

    def deferrable(env) -> bool:
        return isinstance(env.message, CommitMessage) and contract.phase == Phase.COLLECT_COMMITS

    audit: list[str] = []
    records: list[PublicRecord] = []
    carry: list[_Pending] = []
    events: list = []
    timed_out = True
    termination = scenario.max_clock

    for period in range(scenario.max_clock):
        sends: list[Envelope] = []
        for actor_id in order:
            msgs = actors[actor_id].step(period, events, sends)
            sends += [Envelope(actor_id, m, period) for m in msgs]

        pending = carry + [_Pending(env) for env in sends]
        clock = period + 1
        delivered, carry = _arrange(scheduler, pending, deferrable, clock)

        ledger_mark = len(ledger.events)
        events = contract.deliver(delivered, clock)

        for env in delivered:
            rec = PublicRecord(clock, env.sender, env.message.kind, env.message.to_bytes(group))
            records.append(rec)
            audit.append(record_line(rec))
        for levent in ledger.events[ledger_mark:]:
            audit.append(levent.line())
        for event in events:
            rec = PublicRecord(clock, CONTRACT_ID, event.kind, event.to_bytes(group))
            records.append(rec)
            audit.append(record_line(rec))

        if contract.phase == Phase.CLOSED:
            timed_out = False
            termination = clock
            break

    refunds: dict[str, int] = {}
    for levent in ledger.events:
        if levent.kind == "refund":
            refunds[levent.party] = refunds.get(levent.party, 0) + levent.amount

    return RunOutcome(
        world="real",
        balances=ledger.snapshot(),
        escrow=ledger.escrow_of(CONTRACT_ID),
        verdicts=dict(contract.verdicts),
        participants=tuple(contract.comms),
        null_answers=tuple(w for w, a in contract.answers.items() if a is None),
        golden_opened=contract.golden_opened is not None,
        refunds=refunds,
        timed_out=timed_out,
        termination_clock=termination,
        audit=audit,
        records=records,
    )


class _IdealWorkerEmitter:
    """Scripted ideal worker: submits its intents once the task is up."""

    def __init__(self, worker_id: str, intents, rushing: bool):
        self.actor_id = worker_id
        self.rushing = rushing
        self.intents = intents
        self._sent = False

    def step(self, period, events, pending):
        if self._sent or not any(isinstance(e, IdealPublished) for e in events):
            return []
        self._sent = True
        return [IdealAnswer(values, token) for token, values in self.intents]


def run_ideal(scenario: Scenario) -> RunOutcome:
    """Execute the trusted-party version of the scenario.

    The driver plays the simulator: worker strategies are replaced by
    their submission intents, a reused intent token is suppressed the
    way a copied commitment would be dropped, and the corrupt
    requester's messages are translated into their ideal counterparts.
    """
    scenario.validate()
    group = scenario.group
    ledger = Ledger({REQUESTER_ID: scenario.requester_balance})
    functionality = IdealFunctionality(ledger, CONTRACT_ID)
    scheduler = _build_scheduler(scenario)

    keys = keygen(group, scenario.rng_for("requester-keys"))
    requester = build_requester_actor(group, scenario, keys, scenario.rng_for("requester"))
    specs = {w.worker_id: w for w in scenario.workers}
    emitters = {
        w.worker_id: _IdealWorkerEmitter(
            w.worker_id,
            worker_ideal_intents(w, specs),
            WORKER_STRATEGIES[w.strategy_name].rushing,
        )
        for w in scenario.workers
    }
    order = _worker_order(scenario, emitters)

    def deferrable(env) -> bool:
        return isinstance(env.message, IdealAnswer) and functionality.phase == IdealPhase.COLLECT

    audit: list[str] = []
    records: list[PublicRecord] = []
    carry: list[_Pending] = []
    events: list = []
    seen_tokens: set = set()
    published = False
    evaluate_sent = False
    timed_out = True
    termination = scenario.max_clock

    for period in range(scenario.max_clock):
        sends: list[IdealEnvelope] = []
        if period == 0 and not published:
            published = True
            msg = IdealPublish(
                scenario.questions,
                scenario.budget,
                scenario.quota,
                scenario.answer_range,
                scenario.threshold,
                scenario.goldens,
            )
            sends.append(IdealEnvelope(REQUESTER_ID, msg, period))
        if any(isinstance(e, AnswersCollected) for e in events) and not evaluate_sent:
            evaluate_sent = True
            for msg in requester.ideal_messages(dict(functionality.answers)):
                sends.append(IdealEnvelope(REQUESTER_ID, msg, period))
        for worker_id in order:
            msgs = emitters[worker_id].step(period, events, sends)
            sends += [IdealEnvelope(worker_id, m, period) for m in msgs]

        pending = carry + [_Pending(env) for env in sends]
        clock = period + 1
        delivered, carry = _arrange(scheduler, pending, deferrable, clock)

        # the simulator denies delivery of submissions whose provenance
        # token was already spent (mirror of the duplicate-commitment rule)
        forwarded = []
        for env in delivered:
            if isinstance(env.message, IdealAnswer):
                if env.message.token in seen_tokens:
                    rec = PublicRecord(
                        clock, env.sender, "answer-suppressed", env.message.to_bytes()
                    )
                    records.append(rec)
                    audit.append(record_line(rec))
                    continue
                seen_tokens.add(env.message.token)
            forwarded.append(env)

        ledger_mark = len(ledger.events)
        events = functionality.deliver(forwarded, clock)

        for env in forwarded:
            rec = PublicRecord(clock, env.sender, env.message.kind, env.message.to_bytes())
            records.append(rec)
            audit.append(record_line(rec))
        for levent in ledger.events[ledger_mark:]:
            audit.append(levent.line())
        for event in events:
            rec = PublicRecord(clock, CONTRACT_ID, event.kind, event.to_bytes())
            records.append(rec)
            audit.append(record_line(rec))

        if functionality.phase == IdealPhase.CLOSED:
            timed_out = False
            termination = clock
            break

    return RunOutcome(
        world="ideal",
        balances=ledger.snapshot(),
        escrow=ledger.escrow_of(CONTRACT_ID),
        verdicts=dict(functionality.verdicts),
        participants=tuple(functionality.answers),
        null_answers=tuple(w for w, v in functionality.answers.items() if v is None),
        golden_opened=True,
        refunds={},
        timed_out=timed_out,
        termination_clock=termination,
        audit=audit,
        records=records,
    )
