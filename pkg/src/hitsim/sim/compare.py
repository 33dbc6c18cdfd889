"""Real-vs-ideal outcome comparison.

Honest parties must end with identical coins in both worlds; that is
the testable form of the protocol's security claim.  The requester's
real-world balance is normalized by removing refund credits, because
the ideal functionality never refunds residual escrow.

One divergence class is expected and registered: when the requester
never opens the goldens, the real contract's default branch pays even
the workers recorded without a reveal, while the ideal functionality's
no-message branch pays only actual submissions.  Such diffs can only
hit workers who never revealed (never an honest party under the
synchrony bound) and are reported as known rather than as failures.
"""

from dataclasses import dataclass, field

from .outcome import RunOutcome
from .scenario import REQUESTER_ID, Scenario


@dataclass(frozen=True)
class PartyDiff:
    party: str
    real: int
    ideal: int
    honest: bool
    known: bool
    note: str

    @property
    def delta(self) -> int:
        return self.real - self.ideal


@dataclass
class ComparisonReport:
    diffs: list[PartyDiff] = field(default_factory=list)
    structural: list[str] = field(default_factory=list)

    @property
    def unexplained(self) -> list[PartyDiff]:
        return [d for d in self.diffs if not d.known]

    @property
    def honest_unexplained(self) -> list[PartyDiff]:
        return [d for d in self.unexplained if d.honest]

    @property
    def clean(self) -> bool:
        return not self.unexplained and not self.structural

    @property
    def honest_clean(self) -> bool:
        return not self.honest_unexplained and not self.structural

    def lines(self) -> list[str]:
        if self.clean:
            return ["real and ideal outcomes agree"]
        out = []
        for d in self.diffs:
            tag = "known-divergence" if d.known else "DIFF"
            out.append(
                f"{tag} {d.party}: real={d.real} ideal={d.ideal} ({d.note})"
            )
        out += [f"DIFF {note}" for note in self.structural]
        return out

    def format(self) -> str:
        return "\n".join(self.lines())


def compare(real: RunOutcome, ideal: RunOutcome, scenario: Scenario) -> ComparisonReport:
    """Diff final balances party by party, refunds normalized out."""
    report = ComparisonReport()
    if real.timed_out != ideal.timed_out:
        report.structural.append(
            f"termination mismatch: real timed_out={real.timed_out} "
            f"ideal timed_out={ideal.timed_out}"
        )
    honest = set(scenario.honest_parties())
    parties = [REQUESTER_ID] + scenario.worker_ids()
    payout = scenario.payout
    for party in parties:
        r = real.normalized_balance(party)
        i = ideal.normalized_balance(party)
        if r == i:
            continue
        known = (
            party != REQUESTER_ID
            and not real.golden_opened
            and party in real.null_answers
            and r - i == payout
        )
        note = (
            "unrevealed worker paid by the contract's default branch"
            if known
            else "balance mismatch"
        )
        report.diffs.append(PartyDiff(party, r, i, party in honest, known, note))
    return report
