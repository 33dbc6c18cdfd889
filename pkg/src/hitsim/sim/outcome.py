"""Run outcomes and the line-delimited audit log.

Audit lines come in two shapes:

    clock=3 actor=w1 kind=commit digest=9f2c4e1ab0d8e3f7
    clock=4 actor=ledger kind=paid party=w1 amount=100

Message and event lines carry a 16-hex-char digest of the canonical
payload bytes; ledger lines carry party and amount in the clear.  The
log is a deterministic function of (scenario, seeds).
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from ..commitments import hash_bytes


@dataclass(frozen=True)
class PublicRecord:
    """One message or event as everyone on the network saw it."""

    clock: int
    actor: str
    kind: str
    payload: bytes


def payload_digest(payload: bytes) -> str:
    return hash_bytes(payload)[:8].hex()


def record_line(record: PublicRecord) -> str:
    return (
        f"clock={record.clock} actor={record.actor} "
        f"kind={record.kind} digest={payload_digest(record.payload)}"
    )


@dataclass
class RunOutcome:
    """Everything a run leaves behind, deterministic per scenario."""

    world: str  # "real" | "ideal"
    balances: dict[str, int]
    escrow: int
    verdicts: dict[str, bool]
    participants: tuple[str, ...]
    null_answers: tuple[str, ...]
    golden_opened: bool
    refunds: dict[str, int]
    timed_out: bool
    termination_clock: int
    audit: list[str] = field(default_factory=list)
    records: list[PublicRecord] = field(default_factory=list)

    def audit_text(self) -> str:
        return "\n".join(self.audit)

    def message_counts(self) -> dict[str, int]:
        """Per-kind message accounting derived from the audit log."""
        counts: Counter[str] = Counter()
        for line in self.audit:
            for part in line.split():
                if part.startswith("kind="):
                    counts[part[5:]] += 1
        return dict(counts)

    def normalized_balance(self, party: str) -> int:
        """Final balance with refund credits removed, so worlds with and
        without a refund step compare like for like."""
        return self.balances.get(party, 0) - self.refunds.get(party, 0)

    def summary_lines(self) -> list[str]:
        lines = [
            f"world={self.world} closed={not self.timed_out} clock={self.termination_clock}",
            f"golden_opened={self.golden_opened}",
        ]
        for worker in self.participants:
            verdict = "paid" if self.verdicts.get(worker) else "unpaid"
            note = " (no reveal)" if worker in self.null_answers else ""
            lines.append(f"  {worker}: {verdict}{note}")
        for party in sorted(self.balances):
            lines.append(f"  balance {party} = {self.balances[party]}")
        if self.escrow:
            lines.append(f"  escrow remaining = {self.escrow}")
        return lines
