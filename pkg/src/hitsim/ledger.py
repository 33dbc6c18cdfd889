"""Coin ledger with per-party balances and per-contract escrow.

freeze moves coins from a party into a contract's escrow when the
balance suffices (emitting `frozen`, else `nofund` and no change);
pay moves coins from escrow to a party when the escrow suffices.
Every operation conserves the total coin supply, and nothing ever
goes negative.  Events append to an audit log of
(clock, kind, party, amount) records.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class LedgerEvent:
    clock: int
    kind: str  # frozen | nofund | paid | escrow_short | refund
    party: str
    amount: int

    def line(self) -> str:
        return f"clock={self.clock} actor=ledger kind={self.kind} party={self.party} amount={self.amount}"


class Ledger:
    def __init__(self, balances: dict[str, int] | None = None):
        self.balances: dict[str, int] = {}
        self.escrow: dict[str, int] = {}
        self.events: list[LedgerEvent] = []
        for party, amount in (balances or {}).items():
            self.deposit(party, amount)

    def deposit(self, party: str, amount: int) -> None:
        """Initial funding; not part of the protocol flow."""
        if amount < 0:
            raise ValueError("negative deposit")
        self.balances[party] = self.balances.get(party, 0) + amount

    def balance(self, party: str) -> int:
        return self.balances.get(party, 0)

    def escrow_of(self, contract: str) -> int:
        return self.escrow.get(contract, 0)

    def total(self) -> int:
        return sum(self.balances.values()) + sum(self.escrow.values())

    def freeze(self, party: str, contract: str, amount: int, clock: int = 0) -> bool:
        """Debit party into contract escrow; False (nofund) if short."""
        if amount < 0:
            raise ValueError("negative amount")
        if self.balance(party) < amount:
            self.events.append(LedgerEvent(clock, "nofund", party, amount))
            return False
        self.balances[party] = self.balance(party) - amount
        self.escrow[contract] = self.escrow_of(contract) + amount
        self.events.append(LedgerEvent(clock, "frozen", party, amount))
        return True

    def pay(self, contract: str, party: str, amount: int, clock: int = 0) -> bool:
        """Move escrow to a party; logged no-op if escrow is short."""
        return self._disburse(contract, party, amount, clock, "paid")

    def refund(self, contract: str, party: str, amount: int, clock: int = 0) -> bool:
        """Return residual escrow; distinct event kind so comparisons
        can normalize it out."""
        return self._disburse(contract, party, amount, clock, "refund")

    def _disburse(self, contract, party, amount, clock, kind) -> bool:
        if amount < 0:
            raise ValueError("negative amount")
        if self.escrow_of(contract) < amount:
            self.events.append(LedgerEvent(clock, "escrow_short", party, amount))
            return False
        self.escrow[contract] = self.escrow_of(contract) - amount
        self.balances[party] = self.balance(party) + amount
        self.events.append(LedgerEvent(clock, kind, party, amount))
        return True

    def snapshot(self) -> dict[str, int]:
        return dict(self.balances)
