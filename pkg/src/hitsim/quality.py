"""Golden-standard quality scoring and proofs of quality over
encrypted answers.

The quality of an answer vector is the count of golden-standard
positions answered correctly.  The prover discloses (with a verifiable
decryption each) exactly the golden positions answered wrongly; the
verifier recounts upward from the claimed quality and accepts iff the
claim plus the verified wrong answers cover every golden position.
Valid claims can therefore overstate quality but never understate it.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

from .encoding import decode_parts, encode_parts, i64, u32
from .groups import Group
from .vpke import (
    AnswerRange,
    ChallengeOracle,
    Ciphertext,
    DecResult,
    DecryptTable,
    DEFAULT_ORACLE,
    InRange,
    KeyPair,
    VpkeProof,
    dec_result_from_bytes,
    dec_result_to_bytes,
    proof_from_bytes,
    prove_pke,
    verify_pke,
)

MAX_GOLDENS = 32


@dataclass(frozen=True)
class GoldenSet:
    """Golden-standard question indices (1-based, strictly increasing)
    with their known solutions."""

    indices: tuple[int, ...]
    solutions: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) != len(self.solutions):
            raise ValueError("indices and solutions must align")
        if len(self.indices) > MAX_GOLDENS:
            raise ValueError(f"more than {MAX_GOLDENS} golden standards")
        if any(i < 1 for i in self.indices):
            raise ValueError("question indices are 1-based")
        if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("indices must be strictly increasing")

    def __len__(self) -> int:
        return len(self.indices)

    def solution_at(self, index: int) -> int:
        return self.solutions[self.indices.index(index)]

    def to_bytes(self) -> bytes:
        idx = b"".join(u32(i) for i in self.indices)
        sol = b"".join(i64(s) for s in self.solutions)
        return encode_parts(idx, sol)

    @classmethod
    def from_bytes(cls, data: bytes) -> "GoldenSet":
        idx_blob, sol_blob = decode_parts(data, 2)
        if len(idx_blob) % 4 or len(sol_blob) % 8:
            raise ValueError("misaligned golden encoding")
        indices = tuple(
            int.from_bytes(idx_blob[i : i + 4], "big") for i in range(0, len(idx_blob), 4)
        )
        solutions = tuple(
            int.from_bytes(sol_blob[i : i + 8], "big", signed=True)
            for i in range(0, len(sol_blob), 8)
        )
        return cls(indices, solutions)


def quality(answers: Sequence[int], goldens: GoldenSet) -> int:
    """Count of golden positions where the answer equals the solution."""
    return sum(
        1
        for i, s in zip(goldens.indices, goldens.solutions)
        if i <= len(answers) and answers[i - 1] == s
    )


@dataclass(frozen=True)
class QualityItem:
    """One disclosed wrong answer: golden index, decryption, proof."""

    index: int
    disclosed: DecResult
    proof: VpkeProof


@dataclass(frozen=True)
class QualityProof:
    items: tuple[QualityItem, ...]

    def to_bytes(self, group: Group) -> bytes:
        out = bytearray(u32(len(self.items)))
        for item in self.items:
            out += encode_parts(
                u32(item.index),
                dec_result_to_bytes(item.disclosed, group),
                item.proof.to_bytes(group),
            )
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes, group: Group) -> "QualityProof":
        if len(data) < 4:
            raise ValueError("truncated quality proof")
        count = int.from_bytes(data[:4], "big")
        rest = data[4:]
        items = []
        # re-split: each item is three length-prefixed fields
        pos = 0
        for _ in range(count):
            fields = []
            for _ in range(3):
                if pos + 4 > len(rest):
                    raise ValueError("truncated quality item")
                n = int.from_bytes(rest[pos : pos + 4], "big")
                pos += 4
                if pos + n > len(rest):
                    raise ValueError("truncated quality item body")
                fields.append(rest[pos : pos + n])
                pos += n
            index = int.from_bytes(fields[0], "big")
            if len(fields[0]) != 4:
                raise ValueError("bad index width")
            items.append(
                QualityItem(
                    index,
                    dec_result_from_bytes(fields[1], group),
                    proof_from_bytes(fields[2], group),
                )
            )
        if pos != len(rest):
            raise ValueError("trailing bytes in quality proof")
        return cls(tuple(items))


def prove_quality(
    group: Group,
    keys: KeyPair,
    cipher: Sequence[Ciphertext],
    goldens: GoldenSet,
    answer_range: AnswerRange,
    rng,
    table: Optional[DecryptTable] = None,
    oracle: ChallengeOracle = DEFAULT_ORACLE,
) -> tuple[int, QualityProof]:
    """Disclose-and-prove every wrongly answered golden position.

    Returns the quality claim (golden count minus disclosed items) and
    the proof.  Out-of-range decryptions count as wrong answers, so the
    prover is total even over misbehaving ciphertext vectors.
    """
    if table is None:
        table = DecryptTable(group, answer_range)
    items = []
    for index, solution in zip(goldens.indices, goldens.solutions):
        ct = cipher[index - 1]
        disclosed, proof = prove_pke(group, keys, ct, answer_range, rng, table, oracle)
        correct = isinstance(disclosed, InRange) and disclosed.value == solution
        if not correct:
            items.append(QualityItem(index, disclosed, proof))
    claim = len(goldens) - len(items)
    return claim, QualityProof(tuple(items))


def verify_quality(
    group: Group,
    public_key: int,
    cipher: Sequence[Ciphertext],
    claim: int,
    proof: QualityProof,
    goldens: GoldenSet,
    answer_range: AnswerRange,
    table: Optional[DecryptTable] = None,
    oracle: ChallengeOracle = DEFAULT_ORACLE,
) -> bool:
    """Accept iff claim + (verified wrong disclosures) covers every golden.

    Each disclosed item must target a distinct golden index, differ from
    the golden solution, and carry a valid decryption proof.  Never
    raises on malformed input.
    """
    try:
        if not isinstance(proof, QualityProof) or not isinstance(claim, int):
            return False
        if table is None:
            table = DecryptTable(group, answer_range)
        golden_index = dict(zip(goldens.indices, goldens.solutions))
        seen = set()
        counter = claim
        for item in proof.items:
            if not isinstance(item, QualityItem):
                return False
            if item.index not in golden_index or item.index in seen:
                return False
            seen.add(item.index)
            disclosed = item.disclosed
            if isinstance(disclosed, InRange) and disclosed.value == golden_index[item.index]:
                return False
            if item.index - 1 >= len(cipher):
                return False
            if not verify_pke(
                group,
                public_key,
                disclosed,
                cipher[item.index - 1],
                item.proof,
                answer_range,
                table,
                oracle,
            ):
                return False
            counter += 1
        return counter >= len(goldens)
    except (ValueError, TypeError, AttributeError):
        return False
