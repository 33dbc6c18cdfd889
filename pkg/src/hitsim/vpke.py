"""Verifiable public-key encryption for short plaintext ranges.

Exponential ElGamal: Enc_h(m) = (g^r, g^m h^r).  Decryption recovers
g^m = c2 / c1^k and brute-forces the short range through a precomputed
table; a value outside the range is returned as the bare group element.
The decryptor can prove a decryption correct with a Schnorr proof for
the Diffie-Hellman tuple (g, h, c1, c2/g^m), made non-interactive via
Fiat-Shamir.

Proof transcript: the challenge hashes the length-prefixed concatenation
of (A, B, g, h, c1, c2, E) where A = c1^x and B = g^x are the prover's
nonce commitments and E is the claimed plaintext-in-the-exponent (g^m
for an in-range claim, the raw element for an out-of-range claim).
"""

from dataclasses import dataclass
from typing import Optional, Union

from .commitments import hash_to_scalar
from .encoding import encode_parts, u64
from .groups import Group


@dataclass(frozen=True)
class KeyPair:
    """ElGamal key pair with public = g^secret."""

    secret: int
    public: int


@dataclass(frozen=True)
class AnswerRange:
    """Inclusive integer range of admissible answers; at most 2^16 wide."""

    low: int
    high: int

    def __post_init__(self):
        if not 0 <= self.low <= self.high:
            raise ValueError("need 0 <= low <= high")
        if self.high - self.low + 1 > 1 << 16:
            raise ValueError("range wider than 2^16")
        if self.high >= 1 << 63:
            raise ValueError("range values must fit in 63 bits")

    def __contains__(self, m) -> bool:
        return isinstance(m, int) and self.low <= m <= self.high

    def __len__(self) -> int:
        return self.high - self.low + 1

    def values(self):
        return range(self.low, self.high + 1)


@dataclass(frozen=True)
class Ciphertext:
    """ElGamal pair (c1, c2) = (g^r, g^m h^r)."""

    c1: int
    c2: int

    def to_bytes(self, group: Group) -> bytes:
        return encode_parts(group.element_to_bytes(self.c1), group.element_to_bytes(self.c2))


@dataclass(frozen=True)
class InRange:
    """Decryption landed on a plaintext inside the answer range."""

    value: int


@dataclass(frozen=True)
class OutOfRange:
    """Decryption produced a group element with no in-range preimage."""

    element: int


DecResult = Union[InRange, OutOfRange]


@dataclass(frozen=True)
class VpkeProof:
    """Schnorr transcript (nonce commitments w.r.t. c1 and g, response)."""

    nonce_c1: int
    nonce_g: int
    response: int

    def to_bytes(self, group: Group) -> bytes:
        return encode_parts(
            group.element_to_bytes(self.nonce_c1),
            group.element_to_bytes(self.nonce_g),
            group.scalar_to_bytes(self.response),
        )


def dec_result_to_bytes(result: DecResult, group: Group) -> bytes:
    if isinstance(result, InRange):
        return b"\x00" + u64(result.value)
    return b"\x01" + group.element_to_bytes(result.element)


def dec_result_from_bytes(data: bytes, group: Group) -> DecResult:
    if len(data) >= 1 and data[0] == 0 and len(data) == 9:
        return InRange(int.from_bytes(data[1:], "big"))
    if len(data) >= 1 and data[0] == 1:
        return OutOfRange(group.element_from_bytes(data[1:]))
    raise ValueError("malformed decryption-result encoding")


def proof_to_bytes(proof: VpkeProof, group: Group) -> bytes:
    return proof.to_bytes(group)


def proof_from_bytes(data: bytes, group: Group) -> VpkeProof:
    from .encoding import decode_parts

    a, b, z = decode_parts(data, 3)
    return VpkeProof(
        group.element_from_bytes(a),
        group.element_from_bytes(b),
        group.scalar_from_bytes(z),
    )


class DecryptTable:
    """Precomputed g^m -> m lookup for every m in the range.

    Built once per task and immutable afterwards, so decryption is a
    single exponentiation plus a dict probe regardless of range width.
    """

    def __init__(self, group: Group, answer_range: AnswerRange):
        if answer_range.high >= group.order:
            raise ValueError("range does not fit below the group order")
        self.group = group
        self.answer_range = answer_range
        self._table = {}
        self._elements = {}
        g = group.generator
        elem = group.exp(g, answer_range.low)
        for m in answer_range.values():
            self._table[elem] = m
            self._elements[m] = elem
            elem = group.mul(elem, g)

    def lookup(self, element: int) -> Optional[int]:
        return self._table.get(element)

    def element_for(self, m: int) -> int:
        return self._elements[m]

    def encodes_in_range(self, element: int) -> bool:
        return element in self._table


class ChallengeOracle:
    """Fiat-Shamir challenge derivation, programmable for simulation.

    The default (never-programmed) instance just hashes the transcript;
    a simulator programs chosen transcript -> challenge entries, which
    is the standard random-oracle reprogramming argument made concrete.
    """

    def __init__(self):
        self._programmed: dict[bytes, int] = {}

    def challenge(self, transcript: bytes, order: int) -> int:
        hit = self._programmed.get(transcript)
        if hit is not None:
            return hit % order
        return hash_to_scalar(transcript, order)

    def program(self, transcript: bytes, value: int) -> None:
        existing = self._programmed.get(transcript)
        if existing is not None and existing != value:
            raise ValueError("transcript already programmed differently")
        self._programmed[transcript] = value


DEFAULT_ORACLE = ChallengeOracle()


def keygen(group: Group, rng) -> KeyPair:
    """Fresh key pair; deterministic for a fixed rng seed."""
    k = group.random_scalar(rng)
    return KeyPair(secret=k, public=group.exp(group.generator, k))


def enc(group: Group, m: int, public_key: int, rng) -> Ciphertext:
    """Encrypt m >= 0 under the public key with fresh randomness.

    m need not lie in any answer range; misbehaving senders are the
    verifier's problem, not the encryptor's.
    """
    if m < 0:
        raise ValueError("plaintext must be non-negative")
    r = group.random_scalar(rng)
    c1 = group.exp(group.generator, r)
    c2 = group.mul(group.exp(group.generator, m), group.exp(public_key, r))
    return Ciphertext(c1, c2)


def dec(
    group: Group,
    secret: int,
    cipher: Ciphertext,
    answer_range: AnswerRange,
    table: Optional[DecryptTable] = None,
) -> DecResult:
    """Total decryption: InRange(m) if g^m matches, else OutOfRange."""
    if table is None:
        table = DecryptTable(group, answer_range)
    element = group.mul(cipher.c2, group.inv(group.exp(cipher.c1, secret)))
    m = table.lookup(element)
    if m is None:
        return OutOfRange(element)
    return InRange(m)


def _claimed_element(group: Group, claimed: DecResult) -> int:
    if isinstance(claimed, InRange):
        return group.exp(group.generator, claimed.value)
    return claimed.element


def _transcript(group: Group, nonce_c1: int, nonce_g: int, public_key: int,
                cipher: Ciphertext, claimed_element: int) -> bytes:
    eb = group.element_to_bytes
    return encode_parts(
        eb(nonce_c1),
        eb(nonce_g),
        eb(group.generator),
        eb(public_key),
        eb(cipher.c1),
        eb(cipher.c2),
        eb(claimed_element),
    )


def prove_pke(
    group: Group,
    keys: KeyPair,
    cipher: Ciphertext,
    answer_range: AnswerRange,
    rng,
    table: Optional[DecryptTable] = None,
    oracle: ChallengeOracle = DEFAULT_ORACLE,
) -> tuple[DecResult, VpkeProof]:
    """Decrypt and prove the decryption correct.

    The Schnorr nonce is sampled uniformly in [0, q) so the response
    x + k*challenge is itself uniform.
    """
    result = dec(group, keys.secret, cipher, answer_range, table)
    x = group.random_scalar(rng)
    nonce_c1 = group.exp(cipher.c1, x)
    nonce_g = group.exp(group.generator, x)
    transcript = _transcript(group, nonce_c1, nonce_g, keys.public, cipher,
                             _claimed_element(group, result))
    c = oracle.challenge(transcript, group.order)
    z = group.scalar_add(x, group.scalar_mul(keys.secret, c))
    return result, VpkeProof(nonce_c1, nonce_g, z)


def verify_pke(
    group: Group,
    public_key: int,
    claimed: DecResult,
    cipher: Ciphertext,
    proof: VpkeProof,
    answer_range: AnswerRange,
    table: Optional[DecryptTable] = None,
    oracle: ChallengeOracle = DEFAULT_ORACLE,
) -> bool:
    """Check a claimed decryption against its proof; never raises.

    Rejects non-canonical claims outright: an InRange value outside the
    range, or an OutOfRange element that actually encodes some in-range
    plaintext.  The latter closes the hole where a correct answer could
    be re-disclosed in group-element form and pass as "wrong".

    Ciphertext components get bounds checks only; subgroup membership is
    the wire boundary's job (canonical deserialization and the contract's
    reveal validation both enforce it).
    """
    try:
        if not isinstance(proof, VpkeProof):
            return False
        a, b, z = proof.nonce_c1, proof.nonce_g, proof.response
        if not (isinstance(a, int) and 1 <= a < group.modulus):
            return False
        if not (isinstance(b, int) and 1 <= b < group.modulus):
            return False
        if not (isinstance(z, int) and 0 <= z < group.order):
            return False
        if not isinstance(cipher, Ciphertext):
            return False
        for part in (cipher.c1, cipher.c2):
            if not (isinstance(part, int) and 1 <= part < group.modulus):
                return False

        if table is not None and (table.group is not group or table.answer_range != answer_range):
            table = None
        if isinstance(claimed, InRange):
            if claimed.value not in answer_range:
                return False
            if table is not None:
                element = table.element_for(claimed.value)
            else:
                element = group.exp(group.generator, claimed.value)
        elif isinstance(claimed, OutOfRange):
            element = claimed.element
            if not (isinstance(element, int) and 1 <= element < group.modulus):
                return False
            if table is None:
                table = DecryptTable(group, answer_range)
            if table.encodes_in_range(element):
                return False
        else:
            return False

        transcript = _transcript(group, a, b, public_key, cipher, element)
        c = oracle.challenge(transcript, group.order)

        lhs1 = group.mul(group.exp(element, c), group.exp(cipher.c1, z))
        rhs1 = group.mul(a, group.exp(cipher.c2, c))
        if lhs1 != rhs1:
            return False
        lhs2 = group.exp(group.generator, z)
        rhs2 = group.mul(b, group.exp(public_key, c))
        return lhs2 == rhs2
    except (ValueError, TypeError, AttributeError):
        return False


def simulate_proof(
    group: Group,
    public_key: int,
    claimed: DecResult,
    cipher: Ciphertext,
    rng,
    oracle: ChallengeOracle,
) -> VpkeProof:
    """Zero-knowledge simulator: forge a transcript without the key.

    Picks the response and challenge first, solves the verification
    equations for the nonce commitments, then programs the oracle so
    the forged challenge is what verification recomputes.  Passing
    verify_pke with the programmed oracle (and only with it) is the
    package's operational zero-knowledge check.
    """
    element = _claimed_element(group, claimed)
    z = group.random_scalar(rng)
    c = group.random_scalar(rng)
    neg_c = group.scalar_neg(c)
    nonce_c1 = group.mul(
        group.mul(group.exp(element, c), group.exp(cipher.c1, z)),
        group.exp(cipher.c2, neg_c),
    )
    nonce_g = group.mul(group.exp(group.generator, z), group.exp(public_key, neg_c))
    transcript = _transcript(group, nonce_c1, nonce_g, public_key, cipher, element)
    oracle.program(transcript, c)
    return VpkeProof(nonce_c1, nonce_g, z)
