"""Prime-order group arithmetic with a pluggable parameter set.

Elements live in the order-q subgroup of the multiplicative group mod a
prime p; scalars are exponents mod q.  Two parameter sets ship with the
package:

* ``DEFAULT_GROUP`` -- a 2048-bit modulus with a 256-bit prime-order
  subgroup, for runs where decisional Diffie-Hellman should plausibly
  hold.
* ``TINY_GROUP``    -- the order-11 subgroup of the integers mod 23,
  small enough that tests can enumerate every element and every
  plaintext/nonce pair exhaustively.

Canonical serializations: an element is fixed-width big-endian bytes of
its residue (width = byte length of the modulus); a scalar is fixed-width
big-endian bytes of its value (width = byte length of the order, 32 bytes
for the default group).  Deserialization rejects anything non-canonical,
out of range, or outside the subgroup.
"""

import gmpy2


class Group:
    """Order-q subgroup of Z_p^* with a fixed generator."""

    def __init__(self, modulus: int, order: int, generator: int, name: str = "group"):
        if not 1 < generator < modulus:
            raise ValueError("generator out of range")
        self._p = gmpy2.mpz(modulus)
        self._q = gmpy2.mpz(order)
        self.modulus = modulus
        self.order = order
        self.generator = generator
        self.name = name
        self.identity = 1
        self.element_size = (modulus.bit_length() + 7) // 8
        self.scalar_size = (order.bit_length() + 7) // 8
        if gmpy2.powmod(generator, self._q, self._p) != 1:
            raise ValueError("generator does not have the stated order")
        self._gen_windows = None

    def __repr__(self):
        return f"Group({self.name}, |q|={self.order.bit_length()} bits)"

    # -- group law ---------------------------------------------------------

    def exp(self, base: int, exponent: int) -> int:
        """base^exponent mod p; the exponent is reduced mod the order."""
        if base == self.generator:
            return self._generator_exp(exponent % self.order)
        return int(gmpy2.powmod(base, exponent % self._q, self._p))

    def _generator_exp(self, exponent: int) -> int:
        # fixed-base 4-bit windows; generator powers dominate keygen,
        # encryption, and proving, so the one-time table pays for itself
        if self._gen_windows is None:
            windows = []
            base = gmpy2.mpz(self.generator)
            for _ in range((self.order.bit_length() + 3) // 4):
                row = [gmpy2.mpz(1)]
                for _ in range(15):
                    row.append(row[-1] * base % self._p)
                windows.append(row)
                base = row[15] * base % self._p
            self._gen_windows = windows
        acc = gmpy2.mpz(1)
        i = 0
        while exponent:
            digit = exponent & 15
            if digit:
                acc = acc * self._gen_windows[i][digit] % self._p
            exponent >>= 4
            i += 1
        return int(acc)

    def mul(self, a: int, b: int) -> int:
        return int((gmpy2.mpz(a) * b) % self._p)

    def inv(self, a: int) -> int:
        return int(gmpy2.invert(a, self._p))

    def is_element(self, a) -> bool:
        """Subgroup membership: 1 <= a < p and a^q = 1."""
        if not isinstance(a, int) or not 1 <= a < self.modulus:
            return False
        return gmpy2.powmod(a, self._q, self._p) == 1

    # -- scalars -----------------------------------------------------------

    def random_scalar(self, rng) -> int:
        """Uniform scalar in [0, q) from a seeded random.Random."""
        return rng.randrange(self.order)

    def scalar_add(self, a: int, b: int) -> int:
        return (a + b) % self.order

    def scalar_mul(self, a: int, b: int) -> int:
        return (a * b) % self.order

    def scalar_neg(self, a: int) -> int:
        return (-a) % self.order

    # -- canonical bytes ---------------------------------------------------

    def element_to_bytes(self, a: int) -> bytes:
        if not 0 <= a < self.modulus:
            raise ValueError("residue out of range")
        return a.to_bytes(self.element_size, "big")

    def element_from_bytes(self, data: bytes) -> int:
        if len(data) != self.element_size:
            raise ValueError("wrong element width")
        a = int.from_bytes(data, "big")
        if not self.is_element(a):
            raise ValueError("not a subgroup element")
        return a

    def scalar_to_bytes(self, s: int) -> bytes:
        if not 0 <= s < self.order:
            raise ValueError("scalar out of range")
        return s.to_bytes(self.scalar_size, "big")

    def scalar_from_bytes(self, data: bytes) -> int:
        if len(data) != self.scalar_size:
            raise ValueError("wrong scalar width")
        s = int.from_bytes(data, "big")
        if s >= self.order:
            raise ValueError("scalar out of range")
        return s


# Order-11 subgroup of Z_23^*: {1,2,4,8,16,9,18,13,3,6,12}, generator 2.
TINY_GROUP = Group(23, 11, 2, name="tiny-mod23")


# 2048-bit modulus, 256-bit prime-order subgroup.  Generated once by a
# deterministic seeded search:
#   q = next_prime(sha3-256 stream "hitsim-order-v1", top bit set)
#   p = q*c + 1 scanning even c upward from a full-entropy 2048-bit
#       target (sha3-256 stream "hitsim-modulus-v1", top bit set)
#   g = 2^((p-1)/q) mod p
# Tests re-verify primality of p and q and the order of g.
_P2048 = int(
    "922D6EE500E02A74DFEC50A8BCAAFE803AC7B3486E178BCB66F336405F76429A"
    "896FBF3B84B12E0BC8919D3C5CEE32E079AF1C970A82DE1BCBDD75BCD6959136"
    "5BA6E3280F65A81F64FF38FA5B8EE1E3B3F6DB8F2B77D19336E493A9BB1FC617"
    "3FF651D4884BFAADA1205BD1216D97C0FD2D6E7159237AB6757AFA7400387428"
    "F8827D5C2263272300E4231DC4FF94E73BD154CB4BC01F68061F8B1849D9A5F6"
    "4FD234087189577BC816D35CF56D6588E7EA6F8D5B6155646EC3551C0B3CD377"
    "89BF89FFF6A6468B51B995975E9766509F8D11D386BC2F019C206361FF939064"
    "04373CFD6AD99B398549D02424451D1AA7F91374D394000016059DD7CA8E725B",
    16,
)
_Q256 = 0xC8A7424507211B4C36C442173F542A4EBEF3868B9350E97B6F13497711E9DB79
_G2048 = int(
    "5ECA7891D2657109EFED0E211765EFBF53C40AA2BE1F1CA8A714E382D0BE45AB"
    "31394C3C48E0307CBE84CCF486A719E472150BDF42032AD6B531B5FEAF0875E2"
    "B3F24ED9A88F1D0D25AA42107FEE36EF914498C3A13140B4C85DF468E015D857"
    "B2487AC1C5402223D1B649CB527374219F07E3BA2D2A0DCABDFF65F3F633B5B3"
    "15E0450BA4108F2B13A507E4D6B15BC16A15E32155A7098B77E4584B617DE842"
    "D47346F71DCD6842E80DE12F6BB68062A1B526D9EE2DD158570EFCFC0238599B"
    "089A24C2093417B06E04E2BEC89693C47C60C2205BEF8D29B6BEA57329C95A38"
    "D1A75A1F37AA3429939B5F2AE4E495E10689AE670AC2EA9B544646769C4A8819",
    16,
)

DEFAULT_GROUP = Group(_P2048, _Q256, _G2048, name="schnorr-2048-256")

GROUPS = {"default": DEFAULT_GROUP, "tiny": TINY_GROUP}
