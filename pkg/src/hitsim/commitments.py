"""Random-oracle hash, digest-to-scalar reduction, and the folklore
hash commitment: commit(msg, key) = H(encode(msg) || key).

The hash is sha3-256 (recorded in HASH_NAME so test vectors are
reproducible).  Commitment keys are 128-bit uniform strings.
"""

import hashlib

from .encoding import u32

HASH_NAME = "sha3_256"
DIGEST_SIZE = 32
COMMIT_KEY_SIZE = 16  # 128-bit blinding keys


def hash_bytes(data: bytes) -> bytes:
    """32-byte digest of data."""
    return hashlib.sha3_256(data).digest()


def hash_to_scalar(data: bytes, order: int) -> int:
    """Digest interpreted as a big-endian unsigned int, reduced mod order."""
    return int.from_bytes(hash_bytes(data), "big") % order


def new_commit_key(rng) -> bytes:
    """Fresh 128-bit blinding key from a seeded random.Random."""
    return rng.getrandbits(8 * COMMIT_KEY_SIZE).to_bytes(COMMIT_KEY_SIZE, "big")


def commit(msg: bytes, key: bytes) -> bytes:
    """Binding-and-hiding commitment digest over msg under a blinding key.

    The message is length-prefixed before the key is appended so that
    (msg, key) splits are unambiguous.
    """
    return hash_bytes(u32(len(msg)) + msg + key)


def open_commitment(comm: bytes, msg: bytes, key: bytes) -> bool:
    """1 iff the commitment recomputes; total over arbitrary inputs."""
    try:
        return commit(msg, key) == comm
    except ValueError:
        return False
