"""hitsim: a private decentralized human-intelligence-task protocol at
desk scale.

Workers encrypt their answers to the requester and commit-reveal them
through a simulated on-chain contract; the requester proves the quality
of encrypted submissions (or that one is out of range) without
revealing the decryption key; the contract pays exactly the deserving
workers from escrowed budget.  A clocked harness replays the same
scenario against a trusted-party ideal functionality and checks that
honest parties end up with the same coins.
"""

from .clients import RequesterClient, WorkerClient, requester_keygen
from .commitments import (
    COMMIT_KEY_SIZE,
    DIGEST_SIZE,
    HASH_NAME,
    commit,
    hash_bytes,
    hash_to_scalar,
    new_commit_key,
    open_commitment,
)
from .contract import Envelope, Phase, TaskContract, TaskParams
from .groups import DEFAULT_GROUP, GROUPS, TINY_GROUP, Group
from .ledger import Ledger
from .quality import GoldenSet, QualityItem, QualityProof, prove_quality, quality, verify_quality
from .vpke import (
    AnswerRange,
    ChallengeOracle,
    Ciphertext,
    DecryptTable,
    InRange,
    KeyPair,
    OutOfRange,
    VpkeProof,
    dec,
    enc,
    keygen,
    prove_pke,
    simulate_proof,
    verify_pke,
)

__version__ = "0.1.0"

__all__ = [
    "AnswerRange",
    "COMMIT_KEY_SIZE",
    "ChallengeOracle",
    "Ciphertext",
    "DEFAULT_GROUP",
    "DIGEST_SIZE",
    "DecryptTable",
    "Envelope",
    "GROUPS",
    "GoldenSet",
    "Group",
    "HASH_NAME",
    "InRange",
    "KeyPair",
    "Ledger",
    "OutOfRange",
    "Phase",
    "QualityItem",
    "QualityProof",
    "RequesterClient",
    "TINY_GROUP",
    "TaskContract",
    "TaskParams",
    "VpkeProof",
    "WorkerClient",
    "commit",
    "dec",
    "enc",
    "hash_bytes",
    "hash_to_scalar",
    "keygen",
    "new_commit_key",
    "open_commitment",
    "prove_pke",
    "prove_quality",
    "quality",
    "requester_keygen",
    "simulate_proof",
    "verify_pke",
    "verify_quality",
]
