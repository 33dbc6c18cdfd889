"""Byte encodings shared by every commitment and proof transcript.

All composite values are serialized as length-prefixed concatenation:
a 4-byte big-endian length before each field.  Bare concatenation
would let two different field splits produce identical bytes, which
is exactly the kind of reparsing ambiguity a hash transcript cannot
afford.
"""

import struct


def u32(n: int) -> bytes:
    """4-byte big-endian unsigned int."""
    if not 0 <= n < 1 << 32:
        raise ValueError(f"u32 out of range: {n}")
    return struct.pack(">I", n)


def u64(n: int) -> bytes:
    """8-byte big-endian unsigned int."""
    if not 0 <= n < 1 << 64:
        raise ValueError(f"u64 out of range: {n}")
    return struct.pack(">Q", n)


def i64(n: int) -> bytes:
    """8-byte big-endian signed int (claimed counters may be hostile)."""
    if not -(1 << 63) <= n < 1 << 63:
        raise ValueError(f"i64 out of range: {n}")
    return struct.pack(">q", n)


def encode_parts(*parts: bytes) -> bytes:
    """Concatenate fields, each preceded by its u32 length."""
    out = bytearray()
    for part in parts:
        out += u32(len(part))
        out += part
    return bytes(out)


def decode_parts(data: bytes, count: int) -> list[bytes]:
    """Inverse of encode_parts; rejects trailing or truncated bytes."""
    parts = []
    pos = 0
    for _ in range(count):
        if pos + 4 > len(data):
            raise ValueError("truncated field length")
        (n,) = struct.unpack_from(">I", data, pos)
        pos += 4
        if pos + n > len(data):
            raise ValueError("truncated field body")
        parts.append(data[pos : pos + n])
        pos += n
    if pos != len(data):
        raise ValueError("trailing bytes after last field")
    return parts


def encode_text(s: str) -> bytes:
    return s.encode("utf-8")
