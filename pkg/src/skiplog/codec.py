"""Bit-exact serialization of logs and certificates.

Fixed-width big-endian integers throughout: certificate sizes are
dominated by 32-byte labels anyway, and a fixed layout keeps the formats
byte-reproducible.  Decoders parse strictly and raise MalformedError with
the first violated field; they never raise anything else, no matter the
input.
"""

from __future__ import annotations

import struct

from .authenticator import DIGEST_LEN, LogState, PositionalCert, PrefixCert, scheme_byte
from .skipgraph import Inner, Linear, Scheme, Sink, SkipList, Vertex, vertex_valid

MAGIC_LOG = b"SLOG"
MAGIC_PREFIX = b"SLCP"
MAGIC_POSITIONAL = b"SLPC"
VERSION = 0x01

_U64 = struct.Struct(">Q")
_U32 = struct.Struct(">I")


class MalformedError(ValueError):
    """Strict-parse failure; ``reason`` names the first violated field."""

    def __init__(self, reason: str):
        super().__init__(f"malformed({reason})")
        self.reason = reason


def _scheme_from_byte(tag: int) -> Scheme:
    if tag == 0x00:
        return Linear()
    if tag == 0x02:
        return SkipList(2)
    if tag == 0x03:
        return SkipList(3)
    if 0x0B + 4 <= tag <= 0xFF:
        return SkipList(tag - 0x0B)
    raise MalformedError("scheme")


def _wire_scheme_byte(scheme: Scheme) -> int:
    # The flat binary scheme is an in-process correctness anchor, not an
    # interchange format; round-trip stays total for everything we emit.
    tag = scheme_byte(scheme)
    if tag == 0x01:
        raise ValueError("the flat binary scheme has no wire format")
    return tag


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise MalformedError("length")
        out = self.data[self.pos : self.pos + n]
        self.pos += n
        return out

    def u64(self) -> int:
        return _U64.unpack(self.take(8))[0]

    def u32(self) -> int:
        return _U32.unpack(self.take(4))[0]

    def u8(self) -> int:
        return self.take(1)[0]

    def finish(self) -> None:
        if self.pos != len(self.data):
            raise MalformedError("trailing")


def _check_header(r: _Reader, magic: bytes) -> Scheme:
    if r.take(4) != magic:
        raise MalformedError("magic")
    if r.u8() != VERSION:
        raise MalformedError("version")
    return _scheme_from_byte(r.u8())


def encode_prefix_cert(cert: PrefixCert) -> bytes:
    out = bytearray(MAGIC_PREFIX)
    out.append(VERSION)
    out.append(_wire_scheme_byte(cert.scheme))
    out += _U64.pack(cert.len_s)
    out += _U64.pack(cert.len_t)
    out += _U32.pack(len(cert.labels))
    for label in cert.labels:
        if len(label) != DIGEST_LEN:
            raise ValueError("labels are 32 bytes")
        out += label
    return bytes(out)


def decode_prefix_cert(data: bytes) -> PrefixCert:
    r = _Reader(data)
    scheme = _check_header(r, MAGIC_PREFIX)
    len_s = r.u64()
    len_t = r.u64()
    if len_s < 1 or len_s > len_t:
        raise MalformedError("range")
    count = r.u32()
    labels = tuple(r.take(DIGEST_LEN) for _ in range(count))
    r.finish()
    return PrefixCert(scheme, len_s, len_t, labels)


def encode_positional_cert(cert: PositionalCert) -> bytes:
    out = bytearray(MAGIC_POSITIONAL)
    out.append(VERSION)
    out.append(_wire_scheme_byte(cert.scheme))
    out += _U64.pack(cert.n)
    out += _U64.pack(cert.round_length or 0)
    out.append(0x01 if cert.chained else 0x00)
    out += _U32.pack(len(cert.entries))
    for v, label in cert.entries:
        if len(label) != DIGEST_LEN:
            raise ValueError("labels are 32 bytes")
        if isinstance(v, Sink):
            # Sinks ride along as layer 0xFFFFFFFF; positions stay u64.
            out += _U64.pack(v.n)
            out += _U32.pack(0xFFFFFFFF)
        else:
            out += _U64.pack(v.n)
            out += _U32.pack(v.k)
        out += label
    if cert.chained:
        if cert.chain_digest is None or len(cert.chain_digest) != DIGEST_LEN:
            raise ValueError("chained certificate needs a 32-byte chain digest")
        out += cert.chain_digest
    return bytes(out)


def decode_positional_cert(data: bytes) -> PositionalCert:
    r = _Reader(data)
    scheme = _check_header(r, MAGIC_POSITIONAL)
    n = r.u64()
    if n < 1:
        raise MalformedError("position")
    round_length = r.u64() or None
    flags = r.u8()
    if flags & ~0x01:
        raise MalformedError("flags")
    chained = bool(flags & 0x01)
    if chained and round_length is None:
        raise MalformedError("flags")
    count = r.u32()
    entries = []
    for _ in range(count):
        pos = r.u64()
        layer = r.u32()
        if layer == 0xFFFFFFFF:
            v: Vertex = Sink(pos)
        else:
            if layer > 63:  # base**layer would exceed any u64 position
                raise MalformedError("vertex")
            v = Inner(pos, layer)
        if not vertex_valid(scheme, v):
            raise MalformedError("vertex")
        entries.append((v, r.take(DIGEST_LEN)))
    chain = r.take(DIGEST_LEN) if chained else None
    r.finish()
    return PositionalCert(scheme, n, tuple(entries), round_length, chained, chain)


def encode_log(log: LogState) -> bytes:
    out = bytearray(MAGIC_LOG)
    out.append(VERSION)
    out.append(_wire_scheme_byte(log.scheme))
    out += _U64.pack(log.length)
    for n in range(1, log.length + 1):
        out += log.item_hash(n)
    return bytes(out)


def decode_log(data: bytes) -> LogState:
    r = _Reader(data)
    scheme = _check_header(r, MAGIC_LOG)
    count = r.u64()
    if len(data) - r.pos != count * DIGEST_LEN:
        raise MalformedError("length")
    hashes = [r.take(DIGEST_LEN) for _ in range(count)]
    r.finish()
    return LogState(scheme, hashes)
