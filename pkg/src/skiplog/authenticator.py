"""Hash labeling over an append-only log, and prefix/positional certificates.

Sinks are labeled with item hashes; every inner vertex is labeled with a
domain-separated SHA-256 over its out-neighbors' labels in canonical
order.  Appending never changes an existing label, so the cache only
grows.  A prefix certificate carries exactly the off-path neighbor labels
of the canonical path between two commits; verification reconstructs the
path labels bottom-up from the trusted prefix digest.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .paths import canonical_path, off_path_out_neighbors
from .pools import bounded_pool, bounded_positional_vertices, certificate_pool, positional_vertices
from .skipgraph import (
    AntimonotoneBinary,
    Inner,
    Linear,
    Scheme,
    Sink,
    SkipList,
    Vertex,
    commit,
    generation,
    out_neighbors,
    vertex_valid,
)

DIGEST_LEN = 32

_ITEM_TAG = b"\x00"
_INNER_TAG = b"\x01"


class InsufficientDataError(ValueError):
    """A label was requested for a vertex beyond the log's length."""


class MissingLabelError(ValueError):
    """Pool assembly could not source a needed label from either side."""


def scheme_byte(scheme: Scheme) -> int:
    """One-byte scheme identifier, shared by hashing and the wire format."""
    if isinstance(scheme, Linear):
        return 0x00
    if isinstance(scheme, AntimonotoneBinary):
        return 0x01
    if scheme.base == 2:
        return 0x02
    if scheme.base == 3:
        return 0x03
    if scheme.base <= 0xFF - 0x0B:
        return 0x0B + scheme.base
    raise ValueError(f"base {scheme.base} has no scheme byte")


def hash_item(item_bytes: bytes) -> bytes:
    """Digest of a sequence item, domain-separated from inner labels."""
    return hashlib.sha256(_ITEM_TAG + item_bytes).digest()


def _inner_label(scheme: Scheme, neighbor_labels: list[bytes]) -> bytes:
    preimage = _INNER_TAG + bytes([scheme_byte(scheme)]) + b"".join(neighbor_labels)
    return hashlib.sha256(preimage).digest()


@dataclass
class PrefixCert:
    """Off-path labels proving commit(len_s) is reachable from commit(len_t)."""

    scheme: Scheme
    len_s: int
    len_t: int
    labels: tuple[bytes, ...]


@dataclass
class PositionalCert:
    """Labeled out-neighborhood of the pool of n, enough for later proofs."""

    scheme: Scheme
    n: int
    entries: tuple[tuple[Vertex, bytes], ...]
    round_length: int | None = None
    chained: bool = False
    chain_digest: bytes | None = None


@dataclass
class VerifyResult:
    """Accept, or reject with the first reason encountered."""

    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


ACCEPT = VerifyResult(True)


class LogState:
    """Append-only log over one scheme.

    Single writer, any number of concurrent readers between writes.  The
    label cache is an optimization only; ``verify_cache`` recomputes every
    label from scratch and compares.
    """

    def __init__(self, scheme: Scheme, item_hashes: list[bytes] | None = None):
        self.scheme = scheme
        self._item_hashes: list[bytes] = list(item_hashes or [])
        for h in self._item_hashes:
            if len(h) != DIGEST_LEN:
                raise ValueError("item hashes are 32 bytes")
        self._labels: dict[Vertex, bytes] = {}
        self.chain_digest: bytes | None = None

    @property
    def length(self) -> int:
        return len(self._item_hashes)

    def item_hash(self, n: int) -> bytes:
        if not 1 <= n <= self.length:
            raise InsufficientDataError(f"no item at position {n} (length {self.length})")
        return self._item_hashes[n - 1]

    def append(self, item_bytes: bytes) -> bytes:
        """Ingest one item; returns the new log digest."""
        self._item_hashes.append(hash_item(item_bytes))
        return self.digest()

    def digest(self, at: int | None = None) -> bytes:
        """Label of commit(at); defaults to the current length."""
        n = self.length if at is None else at
        return self.label(commit(self.scheme, n))

    def label(self, v: Vertex) -> bytes:
        """Label of v, memoized; iterative so deep logs cannot overflow."""
        if not vertex_valid(self.scheme, v):
            raise ValueError(f"invalid vertex {v!r}")
        cached = self._labels.get(v)
        if cached is not None:
            return cached
        stack = [v]
        while stack:
            u = stack[-1]
            if u in self._labels:
                stack.pop()
                continue
            if isinstance(u, Sink):
                self._labels[u] = self.item_hash(u.n)
                stack.pop()
                continue
            deps = out_neighbors(self.scheme, u)
            pending = [d for d in deps if d not in self._labels]
            sinks = [d for d in pending if isinstance(d, Sink)]
            for s in sinks:
                self._labels[s] = self.item_hash(s.n)
            pending = [d for d in pending if not isinstance(d, Sink)]
            if pending:
                stack.extend(pending)
                continue
            self._labels[u] = _inner_label(self.scheme, [self._labels[d] for d in deps])
            stack.pop()
        return self._labels[v]

    def verify_cache(self) -> None:
        """Recompute all cached labels from scratch; raises on any drift."""
        fresh = LogState(self.scheme, self._item_hashes)
        for v, lab in self._labels.items():
            if fresh.label(v) != lab:
                raise AssertionError(f"cached label for {v!r} does not recompute")


def build_prefix_cert(log: LogState, len_s: int, len_t: int) -> PrefixCert:
    """Certificate that the length-len_s state is a prefix of len_t's.

    The degenerate len_s == len_t case proves that the digest commits
    item len_t: the certificate then carries the commit vertex's own
    neighbor labels instead of excluding them.
    """
    if not 1 <= len_s <= len_t <= log.length:
        raise ValueError(f"need 1 <= {len_s} <= {len_t} <= {log.length}")
    path = canonical_path(log.scheme, commit(log.scheme, len_t), commit(log.scheme, len_s))
    off = off_path_out_neighbors(log.scheme, path, exclude_final_vertex=len(path.vertices) > 1)
    return PrefixCert(log.scheme, len_s, len_t, tuple(log.label(u) for u in off))


def verify_prefix_cert(cert: PrefixCert, digest_s: bytes, digest_t: bytes) -> VerifyResult:
    """Check cert against the two trusted digests.  Total: never raises.

    The canonical path is recomputed from the lengths alone and walked
    last-to-first; the final vertex is seeded with digest_s, every
    earlier label is recomputed from on-path labels and consumed
    certificate labels, and the first vertex must reproduce digest_t.
    """
    if cert.len_s < 1 or cert.len_s > cert.len_t:
        return VerifyResult(False, "malformed")
    if len(digest_s) != DIGEST_LEN or len(digest_t) != DIGEST_LEN:
        return VerifyResult(False, "malformed")
    if any(len(lab) != DIGEST_LEN for lab in cert.labels):
        return VerifyResult(False, "malformed")
    if isinstance(cert.scheme, Linear):
        # Cheap count check before materializing a possibly huge chain.
        if cert.len_t > cert.len_s:
            expected = cert.len_t - cert.len_s
        else:
            expected = 2 if cert.len_t > 1 else 1
        if expected != len(cert.labels):
            return VerifyResult(False, "length-mismatch")
    try:
        src = commit(cert.scheme, cert.len_t)
        dst = commit(cert.scheme, cert.len_s)
        path = canonical_path(cert.scheme, src, dst)
        off = off_path_out_neighbors(
            cert.scheme, path, exclude_final_vertex=len(path.vertices) > 1
        )
    except ValueError:
        return VerifyResult(False, "malformed")
    if len(off) != len(cert.labels):
        return VerifyResult(False, "length-mismatch")
    known: dict[Vertex, bytes] = dict(zip(off, cert.labels))
    verts = path.vertices
    if len(verts) == 1:
        neighbor_labels = [known[u] for u in out_neighbors(cert.scheme, verts[0])]
        recomputed = _inner_label(cert.scheme, neighbor_labels)
        if recomputed != digest_t or digest_s != digest_t:
            return VerifyResult(False, "digest-mismatch")
        return ACCEPT
    known[verts[-1]] = digest_s
    for v in reversed(verts[:-1]):
        try:
            neighbor_labels = [known[u] for u in out_neighbors(cert.scheme, v)]
        except KeyError:  # pragma: no cover - canonical paths self-cover
            return VerifyResult(False, "malformed")
        known[v] = _inner_label(cert.scheme, neighbor_labels)
    if known[verts[0]] != digest_t:
        return VerifyResult(False, "digest-mismatch")
    return ACCEPT


def extract_positional_cert(
    log: LogState,
    n: int,
    round_length: int | None = None,
    chained: bool = False,
) -> PositionalCert:
    """Labeled out-neighborhood of n's pool, for storage and later assembly."""
    scheme = log.scheme
    if not isinstance(scheme, SkipList):
        raise ValueError("positional certificates require a skip-list scheme")
    if round_length is None:
        if chained:
            raise ValueError("chaining applies to bounded rounds only")
        vertices = positional_vertices(scheme, n)
        reach = scheme.base ** generation(scheme, n)
    else:
        vertices, _ = bounded_positional_vertices(scheme, n, round_length, chained)
        reach = round_length
    if reach > log.length:
        raise InsufficientDataError(
            f"pool of {n} references position {reach}, log has {log.length}"
        )
    chain = None
    if chained:
        if log.chain_digest is None:
            raise ValueError("log has no previous-round digest to chain")
        chain = log.chain_digest
    entries = tuple((v, log.label(v)) for v in vertices)
    return PositionalCert(scheme, n, entries, round_length, chained, chain)


def assemble_prefix_from_pools(pc_s: PositionalCert, pc_t: PositionalCert) -> PrefixCert:
    """Rebuild the prefix certificate for (pc_s.n, pc_t.n) from two pools.

    Every pool vertex's label is recomputed bottom-up: each out-neighbor
    is either another pool vertex (already recomputed) or carried by one
    of the certificates.  The result is byte-identical to
    ``build_prefix_cert`` on a full log.
    """
    if pc_s.scheme != pc_t.scheme:
        raise ValueError("certificates use different schemes")
    if pc_s.n > pc_t.n:
        raise ValueError(f"expected pc_s.n <= pc_t.n, got {pc_s.n} > {pc_t.n}")
    if pc_s.round_length != pc_t.round_length:
        raise ValueError("certificates come from different round configurations")
    scheme = pc_s.scheme
    assert isinstance(scheme, SkipList)

    known: dict[Vertex, bytes] = {}
    for cert in (pc_s, pc_t):
        for v, lab in cert.entries:
            known[v] = lab

    if pc_s.round_length is None:
        pool_vertices = certificate_pool(scheme, pc_s.n).vertices | certificate_pool(
            scheme, pc_t.n
        ).vertices
    else:
        pool_vertices = (
            bounded_pool(scheme, pc_s.n, pc_s.round_length).vertices
            | bounded_pool(scheme, pc_t.n, pc_t.round_length).vertices
        )
    # Neighbors only ever point to lower positions, or down the same
    # stack, so (position, layer) ascending is a topological order.
    for v in sorted(pool_vertices, key=lambda u: (u.n, u.k)):
        labels = []
        for u in out_neighbors(scheme, v):
            if u not in known:
                raise MissingLabelError(f"no label for {u!r} in either pool")
            labels.append(known[u])
        known[v] = _inner_label(scheme, labels)

    path = canonical_path(scheme, commit(scheme, pc_t.n), commit(scheme, pc_s.n))
    off = off_path_out_neighbors(scheme, path, exclude_final_vertex=len(path.vertices) > 1)
    missing = [u for u in off if u not in known]
    if missing:
        raise MissingLabelError(f"no label for {missing[0]!r} in either pool")
    return PrefixCert(scheme, pc_s.n, pc_t.n, tuple(known[u] for u in off))
