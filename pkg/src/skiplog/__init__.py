"""Skip-list linking schemes for prefix authentication.

An append-only log is authenticated by hash-labeling an implicit DAG whose
sinks hold the item hashes.  The label of the commit vertex of position n
fixes the entire length-n prefix; short certificates prove that one log
state is a prefix of another, and per-position certificate pools let
participants prove orderings long after the fact.
"""

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
    maxpow,
    out_neighbors,
    vertebra,
    vertex_valid,
)
from .paths import Path, bfs_path, canonical_path, greedy_path, off_path_out_neighbors
from .pools import (
    BoundedPool,
    CertPool,
    bounded_pool,
    bounded_positional_vertices,
    certificate_pool,
    positional_vertices,
)
from .authenticator import (
    DIGEST_LEN,
    InsufficientDataError,
    LogState,
    MissingLabelError,
    PositionalCert,
    PrefixCert,
    VerifyResult,
    assemble_prefix_from_pools,
    build_prefix_cert,
    extract_positional_cert,
    hash_item,
    verify_prefix_cert,
)
from .codec import (
    MalformedError,
    decode_log,
    decode_positional_cert,
    decode_prefix_cert,
    encode_log,
    encode_positional_cert,
    encode_prefix_cert,
)

__all__ = [
    "AntimonotoneBinary",
    "BoundedPool",
    "CertPool",
    "DIGEST_LEN",
    "Inner",
    "InsufficientDataError",
    "Linear",
    "LogState",
    "MalformedError",
    "MissingLabelError",
    "Path",
    "PositionalCert",
    "PrefixCert",
    "Scheme",
    "Sink",
    "SkipList",
    "VerifyResult",
    "Vertex",
    "assemble_prefix_from_pools",
    "bfs_path",
    "bounded_pool",
    "bounded_positional_vertices",
    "build_prefix_cert",
    "canonical_path",
    "certificate_pool",
    "commit",
    "decode_log",
    "decode_positional_cert",
    "decode_prefix_cert",
    "encode_log",
    "encode_positional_cert",
    "encode_prefix_cert",
    "extract_positional_cert",
    "generation",
    "greedy_path",
    "hash_item",
    "maxpow",
    "off_path_out_neighbors",
    "out_neighbors",
    "positional_vertices",
    "vertebra",
    "vertex_valid",
    "verify_prefix_cert",
]
