import hashlib

import pytest

from skiplog.authenticator import (
    InsufficientDataError,
    LogState,
    MissingLabelError,
    PrefixCert,
    assemble_prefix_from_pools,
    build_prefix_cert,
    extract_positional_cert,
    hash_item,
    verify_prefix_cert,
)
from skiplog.pools import positional_vertices
from skiplog.skipgraph import AntimonotoneBinary, Inner, Linear, Sink, SkipList

S2 = SkipList(2)
S3 = SkipList(3)


def _log(scheme, length):
    log = LogState(scheme)
    for i in range(1, length + 1):
        log.append(f"item-{i}".encode())
    return log


def test_hash_item():
    assert hash_item(b"") == hashlib.sha256(b"\x00").digest()
    assert hash_item(b"a") != hash_item(b"b")
    assert len(hash_item(b"anything")) == 32


def test_label_unfolds_definition():
    log = _log(S2, 2)
    sink1 = hash_item(b"item-1")
    sink2 = hash_item(b"item-2")
    label10 = hashlib.sha256(b"\x01\x02" + sink1).digest()
    label20 = hashlib.sha256(b"\x01\x02" + sink2 + label10).digest()
    # (2,1) is a base-2 generation apex: descend edge only.
    label21 = hashlib.sha256(b"\x01\x02" + label20).digest()
    assert log.label(Inner(1, 0)) == label10
    assert log.label(Inner(2, 0)) == label20
    assert log.label(Inner(2, 1)) == label21


def test_label_concatenates_both_neighbors():
    log = _log(S3, 3)
    label10 = log.label(Inner(1, 0))
    label20 = hashlib.sha256(b"\x01\x03" + hash_item(b"item-2") + label10).digest()
    assert log.label(Inner(2, 0)) == label20
    label30 = hashlib.sha256(b"\x01\x03" + hash_item(b"item-3") + label20).digest()
    # (3,1) is a base-3 apex: descend plus the link to the previous apex.
    label31 = hashlib.sha256(b"\x01\x03" + label30 + label10).digest()
    assert log.label(Inner(3, 1)) == label31


def test_label_requires_data():
    log = _log(S2, 8)
    with pytest.raises(InsufficientDataError):
        log.label(Inner(9, 0))
    with pytest.raises(ValueError):
        log.label(Inner(6, 2))


def test_append_digest_and_determinism():
    a = LogState(S2)
    b = LogState(S2)
    for i in range(13):
        da = a.append(f"x{i}".encode())
        db = b.append(f"x{i}".encode())
        assert da == db
    assert a.digest() == a.label(Inner(13, 0))
    assert a.digest(5) == a.label(Inner(5, 0))


def test_label_cache_recomputes_clean():
    log = _log(S2, 1024)
    log.digest()
    log.verify_cache()


def test_build_prefix_cert_same_endpoints():
    log = _log(S2, 5)
    cert = build_prefix_cert(log, 5, 5)
    assert cert.labels == (log.label(Sink(5)), log.label(Inner(4, 2)))


def test_build_prefix_cert_is_off_path_labels():
    log = _log(S2, 13)
    cert = build_prefix_cert(log, 6, 13)
    expected = [
        log.label(v)
        for v in (Sink(13), Inner(12, 1), Inner(4, 2), Inner(8, 0))
    ]
    assert list(cert.labels) == expected


def test_build_prefix_cert_rejects_bad_range():
    log = _log(S2, 13)
    with pytest.raises(ValueError):
        build_prefix_cert(log, 14, 13)
    with pytest.raises(ValueError):
        build_prefix_cert(log, 0, 3)
    with pytest.raises(ValueError):
        build_prefix_cert(log, 1, 14)


@pytest.mark.parametrize("scheme", [S2, S3])
def test_round_trip_small(scheme):
    log = _log(scheme, 64)
    digests = {n: log.digest(n) for n in range(1, 65)}
    for s in range(1, 65):
        for t in range(s, 65):
            cert = build_prefix_cert(log, s, t)
            assert verify_prefix_cert(cert, digests[s], digests[t]).ok, (s, t)


def test_verify_rejects_wrong_digests():
    log = _log(S2, 13)
    cert = build_prefix_cert(log, 6, 13)
    good_s, good_t = log.digest(6), log.digest(13)
    assert verify_prefix_cert(cert, good_s, log.digest(12)).reason == "digest-mismatch"
    assert verify_prefix_cert(cert, log.digest(5), good_t).reason == "digest-mismatch"
    flipped = bytes([good_t[0] ^ 1]) + good_t[1:]
    assert verify_prefix_cert(cert, good_s, flipped).reason == "digest-mismatch"


def test_verify_rejects_wrong_label_count():
    log = _log(S2, 13)
    cert = build_prefix_cert(log, 6, 13)
    shorter = PrefixCert(cert.scheme, cert.len_s, cert.len_t, cert.labels[:-1])
    assert verify_prefix_cert(shorter, log.digest(6), log.digest(13)).reason == "length-mismatch"
    longer = PrefixCert(cert.scheme, cert.len_s, cert.len_t, cert.labels + (b"\x00" * 32,))
    assert verify_prefix_cert(longer, log.digest(6), log.digest(13)).reason == "length-mismatch"


def test_verify_rejects_malformed():
    cert = PrefixCert(S2, 0, 5, ())
    assert verify_prefix_cert(cert, b"\x00" * 32, b"\x00" * 32).reason == "malformed"
    cert = PrefixCert(S2, 6, 5, ())
    assert verify_prefix_cert(cert, b"\x00" * 32, b"\x00" * 32).reason == "malformed"
    cert = PrefixCert(S2, 1, 2, (b"short",))
    assert verify_prefix_cert(cert, b"\x00" * 32, b"\x00" * 32).reason == "malformed"


def test_verify_mutated_label_rejected():
    log = _log(S2, 32)
    cert = build_prefix_cert(log, 7, 30)
    labels = list(cert.labels)
    labels[1] = labels[1][:5] + bytes([labels[1][5] ^ 0x40]) + labels[1][6:]
    bad = PrefixCert(cert.scheme, cert.len_s, cert.len_t, tuple(labels))
    assert not verify_prefix_cert(bad, log.digest(7), log.digest(30)).ok


def test_commit_binding():
    log = _log(S2, 64)
    for s, t in [(1, 64), (13, 40), (5, 6)]:
        cert = build_prefix_cert(log, s, t)
        assert cert.labels[0] == log.label(Sink(t))


def test_cert_size_bounded_by_pools():
    log = _log(S2, 128)
    for s, t in [(1, 128), (17, 100), (63, 64), (2, 3)]:
        cert = build_prefix_cert(log, s, t)
        bound = len(positional_vertices(S2, s)) + len(positional_vertices(S2, t))
        assert len(cert.labels) <= bound


def test_extract_positional_cert():
    log = _log(S2, 8)
    cert = extract_positional_cert(log, 8)
    assert len(cert.entries) == 6
    vertices = [v for v, _ in cert.entries]
    assert vertices == positional_vertices(S2, 8)
    for v, label in cert.entries:
        assert label == log.label(v)


def test_extract_requires_reach():
    log = _log(S2, 3)
    with pytest.raises(InsufficientDataError):
        extract_positional_cert(log, 3)  # needs the apex at position 4
    assert extract_positional_cert(_log(S2, 4), 3).n == 3


def test_extract_bounded():
    log = _log(S2, 16)
    cert = extract_positional_cert(log, 3, round_length=16)
    assert len(cert.entries) == 5
    assert cert.round_length == 16
    with pytest.raises(ValueError):
        extract_positional_cert(log, 3, round_length=16, chained=True)  # no chain digest
    log.chain_digest = b"\xaa" * 32
    chained = extract_positional_cert(log, 3, round_length=16, chained=True)
    assert chained.chain_digest == b"\xaa" * 32
    assert len(chained.entries) == 5


def test_assemble_examples():
    log = _log(S2, 16)
    for s, t in [(3, 12), (10, 14)]:
        pc_s = extract_positional_cert(log, s)
        pc_t = extract_positional_cert(log, t)
        cert = assemble_prefix_from_pools(pc_s, pc_t)
        assert cert == build_prefix_cert(log, s, t)
        assert verify_prefix_cert(cert, log.digest(s), log.digest(t)).ok


def test_assemble_rejects_misuse():
    log = _log(S2, 16)
    pc3 = extract_positional_cert(log, 3)
    pc12 = extract_positional_cert(log, 12)
    with pytest.raises(ValueError):
        assemble_prefix_from_pools(pc12, pc3)
    log3 = _log(S3, 27)
    with pytest.raises(ValueError):
        assemble_prefix_from_pools(extract_positional_cert(log3, 3), pc12)


def test_assemble_missing_label():
    log = _log(S2, 16)
    pc3 = extract_positional_cert(log, 3)
    pc12 = extract_positional_cert(log, 12)
    # Drop sink labels only the smaller pool carries (positions 4 and 3).
    stripped = type(pc3)(pc3.scheme, pc3.n, pc3.entries[2:], None, False, None)
    with pytest.raises(MissingLabelError):
        assemble_prefix_from_pools(stripped, pc12)


@pytest.mark.parametrize("scheme", [Linear(), AntimonotoneBinary()])
def test_other_schemes_round_trip(scheme):
    log = _log(scheme, 24)
    for s, t in [(1, 24), (5, 5), (7, 20), (23, 24)]:
        cert = build_prefix_cert(log, s, t)
        assert verify_prefix_cert(cert, log.digest(s), log.digest(t)).ok
        assert not verify_prefix_cert(cert, log.digest(s), log.digest(t - 1) if t > 1 else b"\x01" * 32).ok


def test_linear_cert_sizes():
    log = _log(Linear(), 24)
    cert = build_prefix_cert(log, 10, 24)
    assert len(cert.labels) == 14  # one sink label per step


def test_scheme_separation():
    # Identical items under different schemes must not share digests.
    log2 = _log(S2, 4)
    log3 = _log(S3, 4)
    assert log2.digest() != log3.digest()
