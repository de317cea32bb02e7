import pytest

from skiplog.pools import (
    bounded_pool,
    bounded_positional_vertices,
    certificate_pool,
    positional_vertices,
)
from skiplog.skipgraph import Inner, Sink, SkipList, commit, generation

from golden import SIZE_ROWS

S2 = SkipList(2)
S3 = SkipList(3)


def _inner(*pairs):
    return frozenset(Inner(n, k) for n, k in pairs)


def test_pool_base2_at_8():
    pool = certificate_pool(S2, 8)
    assert pool.vertices == _inner(
        (8, 3), (8, 2), (8, 1), (8, 0), (7, 0), (6, 1), (4, 2), (4, 1), (2, 1), (2, 0), (1, 0)
    )
    assert commit(S2, 8) in pool.vertices


def test_pool_at_one():
    pool = certificate_pool(S2, 1)
    assert pool.vertices == _inner((1, 0))
    assert positional_vertices(S2, 1) == [Sink(1)]


def test_pool_base3_at_3():
    pool = certificate_pool(S3, 3)
    assert pool.vertices == _inner((3, 1), (3, 0), (2, 0), (1, 0))
    assert len(positional_vertices(S3, 3)) == 3


def test_pool_rejects_zero():
    with pytest.raises(ValueError):
        certificate_pool(S2, 0)


def test_positional_order_is_frozen():
    got = positional_vertices(S2, 8)
    assert got == [Sink(8), Sink(7), Inner(6, 0), Inner(4, 0), Sink(2), Sink(1)]


def test_positional_counts_match_published_rows():
    for upper, size2, size3 in SIZE_ROWS:
        if upper > 3**6:
            break
        assert len(positional_vertices(S2, upper)) == size2
        assert len(positional_vertices(S3, upper)) == size3


def test_positional_at_70():
    assert len(positional_vertices(S2, 70)) == 14
    assert len(positional_vertices(S3, 70)) == 12


@pytest.mark.parametrize(
    "base,start,limit",
    [(2, 5, 512), (3, 3, 512), (4, 4**2 + 1, 4**5), (5, 5**2 + 1, 5**4)],
)
def test_size_law(base, start, limit):
    scheme = SkipList(base)
    for n in range(start, limit + 1):
        assert len(positional_vertices(scheme, n)) == base * generation(scheme, n), n


@pytest.mark.parametrize("base", [2, 3])
def test_pool_reach(base):
    scheme = SkipList(base)
    for n in range(1, 513):
        pool = certificate_pool(scheme, n)
        assert max(v.n for v in pool.vertices) == base ** generation(scheme, n)


@pytest.mark.parametrize("base", [2, 3])
def test_pool_components_cover_union(base):
    scheme = SkipList(base)
    for n in (1, 2, 5, 37, 256, 500):
        pool = certificate_pool(scheme, n)
        assert pool.vertices == frozenset(v for c in pool.components for v in c)


@pytest.mark.parametrize("base", [2, 3])
def test_pool_union_contains_canonical_path(base):
    from skiplog.paths import greedy_path

    scheme = SkipList(base)
    pools = {n: certificate_pool(scheme, n).vertices for n in range(1, 129)}
    for t in range(2, 129):
        for s in range(1, t):
            path = greedy_path(scheme, commit(scheme, t), commit(scheme, s))
            for v in path.vertices:
                assert v in pools[s] or v in pools[t], (s, t, v)


def test_bounded_pool_example():
    pool = bounded_pool(S2, 3, 16)
    assert pool.vertices == _inner(
        (16, 4), (16, 3), (8, 3), (8, 2), (4, 2), (4, 1), (4, 0), (3, 0)
    )
    vertices, chained = bounded_positional_vertices(S2, 3, 16, chained=False)
    assert len(vertices) == 5
    assert not chained


def test_bounded_pool_chained_counts_extra_slot():
    vertices, chained = bounded_positional_vertices(S2, 3, 16, chained=True)
    assert len(vertices) + 1 == 6
    assert chained


def test_bounded_pool_same_generation():
    vertices, _ = bounded_positional_vertices(S2, 12, 16, chained=False)
    assert len(vertices) == 5


def test_bounded_pool_rejects_bad_round():
    with pytest.raises(ValueError):
        bounded_pool(S2, 20, 16)
    with pytest.raises(ValueError):
        bounded_pool(S2, 3, 15)
    with pytest.raises(ValueError):
        bounded_pool(S2, 3, 1)
    with pytest.raises(ValueError):
        bounded_pool(S2, 0, 16)


def test_bounded_pool_at_one_is_stable():
    # Not covered by the round law; frozen as a measured value.
    vertices, _ = bounded_positional_vertices(S2, 1, 16, chained=False)
    assert len(vertices) == 5


@pytest.mark.parametrize("round_length", [16, 64])
def test_bounded_positions_stay_in_round(round_length):
    for n in range(1, round_length + 1):
        pool = bounded_pool(S2, n, round_length)
        assert all(v.n <= round_length for v in pool.vertices)


def test_bounded_round_law_small():
    for round_length in (16, 64):
        t_round = generation(S2, round_length)
        for n in range(2, round_length + 1):
            vertices, _ = bounded_positional_vertices(S2, n, round_length, chained=False)
            assert len(vertices) == t_round + 1, n
