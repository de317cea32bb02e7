"""Certificate pools and positional certificates at the vertex level.

A pool is a per-position vertex set with the property that the union of
two pools contains the canonical path between their commits; the labels
of a pool's exclusive out-neighborhood are what a participant stores to
later prove orderings.  Pools are rebuilt per query: they are O(log n)
sized and never persisted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .paths import greedy_path
from .skipgraph import (
    Inner,
    SkipList,
    Vertex,
    _neighbors,
    commit,
    generation,
    vertebra,
)

Component = tuple[Inner, ...]


@dataclass(frozen=True)
class CertPool:
    """Union of the three canonical sub-paths anchoring position n."""

    scheme: SkipList
    n: int
    vertices: frozenset[Inner]
    components: tuple[Component, Component, Component]


@dataclass(frozen=True)
class BoundedPool:
    """Pool truncated at the top vertex of a round of length N."""

    scheme: SkipList
    n: int
    round_length: int
    vertices: frozenset[Inner]
    components: tuple[Component, ...]


def certificate_pool(scheme: SkipList, n: int) -> CertPool:
    """Pool of n: apex-to-commit, commit-to-previous-apex, apex chain down.

    With t the generation of n, the components are the greedy paths
    A = vertebra(t) -> commit(n), B = commit(n) -> vertebra(t-1) and
    C = vertebra(t-1) -> (1,0); for n = 1 the pool is just {(1,0)}.
    """
    if n < 1:
        raise ValueError(f"position must be >= 1, got {n}")
    t = generation(scheme, n)
    if t == 0:
        one = commit(scheme, 1)
        components = ((one,), (), ())
    else:
        target = commit(scheme, n)
        a = greedy_path(scheme, vertebra(scheme, t), target).vertices
        b = greedy_path(scheme, target, vertebra(scheme, t - 1)).vertices
        c = greedy_path(scheme, vertebra(scheme, t - 1), commit(scheme, 1)).vertices
        components = (a, b, c)
    vertices = frozenset(v for comp in components for v in comp)
    return CertPool(scheme, n, vertices, components)


def _exclusive_neighborhood(
    scheme: SkipList,
    components: tuple[Component, ...],
    vertices: frozenset[Inner],
) -> list[Vertex]:
    """Out-neighbors of pool vertices outside the pool.

    Ordered by first occurrence when traversing the components in
    construction order, each front to back, neighbors in canonical
    order; this fixed order makes serialized certificates
    byte-reproducible.
    """
    seen: set[Vertex] = set()
    out: list[Vertex] = []
    for comp in components:
        for v in comp:
            for u in _neighbors(scheme, v):
                if u not in vertices and u not in seen:
                    seen.add(u)
                    out.append(u)
    return out


def positional_vertices(scheme: SkipList, n: int) -> list[Vertex]:
    """Exclusive out-neighborhood of the pool of n, in certificate order."""
    pool = certificate_pool(scheme, n)
    return _exclusive_neighborhood(scheme, pool.components, pool.vertices)


def bounded_pool(scheme: SkipList, n: int, round_length: int) -> BoundedPool:
    """Pool of n inside a round of length N = base**T.

    The commit-to-previous-apex component stops one vertex early (at s),
    so the previous apex itself joins the out-neighborhood.  N must be an
    exact power of the base; other round lengths are rejected rather than
    approximated.
    """
    if n < 1:
        raise ValueError(f"position must be >= 1, got {n}")
    big_t = generation(scheme, round_length)
    if round_length != scheme.base**big_t or big_t < 1:
        raise ValueError(
            f"round length {round_length} is not a positive power of base {scheme.base}"
        )
    if n > round_length:
        raise ValueError(f"position {n} exceeds round length {round_length}")
    top = vertebra(scheme, big_t)
    target = commit(scheme, n)
    t = generation(scheme, n)
    if t == 0:
        components: tuple[Component, ...] = (greedy_path(scheme, top, target).vertices,)
    else:
        b_full = greedy_path(scheme, target, vertebra(scheme, t - 1)).vertices
        b_prime = b_full[:-1]
        if t == big_t:
            components = (greedy_path(scheme, top, target).vertices, b_prime)
        else:
            mid = vertebra(scheme, t)
            components = (
                greedy_path(scheme, top, mid).vertices,
                greedy_path(scheme, mid, target).vertices,
                b_prime,
            )
    vertices = frozenset(v for comp in components for v in comp)
    return BoundedPool(scheme, n, round_length, vertices, components)


def bounded_positional_vertices(
    scheme: SkipList, n: int, round_length: int, chained: bool
) -> tuple[list[Vertex], bool]:
    """Out-neighborhood of the bounded pool, plus the chain-slot flag.

    When chained, one extra slot is reserved for the previous round's
    digest; the slot counts toward the certificate size but carries no
    vertex.
    """
    pool = bounded_pool(scheme, n, round_length)
    neighborhood = _exclusive_neighborhood(scheme, pool.components, pool.vertices)
    return neighborhood, chained
