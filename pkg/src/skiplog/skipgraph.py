"""Vertices and implicit adjacency of the supported linking schemes.

The graph is never materialized.  Adjacency is computed on demand from
integer arithmetic, so positions up to 2**64 stay addressable and every
query costs O(log n).  All positions and layers are exact integers; no
floating point is used anywhere (ceil-log via floats misclassifies near
powers).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple


class Inner(NamedTuple):
    """Inner vertex at position ``n`` (>= 1) and layer ``k`` (>= 0)."""

    n: int
    k: int

    def __repr__(self) -> str:
        return f"({self.n},{self.k})"


class Sink(NamedTuple):
    """Leaf vertex carrying the hash of the n-th appended item."""

    n: int

    def __repr__(self) -> str:
        return f"sink({self.n})"


Vertex = Inner | Sink


@dataclass(frozen=True)
class Linear:
    """Chain scheme: commit n links to commit n-1 and to its sink."""


@dataclass(frozen=True)
class SkipList:
    """Deterministic base-b skip list with retargeted horizontal links."""

    base: int

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError(f"skip list base must be >= 2, got {self.base}")


@dataclass(frozen=True)
class AntimonotoneBinary:
    """Flat scheme with edges n -> n-1 and n -> f2(n)."""


Scheme = Linear | SkipList | AntimonotoneBinary


def maxpow(base: int, n: int) -> int:
    """Largest p such that base**p divides n."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if base == 2:
        return (n & -n).bit_length() - 1
    p = 0
    while n % base == 0:
        n //= base
        p += 1
    return p


_pow_cache: dict[tuple[int, int], int] = {}


def _pow(base: int, k: int) -> int:
    key = (base, k)
    cached = _pow_cache.get(key)
    if cached is None:
        cached = _pow_cache[key] = base**k
    return cached


def _top(base: int, n: int) -> Inner:
    """Topmost vertex of position n."""
    return Inner(n, maxpow(base, n))


def vertex_valid(scheme: Scheme, v: Vertex) -> bool:
    """Whether v belongs to the scheme's vertex set."""
    if isinstance(v, Sink):
        return v.n >= 1
    if v.n < 1 or v.k < 0:
        return False
    if isinstance(scheme, SkipList):
        return v.n % _pow(scheme.base, v.k) == 0
    return v.k == 0


@lru_cache(maxsize=1 << 20)
def _neighbors(scheme: Scheme, v: Vertex) -> tuple[Vertex, ...]:
    if not vertex_valid(scheme, v):
        raise ValueError(f"invalid vertex {v!r} for scheme {scheme!r}")
    if isinstance(v, Sink):
        return ()
    if isinstance(scheme, SkipList):
        b = scheme.base
        down: Vertex = Inner(v.n, v.k - 1) if v.k > 0 else Sink(v.n)
        step = _pow(b, v.k)
        if b >= 3 and v.k >= 1 and v.n == step:
            # Generation apex links to the previous apex.  Without this
            # edge the certificate pools of bases >= 3 lose their
            # b*ceil(log_b n) out-neighborhood bound.
            return (down, Inner(step // b, v.k - 1))
        if v.n - step >= 1:
            return (down, _top(b, v.n - step))
        return (down,)
    if isinstance(scheme, Linear):
        if v.n > 1:
            return (Inner(v.n - 1, 0), Sink(v.n))
        return (Sink(v.n),)
    # AntimonotoneBinary
    from .antimonotone import f2

    if v.n == 1:
        return (Sink(v.n),)
    out: tuple[Vertex, ...] = (Inner(v.n - 1, 0),)
    target = f2(v.n)
    if target >= 1 and target != v.n - 1:
        out += (Inner(target, 0),)
    return out + (Sink(v.n),)


def out_neighbors(scheme: Scheme, v: Vertex) -> list[Vertex]:
    """Out-neighbors of v in canonical order.

    The returned order is the one used for hashing everywhere: the
    descend/sink edge comes first, jump edges after it.  Sinks have no
    out-neighbors.
    """
    return list(_neighbors(scheme, v))


def commit(scheme: Scheme, n: int) -> Inner:
    """The unique parent of sink n; its label authenticates the prefix."""
    if n < 1:
        raise ValueError(f"position must be >= 1, got {n}")
    return Inner(n, 0)


def generation(scheme: SkipList, n: int) -> int:
    """ceil(log_base(n)), exactly: the smallest t with base**t >= n."""
    if n < 1:
        raise ValueError(f"position must be >= 1, got {n}")
    t, p = 0, 1
    while p < n:
        p *= scheme.base
        t += 1
    return t


def vertebra(scheme: SkipList, t: int) -> Inner:
    """The vertex (base**t, t) anchoring generation t."""
    if t < 0:
        raise ValueError(f"generation must be >= 0, got {t}")
    return Inner(_pow(scheme.base, t), t)
