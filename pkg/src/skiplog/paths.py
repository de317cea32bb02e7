"""Canonical shortest paths on the implicit graph, plus a BFS oracle.

The greedy path is THE canonical path used by pools, certificates and
verification; verifiers recompute it from endpoints alone, so no path
data ever travels on the wire.  Its length is oracle-checked against
breadth-first search in the test suite rather than assumed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .skipgraph import (
    AntimonotoneBinary,
    Inner,
    Linear,
    Scheme,
    Sink,
    SkipList,
    Vertex,
    _neighbors,
    out_neighbors,
    vertex_valid,
)

# BFS explores the whole downward cone of its source; cap it.
BFS_POSITION_BOUND = 1 << 20


@dataclass(frozen=True)
class Path:
    """Vertex sequence whose consecutive pairs are edges."""

    scheme: Scheme
    vertices: tuple[Vertex, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("a path has at least one vertex")

    @property
    def edge_count(self) -> int:
        return len(self.vertices) - 1

    def validate(self) -> None:
        """Check every consecutive pair against out_neighbors."""
        for v, u in zip(self.vertices, self.vertices[1:]):
            if u not in out_neighbors(self.scheme, v):
                raise ValueError(f"{v!r} -> {u!r} is not an edge")


def _jump(scheme: SkipList, v: Inner) -> Inner | None:
    neighbors = _neighbors(scheme, v)
    if len(neighbors) > 1:
        u = neighbors[1]
        assert isinstance(u, Inner)
        return u
    return None


def greedy_path(scheme: SkipList, src: Inner, dst: Inner) -> Path:
    """Canonical path from src down to dst.

    From src: descend once the position matches dst, otherwise jump
    whenever the jump does not overshoot dst's position, otherwise
    descend.  The result is a true shortest path (oracle-checked
    invariant), and position never increases along it.
    """
    for v in (src, dst):
        if not vertex_valid(scheme, v) or not isinstance(v, Inner):
            raise ValueError(f"invalid vertex {v!r}")
    if dst.n > src.n or (dst.n == src.n and dst.k > src.k):
        raise ValueError(f"{dst!r} is not reachable from {src!r}")
    cur = src
    verts = [cur]
    while cur != dst:
        if cur.n == dst.n:
            cur = Inner(cur.n, cur.k - 1)
        else:
            jump = _jump(scheme, cur)
            if jump is not None and jump.n >= dst.n:
                cur = jump
            else:
                cur = Inner(cur.n, cur.k - 1)
        verts.append(cur)
    return Path(scheme, tuple(verts))


def bfs_path(scheme: Scheme, src: Vertex, dst: Vertex) -> Path | None:
    """True shortest path by breadth-first search, or None if unreachable.

    Ties are broken by canonical neighbor order (descend explored before
    jump).  Positions are capped at 2**20 to bound the search.
    """
    for v in (src, dst):
        if not vertex_valid(scheme, v):
            raise ValueError(f"invalid vertex {v!r}")
        if v.n > BFS_POSITION_BOUND:
            raise ValueError(f"position {v.n} exceeds BFS bound {BFS_POSITION_BOUND}")
    if src == dst:
        return Path(scheme, (src,))
    parent: dict[Vertex, Vertex] = {src: src}
    queue: deque[Vertex] = deque([src])
    while queue:
        v = queue.popleft()
        for u in _neighbors(scheme, v):
            if u in parent:
                continue
            parent[u] = v
            if u == dst:
                back = [u]
                while back[-1] != src:
                    back.append(parent[back[-1]])
                return Path(scheme, tuple(reversed(back)))
            queue.append(u)
    return None


def bfs_distances(scheme: Scheme, src: Vertex) -> dict[Vertex, int]:
    """Edge-count distances from src to every reachable vertex."""
    if not vertex_valid(scheme, src):
        raise ValueError(f"invalid vertex {src!r}")
    if src.n > BFS_POSITION_BOUND:
        raise ValueError(f"position {src.n} exceeds BFS bound {BFS_POSITION_BOUND}")
    dist = {src: 0}
    queue: deque[Vertex] = deque([src])
    while queue:
        v = queue.popleft()
        for u in _neighbors(scheme, v):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def canonical_path(scheme: Scheme, src: Inner, dst: Inner) -> Path:
    """Deterministic path from src to dst for any scheme.

    SkipList uses the greedy rule; Linear is a plain descent; the flat
    binary scheme falls back to BFS (bounded positions).
    """
    if isinstance(scheme, SkipList):
        return greedy_path(scheme, src, dst)
    if isinstance(scheme, Linear):
        if src.k != 0 or dst.k != 0 or dst.n > src.n:
            raise ValueError(f"{dst!r} is not reachable from {src!r}")
        return Path(scheme, tuple(Inner(n, 0) for n in range(src.n, dst.n - 1, -1)))
    path = bfs_path(scheme, src, dst)
    if path is None:
        raise ValueError(f"{dst!r} is not reachable from {src!r}")
    return path


def off_path_out_neighbors(
    scheme: Scheme, path: Path, exclude_final_vertex: bool
) -> list[Vertex]:
    """Out-neighbors of path vertices that are not on the path.

    Walks the path front to back (skipping the final vertex's neighbors
    when asked), emits each vertex's canonical out-neighbors that lie off
    the path, deduplicated in first-occurrence order.  This is the
    deterministic label order for certificates.
    """
    on_path = set(path.vertices)
    verts = path.vertices[:-1] if exclude_final_vertex else path.vertices
    seen: set[Vertex] = set()
    out: list[Vertex] = []
    for v in verts:
        for u in _neighbors(scheme, v):
            if u not in on_path and u not in seen:
                seen.add(u)
                out.append(u)
    return out
