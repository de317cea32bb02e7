"""The flat binary linking scheme and its correspondence to SkipList(2).

``g`` and ``f2`` drive the AntimonotoneBinary scheme.  ``slls2_to_ls2``
and ``ls2_to_slls2`` translate between SkipList(2) vertices and the flat
numbering in which vertex m is reached by a longest path of m vertices;
they are computed by independent means (dynamic programming forward,
prefix-sum arithmetic backward) so that round-trip tests carry weight.
"""

from __future__ import annotations

from .skipgraph import Inner, SkipList, maxpow, out_neighbors, vertex_valid

_SLLS2 = SkipList(2)

# Longest-path tables are bounded; positions beyond this are rejected.
_POSITION_BOUND = 1 << 16

_longest_memo: dict[Inner, int] = {}


def g(n: int) -> int:
    """Recursive block index: g(2**k - 1) = k, shifted copies elsewhere."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    while True:
        k = n.bit_length()  # smallest k with n <= 2**k - 1
        if n == (1 << k) - 1:
            return k
        n -= (1 << (k - 1)) - 1


def f2(n: int) -> int:
    """Jump target of vertex n in the flat binary scheme."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    k = n.bit_length()
    if n == (1 << k) - 1:
        return n - ((1 << (k - 1)) + 1)
    return n - (1 << g(n))


def slls2_to_ls2(v: Inner) -> int:
    """Number of vertices on the longest path from v to (1, 0) in SkipList(2).

    Memoized dynamic programming over the implicit graph; positions are
    capped at 2**16 to bound the table.
    """
    if not vertex_valid(_SLLS2, v):
        raise ValueError(f"invalid SkipList(2) vertex {v!r}")
    if v.n > _POSITION_BOUND:
        raise ValueError(f"position {v.n} exceeds the mapping bound {_POSITION_BOUND}")
    stack = [v]
    while stack:
        u = stack[-1]
        if u in _longest_memo:
            stack.pop()
            continue
        deps = [w for w in out_neighbors(_SLLS2, u) if isinstance(w, Inner)]
        pending = [w for w in deps if w not in _longest_memo]
        if pending:
            stack.extend(pending)
            continue
        _longest_memo[u] = 1 + max((_longest_memo[w] for w in deps), default=0)
        stack.pop()
    return _longest_memo[v]


def ls2_to_slls2(m: int) -> Inner:
    """Inverse of :func:`slls2_to_ls2`.

    Vertex m sits at the position n whose cumulative vertex count first
    reaches m; the layer is the remaining offset, i.e. the number of
    leading descend steps on the longest path from m.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    total = 0
    n = 0
    while total < m:
        n += 1
        if n > _POSITION_BOUND:
            raise ValueError(f"m={m} exceeds the mapping bound")
        total += maxpow(2, n) + 1
    k = m - (total - maxpow(2, n) - 1) - 1
    return Inner(n, k)


def antimonotone_violations(limit: int, max_report: int = 16) -> list[tuple[int, int]]:
    """Pairs n < m <= limit with f2(n) < f2(m).

    The flat scheme's jump function is often described as never growing;
    this scans for counterexamples instead of assuming the property and
    returns the first few found.
    """
    found: list[tuple[int, int]] = []
    min_arg, min_val = 2, f2(2)
    for m in range(3, limit + 1):
        fm = f2(m)
        if fm > min_val:
            found.append((min_arg, m))
            if len(found) >= max_report:
                break
        if fm < min_val:
            min_arg, min_val = m, fm
    return found
