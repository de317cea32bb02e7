"""Quantitative reports: certificate-size tables, graph statistics, ratios.

Everything here computes from the structural pools in O(log n) per entry,
never by search, so the full table up to 2**33 renders in well under a
second.  Reports come in three flavors: plain text, CSV, and matplotlib
figures written next to the delimited output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .antimonotone import antimonotone_violations
from .pools import positional_vertices
from .skipgraph import Inner, Sink, SkipList, generation, maxpow, out_neighbors

MAX_TABLE_POSITION = 1 << 33

_SLLS2 = SkipList(2)
_SLLS3 = SkipList(3)


@dataclass(frozen=True)
class SizeTableRow:
    """Certificate sizes for all positions in (previous upper_n, upper_n]."""

    upper_n: int
    size_base2: int
    size_base3: int


def _boundaries(max_position: int) -> list[int]:
    bounds = {1}
    for base in (2, 3):
        p = base
        while p <= max_position:
            bounds.add(p)
            p *= base
    return sorted(bounds)


def size_table(max_position: int) -> list[SizeTableRow]:
    """Positional-certificate sizes at every range boundary up to max_position.

    Boundaries are the powers of 2 and 3 interleaved; sizes are constant
    on each range, so the boundary itself represents the range.
    """
    if max_position < 1:
        raise ValueError(f"max_position must be >= 1, got {max_position}")
    if max_position > MAX_TABLE_POSITION:
        raise ValueError(f"max_position must be <= 2**33, got {max_position}")
    rows = []
    for upper in _boundaries(max_position):
        rows.append(
            SizeTableRow(
                upper,
                len(positional_vertices(_SLLS2, upper)),
                len(positional_vertices(_SLLS3, upper)),
            )
        )
    return rows


def size_table_csv(rows: list[SizeTableRow]) -> str:
    lines = ["upper_n,slls2,slls3"]
    lines.extend(f"{r.upper_n},{r.size_base2},{r.size_base3}" for r in rows)
    return "\n".join(lines) + "\n"


def size_table_text(rows: list[SizeTableRow]) -> str:
    lines = [f"{'n <=':>12}  {'base 2':>6}  {'base 3':>6}"]
    lines.extend(
        f"{r.upper_n:>12}  {r.size_base2:>6}  {r.size_base3:>6}" for r in rows
    )
    return "\n".join(lines) + "\n"


def scheme_stats(scheme: SkipList, n: int) -> dict[str, int]:
    """Exact vertex/edge/out-degree counts for positions <= n, sinks included."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > 1 << 20:
        raise ValueError(f"n must be <= 2**20, got {n}")
    vertex_count = n  # sinks
    edge_count = 0
    max_out_degree = 0
    for pos in range(1, n + 1):
        for layer in range(maxpow(scheme.base, pos) + 1):
            vertex_count += 1
            degree = len(out_neighbors(scheme, Inner(pos, layer)))
            edge_count += degree
            if degree > max_out_degree:
                max_out_degree = degree
    return {
        "vertex_count": vertex_count,
        "edge_count": edge_count,
        "max_out_degree": max_out_degree,
    }


def _floor_log(base: int, x: int) -> int:
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    t, p = 0, 1
    while p * base <= x:
        p *= base
        t += 1
    return t


def summary_sizes(n: int) -> dict[str, int]:
    """Closed-form positional-certificate label counts of the surveyed schemes."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ceil2 = generation(_SLLS2, n)
    ceil3 = generation(_SLLS3, n)
    return {
        "linear": n,
        "simple_antimonotone": 5 * _floor_log(2, n) - 3,
        "optimal_antimonotone": 7 * _floor_log(3, 2 * n) - 4,
        "threaded_auth_tree": 2 * ceil2,
        "hypercore": 2 * ceil2,
        "transparency_log": 2 * ceil2,
        "slls2": 2 * ceil2,
        "slls3": 3 * ceil3,
    }


ASYMPTOTIC_RATIO = math.log(8) / math.log(9)


def ratio_report(sample_positions: list[int]) -> dict[str, object]:
    """Base-3 to base-2 certificate-size ratios plus the asymptotic constant."""
    ratios = []
    for n in sample_positions:
        if n < 2:
            raise ValueError(f"positions must be >= 2, got {n}")
        ratios.append(
            (n, (3 * generation(_SLLS3, n)) / (2 * generation(_SLLS2, n)))
        )
    return {"ratios": ratios, "asymptotic": ASYMPTOTIC_RATIO}


def flat_scheme_findings(limit: int = 1 << 14) -> dict[str, object]:
    """Empirical check of the flat scheme's jump-monotonicity claim.

    The claim "n < m implies f2(n) >= f2(m)" does not survive contact
    with the formula; the first counterexamples are reported here rather
    than patched away.
    """
    violations = antimonotone_violations(limit)
    return {
        "limit": limit,
        "holds": not violations,
        "counterexamples": violations,
    }


def render_size_figure(rows: list[SizeTableRow], path: str) -> None:
    """Plot certificate sizes and their ratio; writes a PNG next to the CSV."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [r.upper_n for r in rows]
    s2 = [r.size_base2 for r in rows]
    s3 = [r.size_base3 for r in rows]
    fig, (ax_sizes, ax_ratio) = plt.subplots(
        2, 1, figsize=(7.0, 6.0), sharex=True, height_ratios=[2, 1]
    )
    ax_sizes.step(xs, s2, where="post", label="base 2", color="tab:blue")
    ax_sizes.step(xs, s3, where="post", label="base 3", color="tab:green")
    ax_sizes.set_xscale("log", base=2)
    ax_sizes.set_ylabel("certificate labels")
    ax_sizes.legend(loc="upper left")
    ax_sizes.grid(True, which="both", alpha=0.3)

    ratio = [b3 / b2 for b2, b3 in zip(s2, s3)]
    ax_ratio.step(xs, ratio, where="post", color="tab:red", label="base 3 / base 2")
    ax_ratio.axhline(ASYMPTOTIC_RATIO, color="gray", linestyle="--", linewidth=1,
                     label=f"ln 8 / ln 9 = {ASYMPTOTIC_RATIO:.4f}")
    ax_ratio.set_xlabel("sequence length n (range upper bounds)")
    ax_ratio.set_ylabel("size ratio")
    ax_ratio.legend(loc="upper right")
    ax_ratio.grid(True, which="both", alpha=0.3)

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
