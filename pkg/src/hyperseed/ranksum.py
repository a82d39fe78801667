"""Two-sided Wilcoxon rank-sum (Mann-Whitney U) test with +/=/- marks."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

EXACT_MAX_N = 12


@dataclass(frozen=True)
class RankSumResult:
    statistic: float  # U of the first sample
    p_value: float
    mark: str
    exact: bool


def midranks(values: Sequence[float]) -> list[float]:
    """1-based ranks; tied values share the mean of their positions."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        r = (i + j) / 2 + 1
        for t in range(i, j + 1):
            ranks[order[t]] = r
        i = j + 1
    return ranks


def _exact_p(u: float, n1: int, n2: int) -> float:
    # enumerate every placement of the first sample's ranks among 1..N
    total = 0
    le = ge = 0
    offset = n1 * (n1 + 1) / 2
    for combo in itertools.combinations(range(1, n1 + n2 + 1), n1):
        ui = sum(combo) - offset
        total += 1
        le += ui <= u
        ge += ui >= u
    return min(1.0, 2 * min(le, ge) / total)


def _normal_p(u: float, n1: int, n2: int, ranks: list[float]) -> float:
    n = n1 + n2
    counts: dict[float, int] = {}
    for r in ranks:
        counts[r] = counts.get(r, 0) + 1
    ties = sum(t**3 - t for t in counts.values())
    var = n1 * n2 / 12 * ((n + 1) - ties / (n * (n - 1)))
    if var <= 0:
        return 1.0
    z = max(0.0, abs(u - n1 * n2 / 2) - 0.5) / math.sqrt(var)
    return min(1.0, math.erfc(z / math.sqrt(2)))


def wilcoxon_rank_sum(a: Sequence[float], b: Sequence[float], alpha: float = 0.05) -> RankSumResult:
    """Compare ``a`` (reference) against ``b``.

    Small tie-free samples (``len(a) + len(b) <= 12``) use the exact null
    distribution, everything else the normal approximation with tie and
    continuity correction. The mark is ``+`` when ``a`` has the larger mean
    and the difference is significant, ``-`` for the reverse, ``=``
    otherwise.
    """
    n1, n2 = len(a), len(b)
    if n1 < 2 or n2 < 2:
        raise ValueError(f"rank-sum test needs at least 2 values per sample (got {n1}, {n2})")
    pooled = list(a) + list(b)
    ranks = midranks(pooled)
    u = sum(ranks[:n1]) - n1 * (n1 + 1) / 2
    exact = n1 + n2 <= EXACT_MAX_N and len(set(pooled)) == len(pooled)
    p = _exact_p(u, n1, n2) if exact else _normal_p(u, n1, n2, ranks)
    mean_a, mean_b = sum(a) / n1, sum(b) / n2
    if p < alpha and mean_a > mean_b:
        mark = "+"
    elif p < alpha and mean_a < mean_b:
        mark = "-"
    else:
        mark = "="
    return RankSumResult(u, p, mark, exact)
