"""Synthetic hypergraph families: Erdos-Renyi, scale-free and k-uniform.

All generators are pure functions of their arguments and an rng (a
``numpy.random.Generator`` or anything ``numpy.random.default_rng`` accepts).
Nodes that end up in no hyperedge vanish at compaction, so ``h.n`` may be
smaller than the requested ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, HypergraphError

FAMILIES = ("ER", "SF", "KUF")


class GeneratorError(HypergraphError):
    pass


def gen_er(n: int, m: int, mean_size: float, rng=None) -> Hypergraph:
    """Each edge gets a Poisson(mean_size) size clipped to [2, n], members uniform."""
    if n < 2 or m < 1:
        raise GeneratorError(f"need n >= 2 and m >= 1 (got n={n}, m={m})")
    if mean_size < 2:
        raise GeneratorError(f"mean edge size must be >= 2 (got {mean_size})")
    rng = np.random.default_rng(rng)
    sizes = np.clip(rng.poisson(mean_size, size=m), 2, n)
    edges = [rng.choice(n, size=int(s), replace=False).tolist() for s in sizes]
    return Hypergraph.from_hyperedges(edges)


def powerlaw_hyperdegrees(n: int, exponent: float, rng) -> np.ndarray:
    """Draw ``n`` values from P(k) proportional to k**exponent on 1..n-1."""
    ks = np.arange(1, max(n, 2), dtype=float)
    w = ks**exponent
    return rng.choice(ks.astype(np.int64), size=n, p=w / w.sum())


def gen_sf(n: int, m: int, exponent: float, rng=None) -> Hypergraph:
    """Stub matching on power-law hyperdegrees into ``m`` near-equal edges.

    A stub that would repeat a node inside its edge is swapped with a random
    later stub; if no later stub fits, a node drawn in proportion to its
    target hyperdegree takes the slot. Hyperdegrees above ``m`` are not
    reachable, so their surplus is redistributed that way.
    """
    if n < 2 or m < 1:
        raise GeneratorError(f"need n >= 2 and m >= 1 (got n={n}, m={m})")
    if exponent >= 0:
        raise GeneratorError(f"power-law exponent must be negative (got {exponent})")
    rng = np.random.default_rng(rng)
    degrees = powerlaw_hyperdegrees(n, exponent, rng)
    total = int(degrees.sum())
    if total < 2 * m:
        raise GeneratorError(f"{total} membership stubs cannot fill {m} edges of size >= 2")
    base, extra = divmod(total, m)
    if base + (extra > 0) > n:
        raise GeneratorError(f"edge size {base + 1} exceeds n={n}")
    stubs = np.repeat(np.arange(n), degrees)
    rng.shuffle(stubs)
    stubs = stubs.tolist()

    edges = []
    pos = 0
    for e in range(m):
        size = base + (1 if e < extra else 0)
        members: set[int] = set()
        while len(members) < size:
            v = stubs[pos]
            if v in members:
                for _ in range(32):
                    j = int(rng.integers(pos, total))
                    if stubs[j] not in members:
                        stubs[pos], stubs[j] = stubs[j], stubs[pos]
                        v = stubs[pos]
                        break
                else:
                    # overflow goes to a stub-weighted node, preserving the degree shape
                    while v in members:
                        v = stubs[int(rng.integers(total))]
            members.add(v)
            pos += 1
        edges.append(sorted(members))
    return Hypergraph.from_hyperedges(edges)


def gen_kuniform(n: int, m: int, k_u: int, rng=None) -> Hypergraph:
    if not 2 <= k_u <= n:
        raise GeneratorError(f"uniform edge size {k_u} must lie in [2, n={n}]")
    if m < 1:
        raise GeneratorError(f"need m >= 1 (got {m})")
    rng = np.random.default_rng(rng)
    edges = [rng.choice(n, size=k_u, replace=False).tolist() for _ in range(m)]
    return Hypergraph.from_hyperedges(edges)


@dataclass(frozen=True)
class GeneratorSpec:
    """One synthetic graph recipe.

    ``feature`` is the family parameter: mean edge size for ER, the
    power-law exponent for SF and the uniform edge size for KUF.
    """

    family: str
    n: int
    m: int
    feature: float
    rng_seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GeneratorError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 2 or self.m < 1:
            raise GeneratorError(f"need n >= 2 and m >= 1 (got n={self.n}, m={self.m})")

    def build(self) -> Hypergraph:
        rng = np.random.default_rng(self.rng_seed)
        if self.family == "ER":
            return gen_er(self.n, self.m, self.feature, rng)
        if self.family == "SF":
            return gen_sf(self.n, self.m, self.feature, rng)
        if int(self.feature) != self.feature:
            raise GeneratorError(f"KUF edge size must be an integer (got {self.feature})")
        return gen_kuniform(self.n, self.m, int(self.feature), rng)

    @property
    def name(self) -> str:
        return f"{self.family}-{self.n}-{self.m}-{self.feature:g}"

    def provenance(self) -> str:
        return (
            f"spec: family={self.family} n={self.n} m={self.m} "
            f"feature={self.feature:g} seed={self.rng_seed}"
        )
