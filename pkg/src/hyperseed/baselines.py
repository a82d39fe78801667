"""Comparison seed selectors: HHD, RD, NP, PageRank, HCI1/HCI2 and a set GA.

Ranking selectors sort by score descending and break ties by ascending
node id. PageRank and HCI work on the clique expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cascade import exact_spread, fitness
from .hypergraph import Hypergraph, HypergraphError
from .swarm import OptimizationResult, rng_stream

TAG_GA = 2


@dataclass(frozen=True)
class SeedSelection:
    method: str
    seeds: tuple[int, ...]  # original ids, ascending
    nodes: tuple[int, ...]  # compacted ids
    exact_spread: int
    approx_fitness: int


def _check_k(h: Hypergraph, k: int) -> None:
    if not 1 <= k <= h.n:
        raise HypergraphError(f"seed-set size k={k} must lie in [1, n={h.n}]")


def top_k(scores: Sequence[float], k: int) -> list[int]:
    return sorted(range(len(scores)), key=lambda v: (-scores[v], v))[:k]


def _selection(method: str, h: Hypergraph, nodes: Sequence[int], p: float) -> SeedSelection:
    nodes = tuple(sorted(nodes))
    return SeedSelection(
        method=method,
        seeds=tuple(sorted(h.to_labels(nodes))),
        nodes=nodes,
        exact_spread=exact_spread(h, nodes, p),
        approx_fitness=fitness(h, nodes, p),
    )


def select_hhd(h: Hypergraph, k: int, p: float = 0.5) -> SeedSelection:
    _check_k(h, k)
    return _selection("hhd", h, top_k(h.hyperdegrees(), k), p)


def select_np(h: Hypergraph, k: int, p: float = 0.5) -> SeedSelection:
    _check_k(h, k)
    return _selection("np", h, top_k(h.degrees(), k), p)


def select_random(h: Hypergraph, k: int, rng=None, p: float = 0.5) -> SeedSelection:
    _check_k(h, k)
    rng = np.random.default_rng(rng)
    return _selection("random", h, rng.choice(h.n, size=k, replace=False).tolist(), p)


def pagerank_scores(
    h: Hypergraph, damping: float = 0.85, iterations: int = 100, tol: float = 1e-10
) -> np.ndarray:
    """Power iteration on the unweighted clique expansion with uniform teleport."""
    if not 0 < damping < 1:
        raise ValueError(f"damping {damping} outside (0, 1)")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    n = h.n
    src, dst = [], []
    for v in range(n):
        for u in h.neighbors(v):
            src.append(v)
            dst.append(u)
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    deg = np.asarray(h.degrees(), dtype=float)
    dangling = deg == 0
    x = np.full(n, 1.0 / n)
    for _ in range(iterations):
        share = np.divide(x, deg, out=np.zeros(n), where=~dangling)
        nxt = np.bincount(dst, weights=share[src], minlength=n)
        nxt = damping * (nxt + x[dangling].sum() / n) + (1.0 - damping) / n
        delta = np.abs(nxt - x).sum()
        x = nxt
        if delta < tol:
            break
    return x


def select_pagerank(
    h: Hypergraph, k: int, damping: float = 0.85, iterations: int = 100, p: float = 0.5
) -> SeedSelection:
    _check_k(h, k)
    return _selection("pagerank", h, top_k(pagerank_scores(h, damping, iterations).tolist(), k), p)


def _sphere(h: Hypergraph, v: int, radius: int) -> set[int]:
    """Nodes at expansion distance exactly ``radius`` from ``v``."""
    seen = {v}
    frontier = {v}
    for _ in range(radius):
        nxt = set()
        for u in frontier:
            nxt.update(h.neighbors(u))
        nxt -= seen
        seen |= nxt
        frontier = nxt
    return frontier


def hci_scores(h: Hypergraph, order: int) -> list[int]:
    """Collective influence (deg(v)-1) * sum over the distance-``order`` sphere of (deg(u)-1)."""
    if order not in (1, 2):
        raise ValueError(f"HCI order must be 1 or 2 (got {order})")
    deg = h.degrees()
    return [
        (deg[v] - 1) * sum(deg[u] - 1 for u in _sphere(h, v, order)) for v in range(h.n)
    ]


def select_hci(h: Hypergraph, k: int, order: int = 1, p: float = 0.5) -> SeedSelection:
    _check_k(h, k)
    return _selection(f"hci{order}", h, top_k(hci_scores(h, order), k), p)


# genetic algorithm ----------------------------------------------------------

@dataclass
class GAConfig:
    k: int = 10
    p: float = 0.5
    max_generations: int = 50
    population: int = 256
    crossover_prob: float = 0.8
    mutation_prob: float = 0.1
    tournament: int = 2
    elitism: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.population < 2 or not 0 <= self.elitism < self.population:
            raise ValueError("GA needs population >= 2 and 0 <= elitism < population")
        if not 0 < self.p <= 1:
            raise ValueError(f"threshold p={self.p} outside (0, 1]")


def _tournament(fits: list[int], size: int, rng) -> int:
    picks = rng.integers(len(fits), size=size)
    best = int(picks[0])
    for i in picks[1:]:
        if fits[i] > fits[best]:
            best = int(i)
    return best


def _mutate(child: list[int], n: int, prob: float, rng) -> list[int]:
    members = set(child)
    if len(members) == n:
        return child
    for j in range(len(child)):
        if rng.random() < prob:
            v = int(rng.integers(n))
            while v in members:
                v = int(rng.integers(n))
            members.discard(child[j])
            members.add(v)
            child[j] = v
    return child


def run_ga(h: Hypergraph, cfg: GAConfig, seed: int | None = None) -> OptimizationResult:
    """Generational GA on k-sets with union crossover and reset mutation.

    Uses the same two-layer fitness and reporting contract as the swarm.
    """
    _check_k(h, cfg.k)
    seed = cfg.seed if seed is None else seed
    n, k, p = h.n, cfg.k, cfg.p

    pop = [rng_stream(seed, TAG_GA, 0, i).choice(n, size=k, replace=False).tolist()
           for i in range(cfg.population)]
    fits = [fitness(h, x, p) for x in pop]
    lead = max(range(len(pop)), key=lambda i: (fits[i], -i))
    best, best_fit = list(pop[lead]), fits[lead]
    history = [best_fit]

    for g in range(1, cfg.max_generations + 1):
        ranked = sorted(range(len(pop)), key=lambda i: (-fits[i], i))
        nxt = [list(pop[i]) for i in ranked[: cfg.elitism]]
        nxt_fits = [fits[i] for i in ranked[: cfg.elitism]]
        for i in range(cfg.population - cfg.elitism):
            rng = rng_stream(seed, TAG_GA, g, i)
            a = pop[_tournament(fits, cfg.tournament, rng)]
            b = pop[_tournament(fits, cfg.tournament, rng)]
            if rng.random() < cfg.crossover_prob:
                union = sorted(set(a) | set(b))
                child = rng.choice(union, size=k, replace=False).tolist()
            else:
                child = list(a)
            child = _mutate(child, n, cfg.mutation_prob, rng)
            nxt.append(child)
            nxt_fits.append(fitness(h, child, p))
        pop, fits = nxt, nxt_fits
        lead = max(range(len(pop)), key=lambda i: (fits[i], -i))
        if fits[lead] > best_fit:
            best, best_fit = list(pop[lead]), fits[lead]
        history.append(best_fit)

    return OptimizationResult(
        seeds=sorted(h.to_labels(best)),
        nodes=best,
        approx_fitness=best_fit,
        exact_spread=exact_spread(h, best, p),
        history=history,
    )
