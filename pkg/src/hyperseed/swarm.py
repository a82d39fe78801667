"""Discrete particle swarm for seed-set selection (HDPSO) and its ablations.

A particle's position is a list of ``k`` distinct node ids and its velocity
a list of ``k`` bits (1 = replace this slot). Variants:

* ``HDPSO``    degree-biased initialization plus neighbor local search
* ``PSO_INIT`` degree-biased initialization only
* ``PSO``      uniform random initialization only

Randomness for particle ``i`` in generation ``g`` comes from its own stream
derived from ``(seed, g, i)``, so results do not depend on evaluation order.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .cascade import exact_spread, fitness
from .hypergraph import Hypergraph, HypergraphError

VARIANTS = ("HDPSO", "PSO", "PSO_INIT")

# stream tags keep the per-purpose rng families disjoint
TAG_PARTICLE = 0
TAG_SELECT = 1


def rng_stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed % 2**64, *key]))


@dataclass
class OptimizerConfig:
    k: int = 10
    p: float = 0.5
    max_generations: int = 50
    population: int = 256
    c1: float = 1.2
    c2: float = 1.2
    w: float = 0.7
    tau: float = 1.5
    local_fraction: float = 0.1
    local_element_prob: float = 0.2
    variant: str = "HDPSO"
    seed: int = 0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0 < self.p <= 1:
            raise ValueError(f"threshold p={self.p} outside (0, 1]")
        if self.population < 1 or self.max_generations < 0:
            raise ValueError("population must be >= 1 and max_generations >= 0")
        if not 0 <= self.local_fraction <= 1 or not 0 <= self.local_element_prob <= 1:
            raise ValueError("local-search fractions must lie in [0, 1]")

    @property
    def local_search_count(self) -> int:
        return math.ceil(round(self.local_fraction * self.population, 9))


@dataclass
class Particle:
    position: list[int]
    velocity: list[int]
    pbest: list[int]
    pbest_fitness: int
    fitness: int = 0


@dataclass
class OptimizationResult:
    seeds: list[int]  # original node ids, ascending
    nodes: list[int]  # compacted ids, in gbest slot order
    approx_fitness: int
    exact_spread: int
    history: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        del d["nodes"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _check_k(h: Hypergraph, k: int) -> None:
    if k > h.n:
        raise HypergraphError(f"seed-set size k={k} exceeds n={h.n}")


# initialization -----------------------------------------------------------

def degree_biased_position(degrees: np.ndarray, k: int, rng: np.random.Generator) -> list[int]:
    # xi in (0.5, 1.0]; stable sort keeps ascending id among equal scores
    xi = 1.0 - 0.5 * rng.random(len(degrees))
    order = np.argsort(-(degrees * xi), kind="stable")
    return order[:k].tolist()


def random_position(n: int, k: int, rng: np.random.Generator) -> list[int]:
    return rng.choice(n, size=k, replace=False).tolist()


def init_degree_biased(h: Hypergraph, k: int, population: int, rng=None) -> list[list[int]]:
    """Score nodes by degree times a fresh U(0.5, 1] factor; keep the top ``k``."""
    _check_k(h, k)
    rng = np.random.default_rng(rng)
    degrees = np.asarray(h.degrees(), dtype=float)
    return [degree_biased_position(degrees, k, rng) for _ in range(population)]


def init_random(h: Hypergraph, k: int, population: int, rng=None) -> list[list[int]]:
    _check_k(h, k)
    rng = np.random.default_rng(rng)
    return [random_position(h.n, k, rng) for _ in range(population)]


# update rules -------------------------------------------------------------

def guidance_mask(position: Sequence[int], best: Sequence[int]) -> list[int]:
    """0 where the slot's node also appears in ``best``, 1 otherwise."""
    members = set(best)
    return [0 if x in members else 1 for x in position]


def guidance_sum(
    velocity: Sequence[int],
    pbest_mask: Sequence[int],
    gbest_mask: Sequence[int],
    w: float,
    a1: float,
    a2: float,
) -> list[float]:
    return [w * v + a1 * mp + a2 * mg for v, mp, mg in zip(velocity, pbest_mask, gbest_mask)]


def binarize(values: Sequence[float], tau: float) -> list[int]:
    return [1 if u >= tau else 0 for u in values]


def update_velocity(particle: Particle, gbest: Sequence[int], cfg: OptimizerConfig, rng) -> list[int]:
    r1, r2 = rng.random(2)
    u = guidance_sum(
        particle.velocity,
        guidance_mask(particle.position, particle.pbest),
        guidance_mask(particle.position, gbest),
        cfg.w,
        cfg.c1 * r1,
        cfg.c2 * r2,
    )
    return binarize(u, cfg.tau)


def update_position(particle: Particle, h: Hypergraph, rng) -> list[int]:
    """Replace every slot flagged in the velocity with a uniform node.

    The draw for slot ``j`` excludes the nodes held by the other slots at
    that moment, so the position stays duplicate free.
    """
    n = h.n
    pos = list(particle.position)
    occupied = set(pos)
    for j, flag in enumerate(particle.velocity):
        if not flag:
            continue
        others = occupied - {pos[j]}
        if len(others) * 2 < n:
            v = int(rng.integers(n))
            while v in others:
                v = int(rng.integers(n))
        else:
            pool = [u for u in range(n) if u not in others]
            v = pool[int(rng.integers(len(pool)))]
        occupied.discard(pos[j])
        occupied.add(v)
        pos[j] = v
    return pos


def local_search(position: Sequence[int], h: Hypergraph, cfg: OptimizerConfig, rng) -> list[int]:
    """Greedy neighbor substitution.

    Each slot is tried with probability ``cfg.local_element_prob``; the
    candidates are the neighbors of the node sitting in the slot when the
    slot is reached, in ascending order. A swap is kept only when the
    fitness strictly increases.
    """
    best = list(position)
    members = set(best)
    best_fit = fitness(h, best, cfg.p)
    for i in range(len(best)):
        if rng.random() >= cfg.local_element_prob:
            continue
        for nb in sorted(h.neighbors(best[i])):
            if nb in members:
                continue
            cand = best.copy()
            cand[i] = nb
            f = fitness(h, cand, cfg.p)
            if f > best_fit:
                members.discard(best[i])
                members.add(nb)
                best, best_fit = cand, f
    return best


# main loop ----------------------------------------------------------------

def run_optimizer(h: Hypergraph, cfg: OptimizerConfig, seed: int | None = None) -> OptimizationResult:
    """Evolve a swarm for ``cfg.max_generations`` generations.

    Personal bests start from an independent second initialization draw and
    are replaced only on strict improvement. The returned ``history`` holds
    the global-best fitness after initialization and after every
    generation.
    """
    _check_k(h, cfg.k)
    seed = cfg.seed if seed is None else seed
    p = cfg.p
    degrees = np.asarray(h.degrees(), dtype=float)

    def initial(rng):
        if cfg.variant == "PSO":
            return random_position(h.n, cfg.k, rng)
        return degree_biased_position(degrees, cfg.k, rng)

    swarm = []
    for i in range(cfg.population):
        rng = rng_stream(seed, TAG_PARTICLE, 0, i)
        x = initial(rng)
        pb = initial(rng)
        fx, fpb = fitness(h, x, p), fitness(h, pb, p)
        if fx > fpb:
            pb, fpb = list(x), fx
        swarm.append(Particle(x, [0] * cfg.k, pb, fpb, fx))

    lead = max(range(cfg.population), key=lambda i: (swarm[i].pbest_fitness, -i))
    gbest, gbest_fit = list(swarm[lead].pbest), swarm[lead].pbest_fitness
    history = [gbest_fit]

    n_local = cfg.local_search_count if cfg.variant == "HDPSO" else 0
    for g in range(1, cfg.max_generations + 1):
        targets = set()
        if n_local:
            sel = rng_stream(seed, TAG_SELECT, g, 0)
            targets = set(sel.choice(cfg.population, size=n_local, replace=False).tolist())
        for i, part in enumerate(swarm):
            rng = rng_stream(seed, TAG_PARTICLE, g, i)
            part.velocity = update_velocity(part, gbest, cfg, rng)
            part.position = update_position(part, h, rng)
            if i in targets:
                part.position = local_search(part.position, h, cfg, rng)
            part.fitness = fitness(h, part.position, p)
            if part.fitness > part.pbest_fitness:
                part.pbest, part.pbest_fitness = list(part.position), part.fitness
        # reduction after all particles moved: gbest is fixed within a generation
        for part in swarm:
            if part.pbest_fitness > gbest_fit:
                gbest, gbest_fit = list(part.pbest), part.pbest_fitness
        history.append(gbest_fit)

    return OptimizationResult(
        seeds=sorted(h.to_labels(gbest)),
        nodes=gbest,
        approx_fitness=gbest_fit,
        exact_spread=exact_spread(h, gbest, p),
        history=history,
    )
