"""Threshold propagation on hypergraphs.

A hyperedge fires once the fraction of its active members reaches ``p``;
firing activates every member. :func:`simulate_threshold` runs this to the
fixpoint, :func:`two_layer_spread` stops after two layers and is the cheap
fitness used by the optimizers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .hypergraph import Hypergraph, HypergraphError


@dataclass(frozen=True)
class CascadeResult:
    activated_nodes: frozenset[int]
    activated_edges: frozenset[int]
    # rounds[0] is the seed set; later entries hold newly activated nodes only
    rounds: tuple[frozenset[int], ...] = field(default=())

    @property
    def spread(self) -> int:
        return len(self.activated_nodes)


def _validate(h: Hypergraph, seeds: Iterable[int], p: float) -> set[int]:
    if not 0 < p <= 1:
        raise HypergraphError(f"threshold p={p} outside (0, 1]")
    s = set(seeds)
    for v in s:
        if not 0 <= v < h.n:
            raise HypergraphError(f"seed {v} out of range for n={h.n}")
    return s


def simulate_threshold(
    h: Hypergraph, seeds: Iterable[int], p: float, trace: bool = True
) -> CascadeResult:
    """Run the deterministic threshold cascade to its least fixpoint.

    Each round tests the edges touched by the previous round's newly active
    nodes against the active set at the end of that round.
    """
    active = _validate(h, seeds, p)
    need = h.activation_counts(p)
    edges = h.edges
    n2e = h.node_to_edges
    hits = [0] * h.m
    fired: set[int] = set()
    rounds = [frozenset(active)] if trace else []
    frontier = active
    while frontier:
        touched = set()
        for v in frontier:
            for e in n2e[v]:
                hits[e] += 1
                touched.add(e)
        new_nodes = set()
        for e in touched:
            if e not in fired and hits[e] >= need[e]:
                fired.add(e)
                new_nodes.update(u for u in edges[e] if u not in active)
        active |= new_nodes
        if trace and new_nodes:
            rounds.append(frozenset(new_nodes))
        frontier = new_nodes
    return CascadeResult(frozenset(active), frozenset(fired), tuple(rounds))


def _layer(h: Hypergraph, active: set[int], need: tuple[int, ...]) -> set[int]:
    edges = h.edges
    n2e = h.node_to_edges
    hits: dict[int, int] = {}
    for v in active:
        for e in n2e[v]:
            hits[e] = hits.get(e, 0) + 1
    out: set[int] = set()
    for e, c in hits.items():
        if c >= need[e]:
            out.update(edges[e])
    return out


def two_layer_spread(
    h: Hypergraph, seeds: Iterable[int], p: float, include_seeds: bool = True
) -> set[int]:
    """Nodes reached after two propagation layers.

    The first layer fires every edge whose seed fraction reaches ``p``. The
    second layer fires edges against the active set after layer one, which
    is ``seeds | layer1`` by default. With ``include_seeds=False`` the second
    layer is tested against ``layer1`` alone. Seeds are always part of the
    result.
    """
    s = _validate(h, seeds, p)
    need = h.activation_counts(p)
    first = _layer(h, s, need)
    second = _layer(h, (first | s) if include_seeds else first, need)
    return s | first | second


def fitness(h: Hypergraph, seeds: Iterable[int], p: float, include_seeds: bool = True) -> int:
    return len(two_layer_spread(h, seeds, p, include_seeds))


def exact_spread(h: Hypergraph, seeds: Iterable[int], p: float) -> int:
    return len(simulate_threshold(h, seeds, p, trace=False).activated_nodes)
