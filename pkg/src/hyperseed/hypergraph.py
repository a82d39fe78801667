"""Immutable hypergraph with incidence/adjacency queries, text I/O and topology stats.

Node ids are compacted to ``0..n-1`` at construction. The original id of
compacted node ``v`` is ``h.labels[v]``; every derived hypergraph (for
example the largest connected component) keeps labels pointing at the ids
of the very first input, so seed sets can always be reported in raw ids.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import astuple, dataclass, fields
from typing import Iterable, Sequence

import networkx as nx


class HypergraphError(ValueError):
    """Invalid hypergraph construction or query."""


class ParseError(HypergraphError):
    pass


class Hypergraph:
    """Node/hyperedge incidence structure.

    Attributes are read-only tuples:

    * ``edges[e]`` -- sorted member nodes of hyperedge ``e``
    * ``node_to_edges[v]`` -- ids of the hyperedges containing ``v``
    * ``labels[v]`` -- original id of node ``v``

    Duplicate hyperedges are kept as distinct edges.
    """

    __slots__ = (
        "_edges",
        "_node_to_edges",
        "_neighbors",
        "_labels",
        "_index",
        "_need_cache",
    )

    def __init__(self, edges: Sequence[Sequence[int]], labels: Sequence[int]):
        # Trusted constructor: ``edges`` already compacted, deduplicated, size >= 2.
        n = len(labels)
        self._edges = tuple(tuple(sorted(e)) for e in edges)
        self._labels = tuple(labels)
        self._index = {lab: v for v, lab in enumerate(self._labels)}
        n2e: list[list[int]] = [[] for _ in range(n)]
        for e, members in enumerate(self._edges):
            for v in members:
                n2e[v].append(e)
        self._node_to_edges = tuple(tuple(x) for x in n2e)
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for members in self._edges:
            for v in members:
                nbrs[v].update(members)
        for v in range(n):
            nbrs[v].discard(v)
        self._neighbors = tuple(frozenset(s) for s in nbrs)
        self._need_cache: dict[float, tuple[int, ...]] = {}

    # construction -------------------------------------------------------

    @classmethod
    def from_hyperedges(cls, edge_list: Iterable[Iterable[int]]) -> "Hypergraph":
        """Build a hypergraph from raw node-id collections.

        Duplicate ids inside an edge collapse, edges with fewer than two
        distinct members are dropped and the remaining node ids are
        compacted in ascending order of their original value.
        """
        raw = []
        for edge in edge_list:
            members = set()
            for v in edge:
                if isinstance(v, bool) or not isinstance(v, int):
                    try:
                        if int(v) != v:
                            raise TypeError
                        v = int(v)
                    except (TypeError, ValueError):
                        raise HypergraphError(f"node id {v!r} is not an integer") from None
                if v < 0:
                    raise HypergraphError(f"node id {v} is negative")
                members.add(v)
            raw.append(members)
        if not raw:
            raise HypergraphError("edge list is empty")
        kept = [m for m in raw if len(m) >= 2]
        if not kept:
            raise HypergraphError("no hyperedge has two or more distinct members")
        labels = sorted(set().union(*kept))
        index = {lab: i for i, lab in enumerate(labels)}
        return cls([[index[v] for v in m] for m in kept], labels)

    # basic accessors ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return self._edges

    @property
    def node_to_edges(self) -> tuple[tuple[int, ...], ...]:
        return self._node_to_edges

    @property
    def labels(self) -> tuple[int, ...]:
        return self._labels

    def node_of(self, label: int) -> int:
        """Compacted id of the node whose original id is ``label``."""
        try:
            return self._index[label]
        except KeyError:
            raise HypergraphError(f"unknown node id {label}") from None

    def to_labels(self, nodes: Iterable[int]) -> list[int]:
        return [self._labels[v] for v in nodes]

    def _check(self, v: int) -> None:
        if not 0 <= v < len(self._labels):
            raise HypergraphError(f"node {v} out of range for n={len(self._labels)}")

    def degree(self, v: int) -> int:
        """Number of distinct nodes sharing at least one hyperedge with ``v``."""
        self._check(v)
        return len(self._neighbors[v])

    def hyperdegree(self, v: int) -> int:
        self._check(v)
        return len(self._node_to_edges[v])

    def neighbors(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._neighbors[v]

    def adjacency_count(self, u: int, v: int) -> int:
        """Number of hyperedges containing both ``u`` and ``v`` (off-diagonal of CC^T)."""
        self._check(u)
        self._check(v)
        if u == v:
            raise HypergraphError("adjacency_count is undefined on the diagonal")
        return len(set(self._node_to_edges[u]).intersection(self._node_to_edges[v]))

    def degrees(self) -> list[int]:
        return [len(s) for s in self._neighbors]

    def hyperdegrees(self) -> list[int]:
        return [len(s) for s in self._node_to_edges]

    def activation_counts(self, p: float) -> tuple[int, ...]:
        """Per-edge minimum number of active members ``c`` with ``c/|e| >= p``."""
        need = self._need_cache.get(p)
        if need is None:
            out = []
            for members in self._edges:
                size = len(members)
                c = max(1, math.ceil(p * size))
                while c > 1 and (c - 1) / size >= p:
                    c -= 1
                while c / size < p:
                    c += 1
                out.append(c)
            need = self._need_cache[p] = tuple(out)
        return need

    def clique_expansion(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        for v, nb in enumerate(self._neighbors):
            g.add_edges_from((v, u) for u in nb if u > v)
        return g

    # structure ----------------------------------------------------------

    def components(self) -> list[list[int]]:
        """Node components of the neighbor relation, each sorted ascending."""
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for u in self._neighbors[v]:
                    if not seen[u]:
                        seen[u] = True
                        comp.append(u)
                        queue.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def largest_connected_component(self) -> "Hypergraph":
        """Sub-hypergraph on the largest component.

        Ties between equal-size components go to the one holding the
        smallest original node id.
        """
        comps = self.components()
        if len(comps) == 1:
            return self
        best = min(comps, key=lambda c: (-len(c), min(self._labels[v] for v in c)))
        keep = set(best)
        # compaction is order-preserving so labels stay ascending
        index = {v: i for i, v in enumerate(best)}
        edges = [[index[v] for v in e] for e in self._edges if e[0] in keep]
        return Hypergraph(edges, [self._labels[v] for v in best])

    def summary_stats(self) -> "StatsReport":
        return summary_stats(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self._labels == other._labels and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._labels, self._edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={self.m})"


def from_hyperedges(edge_list: Iterable[Iterable[int]]) -> Hypergraph:
    return Hypergraph.from_hyperedges(edge_list)


@dataclass(frozen=True)
class StatsReport:
    n: int
    m: int
    avg_deg: float
    avg_hyperdeg: float
    avg_edge_size: float
    clustering: float
    avg_path: float
    diameter: int
    density: float

    @staticmethod
    def csv_header() -> str:
        return ",".join(f.name for f in fields(StatsReport))

    def csv_row(self) -> str:
        out = []
        for value in astuple(self):
            out.append(str(value) if isinstance(value, int) else f"{value:.6g}")
        return ",".join(out)


def summary_stats(h: Hypergraph) -> StatsReport:
    """Table-style topology statistics.

    Clustering, shortest paths, diameter and density are measured on the
    clique expansion. The input must be connected with at least two nodes.
    """
    if h.n < 2:
        raise HypergraphError("summary_stats needs n >= 2")
    if not h.is_connected():
        raise HypergraphError(
            "summary_stats requires a connected hypergraph; "
            "call largest_connected_component() first"
        )
    g = h.clique_expansion()
    incidences = sum(len(e) for e in h.edges)
    return StatsReport(
        n=h.n,
        m=h.m,
        avg_deg=sum(h.degrees()) / h.n,
        avg_hyperdeg=incidences / h.n,
        avg_edge_size=incidences / h.m,
        clustering=nx.average_clustering(g),
        avg_path=nx.average_shortest_path_length(g),
        diameter=nx.diameter(g),
        density=2 * g.number_of_edges() / (h.n * (h.n - 1)),
    )


def parse_hyperedge_file(path: str | os.PathLike) -> Hypergraph:
    """Read one hyperedge per line; ``#`` lines and blank lines are skipped."""
    edges = []
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                text = line.strip()
                if not text or text.startswith("#"):
                    continue
                members = []
                for tok in text.split():
                    try:
                        members.append(int(tok))
                    except ValueError:
                        raise ParseError(f"{path}:{lineno}: malformed node id {tok!r}") from None
                    if members[-1] < 0:
                        raise ParseError(f"{path}:{lineno}: negative node id {tok}")
                edges.append(members)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if not edges:
        raise ParseError(f"{path}: no hyperedges found")
    return Hypergraph.from_hyperedges(edges)


def serialize_hyperedge_file(
    h: Hypergraph, path: str | os.PathLike, header: Sequence[str] = ()
) -> None:
    """Write ``h`` in original ids, optional ``header`` lines as ``#`` comments."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        for members in h.edges:
            fh.write(" ".join(str(h.labels[v]) for v in members) + "\n")
