import random

import pytest

from hyperseed.hypergraph import Hypergraph

H0_EDGES = [{1, 2, 3}, {3, 4}, {4, 5, 6}]
C4_EDGES = [{1, 2}, {2, 3}, {3, 4}, {4, 5}]


@pytest.fixture
def h0():
    return Hypergraph.from_hyperedges(H0_EDGES)


@pytest.fixture
def c4():
    return Hypergraph.from_hyperedges(C4_EDGES)


def ids(h, labels):
    """Compacted ids for original labels."""
    return [h.node_of(x) for x in labels]


def labels(h, nodes):
    return set(h.to_labels(nodes))


def naive_cascade(edges, n, seeds, p):
    """Recompute every edge against the active set until nothing changes."""
    active = set(seeds)
    while True:
        nxt = set(active)
        for e in edges:
            if len(active & set(e)) / len(e) >= p:
                nxt |= set(e)
        if nxt == active:
            return active
        active = nxt


def random_small_corpus(count, seed, max_n=12, max_m=8):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, max_n)
        m = rng.randint(1, max_m)
        edges = [rng.sample(range(n), rng.randint(2, min(n, 5))) for _ in range(m)]
        out.append(Hypergraph.from_hyperedges(edges))
    return out


ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        status, text = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{status}] criterion {num}: {text}")
