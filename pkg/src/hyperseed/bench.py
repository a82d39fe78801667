"""Multi-run experiment harness: execution, aggregation, significance marks, CSV."""

from __future__ import annotations

import logging
import os
import statistics
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .baselines import GAConfig, run_ga, select_hci, select_hhd, select_np, select_pagerank, select_random
from .generators import GeneratorSpec
from .hypergraph import Hypergraph, HypergraphError, parse_hyperedge_file
from .ranksum import wilcoxon_rank_sum
from .swarm import OptimizerConfig, run_optimizer

log = logging.getLogger(__name__)

ALGORITHMS = ("hdpso", "pso", "pso-init", "ga", "hhd", "random", "np", "pagerank", "hci1", "hci2")
SWARM_VARIANTS = {"hdpso": "HDPSO", "pso": "PSO", "pso-init": "PSO_INIT"}

RUNS_HEADER = "algorithm,graph,k,p,run,exact_spread,approx_fitness,runtime_ms"
SUMMARY_HEADER = "algorithm,graph,k,mean,std,mark,mean_rank"


@dataclass
class ExperimentPlan:
    graph: str | os.PathLike | GeneratorSpec
    algorithms: Sequence[str] = ALGORITHMS
    ks: Sequence[int] = (10,)
    p: float = 0.5
    runs: int = 30
    seed: int = 0
    population: int = 256
    generations: int = 50
    c1: float = 1.2
    c2: float = 1.2
    w: float = 0.7
    tau: float = 1.5
    local_fraction: float = 0.1
    reference: str = "hdpso"
    alpha: float = 0.05
    workers: int = 1
    timing: bool = False

    def __post_init__(self):
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ValueError(f"unknown algorithm(s) {unknown}; choose from {', '.join(ALGORITHMS)}")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not 0 < self.p <= 1:
            raise ValueError(f"threshold p={self.p} outside (0, 1]")
        if not self.ks or min(self.ks) < 1:
            raise ValueError("seed-set sizes must be >= 1")

    def load_graph(self) -> tuple[str, Hypergraph]:
        """The largest connected component of the configured graph, plus its name."""
        if isinstance(self.graph, GeneratorSpec):
            name, h = self.graph.name, self.graph.build()
        else:
            name, h = Path(self.graph).stem, parse_hyperedge_file(self.graph)
        return name, h.largest_connected_component()


@dataclass(frozen=True)
class RunRecord:
    algorithm: str
    graph: str
    k: int
    p: float
    run: int
    exact_spread: int
    approx_fitness: int
    runtime_ms: float | None
    seeds: tuple[int, ...] = ()
    history: tuple[int, ...] = ()


@dataclass(frozen=True)
class SummaryRow:
    algorithm: str
    graph: str
    k: int
    mean: float
    std: float
    best: int
    mark: str
    mean_rank: float


@dataclass
class ExperimentReport:
    runs: list[RunRecord] = field(default_factory=list)
    summary: list[SummaryRow] = field(default_factory=list)
    # algorithm -> (average mean rank, average best rank) over (graph, k) cells
    ranks: dict[str, tuple[float, float]] = field(default_factory=dict)


def cell_seed(master: int, algorithm: str, k: int, run: int) -> int:
    ss = np.random.SeedSequence([master % 2**64, zlib.crc32(algorithm.encode()), k, run])
    return int(ss.generate_state(1, np.uint64)[0] >> np.uint64(1))


def run_algorithm(h: Hypergraph, algorithm: str, k: int, plan: ExperimentPlan, seed: int):
    """One (algorithm, k) execution; returns (seeds, exact, approx, history)."""
    if algorithm in SWARM_VARIANTS:
        cfg = OptimizerConfig(
            k=k, p=plan.p, max_generations=plan.generations, population=plan.population,
            c1=plan.c1, c2=plan.c2, w=plan.w, tau=plan.tau,
            local_fraction=plan.local_fraction, variant=SWARM_VARIANTS[algorithm], seed=seed,
        )
        res = run_optimizer(h, cfg)
        return tuple(res.seeds), res.exact_spread, res.approx_fitness, tuple(res.history)
    if algorithm == "ga":
        res = run_ga(h, GAConfig(k=k, p=plan.p, max_generations=plan.generations,
                                 population=max(2, plan.population), seed=seed))
        return tuple(res.seeds), res.exact_spread, res.approx_fitness, tuple(res.history)
    if algorithm == "hhd":
        sel = select_hhd(h, k, p=plan.p)
    elif algorithm == "np":
        sel = select_np(h, k, p=plan.p)
    elif algorithm == "random":
        sel = select_random(h, k, rng=seed, p=plan.p)
    elif algorithm == "pagerank":
        sel = select_pagerank(h, k, p=plan.p)
    elif algorithm == "hci1":
        sel = select_hci(h, k, order=1, p=plan.p)
    elif algorithm == "hci2":
        sel = select_hci(h, k, order=2, p=plan.p)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return sel.seeds, sel.exact_spread, sel.approx_fitness, ()


def _execute(args) -> RunRecord:
    h, name, algorithm, k, run, plan = args
    t0 = time.perf_counter()
    seeds, exact, approx, history = run_algorithm(h, algorithm, k, plan, cell_seed(plan.seed, algorithm, k, run))
    elapsed = (time.perf_counter() - t0) * 1000 if plan.timing else None
    return RunRecord(algorithm, name, k, plan.p, run, exact, approx, elapsed, seeds, history)


def average_ranks(values: Sequence[float]) -> list[float]:
    """Rank 1 = largest value; ties share the average rank."""
    order = sorted(range(len(values)), key=lambda i: -values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        for t in range(i, j + 1):
            ranks[order[t]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def aggregate(records: Sequence[RunRecord], algorithms: Sequence[str], reference: str = "hdpso",
              alpha: float = 0.05) -> tuple[list[SummaryRow], dict[str, tuple[float, float]]]:
    """Mean/std per cell, rank-sum marks against ``reference`` and rank averages.

    ``std`` is the sample standard deviation (0 for a single run).
    """
    cells: dict[tuple[str, int], dict[str, list[int]]] = {}
    for r in records:
        cells.setdefault((r.graph, r.k), {}).setdefault(r.algorithm, []).append(r.exact_spread)

    rows: list[SummaryRow] = []
    rank_acc: dict[str, list[tuple[float, float]]] = {}
    for (graph, k), by_algo in cells.items():
        present = [a for a in algorithms if a in by_algo]
        means = [statistics.fmean(by_algo[a]) for a in present]
        bests = [max(by_algo[a]) for a in present]
        mean_ranks = average_ranks(means)
        best_ranks = average_ranks(bests)
        ref = by_algo.get(reference)
        for a, mu, best, mr, br in zip(present, means, bests, mean_ranks, best_ranks):
            vals = by_algo[a]
            sd = statistics.stdev(vals) if len(vals) > 1 else 0.0
            mark = ""
            if ref is not None and a != reference and len(ref) >= 2 and len(vals) >= 2:
                mark = wilcoxon_rank_sum(ref, vals, alpha).mark
            rows.append(SummaryRow(a, graph, k, mu, sd, best, mark, mr))
            rank_acc.setdefault(a, []).append((mr, br))
    ranks = {
        a: (statistics.fmean(x for x, _ in v), statistics.fmean(y for _, y in v))
        for a, v in rank_acc.items()
    }
    return rows, ranks


def run_experiment(plan: ExperimentPlan) -> ExperimentReport:
    """Execute every (algorithm, k, run) cell and aggregate.

    Each cell draws its randomness from ``(plan.seed, algorithm, k, run)``,
    so the report is identical for any ``plan.workers``.
    """
    name, h = plan.load_graph()
    for k in plan.ks:
        if k > h.n:
            raise HypergraphError(f"seed-set size k={k} exceeds n={h.n} of {name}")
    jobs = [(h, name, a, k, r, plan) for a in plan.algorithms for k in plan.ks for r in range(plan.runs)]
    log.info("running %d jobs on %s (n=%d, m=%d)", len(jobs), name, h.n, h.m)
    if plan.workers > 1:
        with ProcessPoolExecutor(max_workers=plan.workers) as pool:
            records = list(pool.map(_execute, jobs, chunksize=1))
    else:
        records = [_execute(j) for j in jobs]
    summary, ranks = aggregate(records, plan.algorithms, plan.reference, plan.alpha)
    return ExperimentReport(records, summary, ranks)


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def write_report_csv(report: ExperimentReport, path: str | os.PathLike) -> tuple[Path, Path]:
    """Write ``<path>.runs.csv`` and ``<path>.summary.csv``; returns both paths."""
    base = str(path)
    runs_path, summary_path = Path(base + ".runs.csv"), Path(base + ".summary.csv")
    lines = [RUNS_HEADER]
    for r in report.runs:
        rt = "" if r.runtime_ms is None else _fmt(r.runtime_ms)
        lines.append(f"{r.algorithm},{r.graph},{r.k},{_fmt(r.p)},{r.run},{r.exact_spread},{r.approx_fitness},{rt}")
    srows = [SUMMARY_HEADER]
    for s in report.summary:
        srows.append(f"{s.algorithm},{s.graph},{s.k},{_fmt(s.mean)},{_fmt(s.std)},{s.mark},{_fmt(s.mean_rank)}")
    for target, content in ((runs_path, lines), (summary_path, srows)):
        try:
            with open(target, "w", encoding="utf-8", newline="\n") as fh:
                fh.write("\n".join(content) + "\n")
        except OSError as exc:
            raise OSError(f"cannot write {target}: {exc}") from exc
    return runs_path, summary_path
