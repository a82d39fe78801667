"""Command line entry point: ``run``, ``gen``, ``stats`` and ``cascade``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .bench import ALGORITHMS, ExperimentPlan, run_experiment, write_report_csv
from .cascade import simulate_threshold
from .generators import FAMILIES, GeneratorSpec
from .hypergraph import HypergraphError, StatsReport, parse_hyperedge_file, serialize_hyperedge_file


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _algo_list(text: str) -> list[str]:
    algos = [t.strip().lower() for t in text.split(",") if t.strip()]
    bad = [a for a in algos if a not in ALGORITHMS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown algorithm(s) {bad}; choose from {'|'.join(ALGORITHMS)}")
    return algos


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperseed", description="Influence maximization on hypergraphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", help="run a benchmark experiment")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="hyperedge-list file")
    src.add_argument("--gen", choices=FAMILIES, help="generate a synthetic graph instead")
    run.add_argument("--n", type=int, default=2000)
    run.add_argument("--m", type=int, default=1000)
    run.add_argument("--feature", type=float, default=3.0, help="ER mean edge size, SF exponent or KUF edge size")
    run.add_argument("--algo", type=_algo_list, default=list(ALGORITHMS), help="comma-separated algorithm names")
    run.add_argument("--k", type=_int_list, default=[10], help="comma-separated seed-set sizes")
    run.add_argument("--p", type=float, default=0.5, help="activation threshold")
    run.add_argument("--runs", type=int, default=30)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--pop", type=int, default=256)
    run.add_argument("--gens", type=int, default=50)
    run.add_argument("--c1", type=float, default=1.2)
    run.add_argument("--c2", type=float, default=1.2)
    run.add_argument("--w", type=float, default=0.7)
    run.add_argument("--tau", type=float, default=1.5)
    run.add_argument("--pl", type=float, default=0.1)
    run.add_argument("--ref", default="hdpso", help="reference algorithm for significance marks")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--timing", action="store_true", help="record wall-clock runtime_ms per run")
    run.add_argument("--json", action="store_true", help="also write <out>.results.jsonl")
    run.add_argument("--out", required=True, help="output prefix")

    gen = sub.add_parser("gen", help="write a synthetic hyperedge-list file")
    gen.add_argument("--family", choices=FAMILIES, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--feature", type=float, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    stats = sub.add_parser("stats", help="topology statistics of the largest component")
    stats.add_argument("--graph", required=True)

    cas = sub.add_parser("cascade", help="simulate the threshold cascade from a seed set")
    cas.add_argument("--graph", required=True)
    cas.add_argument("--seeds", type=_int_list, required=True, help="original node ids")
    cas.add_argument("--p", type=float, default=0.5)
    cas.add_argument("--trace", action="store_true", help="print the activation trace as round,node CSV")
    return parser


def _cmd_run(args) -> None:
    if args.gen:
        graph = GeneratorSpec(args.gen, args.n, args.m, args.feature, rng_seed=args.seed)
    else:
        graph = args.graph
    plan = ExperimentPlan(
        graph=graph, algorithms=args.algo, ks=args.k, p=args.p, runs=args.runs, seed=args.seed,
        population=args.pop, generations=args.gens, c1=args.c1, c2=args.c2, w=args.w,
        tau=args.tau, local_fraction=args.pl, reference=args.ref, workers=args.workers,
        timing=args.timing,
    )
    report = run_experiment(plan)
    runs_path, summary_path = write_report_csv(report, args.out)
    if args.json:
        with open(f"{args.out}.results.jsonl", "w", encoding="utf-8", newline="\n") as fh:
            for r in report.runs:
                fh.write(json.dumps({
                    "algorithm": r.algorithm, "graph": r.graph, "k": r.k, "run": r.run,
                    "seeds": list(r.seeds), "approx_fitness": r.approx_fitness,
                    "exact_spread": r.exact_spread, "history": list(r.history),
                }, sort_keys=True) + "\n")
    for s in report.summary:
        print(f"{s.graph} k={s.k} {s.algorithm:>9} {s.mean:10.3f} ± {s.std:.3f} {s.mark or ' '} rank={s.mean_rank:.3f}")
    for algo, (mr, br) in report.ranks.items():
        print(f"{algo:>9} avg mean rank {mr:.3f}  avg best rank {br:.3f}")
    print(f"wrote {runs_path} and {summary_path}")


def _cmd_gen(args) -> None:
    spec = GeneratorSpec(args.family, args.n, args.m, args.feature, rng_seed=args.seed)
    serialize_hyperedge_file(spec.build(), args.out, header=[spec.provenance()])


def _cmd_stats(args) -> None:
    h = parse_hyperedge_file(args.graph).largest_connected_component()
    print(StatsReport.csv_header())
    print(h.summary_stats().csv_row())


def _cmd_cascade(args) -> None:
    h = parse_hyperedge_file(args.graph)
    res = simulate_threshold(h, [h.node_of(s) for s in args.seeds], args.p)
    print(f"spread: {res.spread}")
    print(f"rounds: {len(res.rounds) - 1}")
    if args.trace:
        print("round,node")
        for i, nodes in enumerate(res.rounds):
            for label in sorted(h.to_labels(nodes)):
                print(f"{i},{label}")


COMMANDS = {"run": _cmd_run, "gen": _cmd_gen, "stats": _cmd_stats, "cascade": _cmd_cascade}


def cli_dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        COMMANDS[args.command](args)
    except (HypergraphError, ValueError, OSError) as exc:
        print(f"hyperseed: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(cli_dispatch())
