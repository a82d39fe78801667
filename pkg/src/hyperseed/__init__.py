"""Seed selection for influence maximization on hypergraphs under the threshold model."""

from .baselines import GAConfig, SeedSelection, run_ga, select_hci, select_hhd, select_np, select_pagerank, select_random
from .bench import ExperimentPlan, ExperimentReport, run_experiment, write_report_csv
from .cascade import CascadeResult, exact_spread, fitness, simulate_threshold, two_layer_spread
from .generators import GeneratorSpec, gen_er, gen_kuniform, gen_sf
from .hypergraph import Hypergraph, HypergraphError, ParseError, StatsReport, from_hyperedges, parse_hyperedge_file, serialize_hyperedge_file, summary_stats
from .ranksum import wilcoxon_rank_sum
from .swarm import OptimizationResult, OptimizerConfig, run_optimizer

__version__ = "0.1.0"
