"""Exit criteria. Each test records one PASS/FAIL line shown in the terminal summary."""

import contextlib
import itertools
import random
import statistics
import time

import numpy as np
import pytest

from hyperseed.baselines import GAConfig, run_ga
from hyperseed.bench import ExperimentPlan, run_experiment
from hyperseed.cascade import fitness, simulate_threshold, two_layer_spread
from hyperseed.cli import cli_dispatch
from hyperseed.generators import GeneratorSpec, gen_er, gen_kuniform, gen_sf
from hyperseed.ranksum import wilcoxon_rank_sum
from hyperseed.swarm import OptimizerConfig, binarize, guidance_mask, guidance_sum, local_search, run_optimizer

from .conftest import ACCEPTANCE, ids, labels, naive_cascade, random_small_corpus


@contextlib.contextmanager
def criterion(num, text):
    try:
        yield
    except BaseException:
        ACCEPTANCE[num] = ("FAIL", text)
        raise
    ACCEPTANCE[num] = ("PASS", text)


@pytest.fixture(scope="module")
def corpus():
    return random_small_corpus(50, seed=2024, max_n=12, max_m=8)


def seed_sets(h, max_size=3):
    for r in range(max_size + 1):
        yield from itertools.combinations(range(h.n), r)


def test_c1_cascade_oracle(corpus):
    with criterion(1, "exact cascade == naive fixpoint on 50 graphs, all |S|<=3, p in {0.3,0.5,0.8}, < 10 s"):
        t0 = time.perf_counter()
        mismatches = 0
        for h in corpus:
            assert h.n <= 12 and h.m <= 8
            for p in (0.3, 0.5, 0.8):
                for s in seed_sets(h):
                    if simulate_threshold(h, s, p).activated_nodes != naive_cascade(h.edges, h.n, s, p):
                        mismatches += 1
        elapsed = time.perf_counter() - t0
        assert mismatches == 0
        assert elapsed < 10, f"took {elapsed:.2f} s"


def test_c2_approximation_bound(corpus):
    with criterion(2, "two-layer spread within exact cascade; equal when <= 2 non-seed rounds"):
        violations = 0
        for h in corpus:
            for p in (0.3, 0.5, 0.8):
                for s in seed_sets(h):
                    if not s:
                        continue
                    exact = simulate_threshold(h, s, p)
                    approx = two_layer_spread(h, s, p)
                    if not approx <= exact.activated_nodes:
                        violations += 1
                    if len(exact.rounds) - 1 <= 2 and approx != exact.activated_nodes:
                        violations += 1
        assert violations == 0


def test_c3_figure_four():
    with criterion(3, "Fig. 4 masks, weighted sum and velocity (tau = 1.0) reproduced exactly"):
        x = (1, 4, 7, 9, 12, 18, 27, 43)
        pmask = guidance_mask(x, (9, 2, 8, 91, 23, 125, 43, 7))
        gmask = guidance_mask(x, (18, 3, 10, 21, 97, 4, 212, 7))
        assert pmask == [1, 1, 0, 0, 1, 1, 1, 0]
        assert gmask == [1, 0, 0, 1, 1, 0, 1, 1]
        u = guidance_sum([0] * 8, pmask, gmask, 0.7, 0.6, 1.1)
        assert [round(v, 10) for v in u] == [1.7, 0.6, 0, 1.1, 1.7, 1.7, 0.6, 1.7]
        assert binarize(u, 1.0) == [1, 0, 0, 1, 1, 1, 0, 1]


def test_c4_fixture_table(h0, c4):
    with criterion(4, "H0 degrees/hyperdegrees/f/exact and C4 two-layer 3 < exact 5"):
        assert [h0.degree(v) for v in ids(h0, range(1, 7))] == [2, 2, 3, 3, 2, 2]
        assert [h0.hyperdegree(v) for v in ids(h0, range(1, 7))] == [1, 1, 2, 2, 1, 1]
        s = ids(h0, [1, 2])
        assert fitness(h0, s, 0.5) == 4
        assert simulate_threshold(h0, s, 0.5).spread == 4
        one = ids(c4, [1])
        assert fitness(c4, one, 0.5) == 3
        assert labels(c4, simulate_threshold(c4, one, 0.5).activated_nodes) == {1, 2, 3, 4, 5}


def test_c5_desk_scale_ordering():
    with criterion(5, "ER(300,150,<k>=3) k=10: median HDPSO >= PSO-init >= PSO, HDPSO > random (p < 0.05), < 60 s"):
        t0 = time.perf_counter()
        plan = ExperimentPlan(
            graph=GeneratorSpec("ER", 300, 150, 3.0, rng_seed=0),
            algorithms=["hdpso", "pso-init", "pso", "random"],
            ks=[10], p=0.5, runs=10, population=64, generations=30, seed=0,
        )
        rep = run_experiment(plan)
        elapsed = time.perf_counter() - t0
        spread = {}
        for r in rep.runs:
            spread.setdefault(r.algorithm, []).append(r.exact_spread)
        med = {a: statistics.median(v) for a, v in spread.items()}
        test = wilcoxon_rank_sum(spread["hdpso"], spread["random"])
        print(f"medians {med}, hdpso vs random p={test.p_value:.3g}, {elapsed:.1f} s")
        assert elapsed < 60, f"took {elapsed:.1f} s"
        assert test.mark == "+" and test.p_value < 0.05
        assert med["hdpso"] >= med["pso-init"] >= med["pso"], med


def test_c6_global_optimum(h0):
    with criterion(6, "H0 k=2: HDPSO and GA reach exact spread 4 within 10 generations, 10/10 runs"):
        best = max(len(naive_cascade(h0.edges, h0.n, s, 0.5)) for s in itertools.combinations(range(6), 2))
        assert best == 4
        for seed in range(10):
            res = run_optimizer(h0, OptimizerConfig(k=2, p=0.5, max_generations=10, seed=seed))
            assert res.exact_spread == 4
            res = run_ga(h0, GAConfig(k=2, p=0.5, max_generations=10, seed=seed))
            assert res.exact_spread == 4


def test_c7_monotonicity():
    with criterion(7, "1000 S<=T pairs and 1000 p<=p' pairs, zero violations"):
        rng = random.Random(7)
        graphs = [gen_er(80, 40, 3, 1), gen_sf(80, 30, -2.0, 2), gen_kuniform(80, 50, 3, 3)]
        violations = 0
        for i in range(1000):
            h = graphs[i % 3]
            p = rng.choice([0.3, 0.5, 0.7, 1.0])
            t = rng.sample(range(h.n), rng.randint(1, 10))
            s = rng.sample(t, rng.randint(0, len(t)))
            if not simulate_threshold(h, s, p).activated_nodes <= simulate_threshold(h, t, p).activated_nodes:
                violations += 1
            if fitness(h, s, p) > fitness(h, t, p):
                violations += 1
        for i in range(1000):
            h = graphs[i % 3]
            lo, hi = sorted(rng.uniform(0.01, 1.0) for _ in range(2))
            s = rng.sample(range(h.n), rng.randint(1, 10))
            if not simulate_threshold(h, s, hi).activated_nodes <= simulate_threshold(h, s, lo).activated_nodes:
                violations += 1
        assert violations == 0


def test_c8_wilcoxon():
    with criterion(8, "exact p = 2/252 to 1e-12; identical 30-vectors give '='; swap antisymmetry x100"):
        res = wilcoxon_rank_sum([1, 2, 3, 4, 5], [10, 11, 12, 13, 14])
        assert res.exact and abs(res.p_value - 2 / 252) <= 1e-12 and res.p_value < 0.05
        rng = random.Random(8)
        a = [rng.randint(50, 90) for _ in range(30)]
        same = wilcoxon_rank_sum(a, list(a))
        assert not same.exact and same.mark == "="
        flip = {"+": "-", "-": "+", "=": "="}
        for _ in range(100):
            x = [rng.randint(0, 30) for _ in range(rng.randint(2, 30))]
            y = [rng.randint(5, 35) for _ in range(rng.randint(2, 30))]
            xy, yx = wilcoxon_rank_sum(x, y), wilcoxon_rank_sum(y, x)
            assert abs(xy.p_value - yx.p_value) <= 1e-12
            assert yx.mark == flip[xy.mark]


def test_c9_cli_determinism(tmp_path):
    with criterion(9, "`run` twice with the same --seed gives byte-identical CSVs, also with --workers"):
        base = ["run", "--gen", "ER", "--n", "120", "--m", "60", "--feature", "3",
                "--algo", "hdpso,pso,ga,random,hhd,pagerank", "--k", "3,5", "--runs", "4",
                "--pop", "12", "--gens", "4", "--seed", "11"]
        outs = []
        for tag, extra in (("a", []), ("b", []), ("c", ["--workers", "3"])):
            assert cli_dispatch(base + extra + ["--out", str(tmp_path / tag)]) == 0
            outs.append(tag)
        for ext in (".runs.csv", ".summary.csv"):
            ref = (tmp_path / f"a{ext}").read_bytes()
            for tag in outs[1:]:
                assert (tmp_path / f"{tag}{ext}").read_bytes() == ref


def test_c10_local_search_safety():
    with criterion(10, "1000 local-search calls never lower fitness and keep k distinct valid ids"):
        graphs = [gen_er(100, 50, 3, s).largest_connected_component() for s in range(4)]
        rng = np.random.default_rng(10)
        for i in range(1000):
            h = graphs[i % 4]
            k = int(rng.integers(1, 11))
            cfg = OptimizerConfig(k=k, p=float(rng.choice([0.3, 0.5, 0.8])),
                                  local_element_prob=float(rng.random()))
            pos = rng.choice(h.n, size=k, replace=False).tolist()
            out = local_search(pos, h, cfg, rng)
            assert len(out) == k == len(set(out))
            assert all(0 <= v < h.n for v in out)
            assert fitness(h, out, cfg.p) >= fitness(h, pos, cfg.p)
