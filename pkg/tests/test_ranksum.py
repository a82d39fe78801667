import itertools
import random

import pytest
from scipy.stats import mannwhitneyu

from hyperseed.ranksum import midranks, wilcoxon_rank_sum


def test_midranks():
    assert midranks([10, 20, 20, 30]) == [1, 2.5, 2.5, 4]
    assert midranks([3, 1, 2]) == [3, 1, 2]


def test_exact_separated_samples():
    res = wilcoxon_rank_sum([1, 2, 3, 4, 5], [10, 11, 12, 13, 14])
    assert res.exact
    assert res.statistic == 0
    # only one of the C(10, 5) = 252 rank placements is this extreme, doubled for two sides
    assert sum(1 for _ in itertools.combinations(range(10), 5)) == 252
    assert res.p_value == pytest.approx(2 / 252, abs=1e-12)
    assert res.mark == "-"


def test_identical_samples():
    a = [float(x % 7) for x in range(30)]
    res = wilcoxon_rank_sum(a, list(a))
    assert not res.exact
    assert res.p_value == 1.0
    assert res.mark == "="


def test_constant_samples():
    res = wilcoxon_rank_sum([5, 5, 5], [5, 5, 5])
    assert res.p_value == 1.0 and res.mark == "="


def test_too_short():
    with pytest.raises(ValueError):
        wilcoxon_rank_sum([1], [1, 2, 3])


def test_swap_antisymmetry():
    rng = random.Random(0)
    flip = {"+": "-", "-": "+", "=": "="}
    for _ in range(100):
        a = [rng.randint(0, 20) for _ in range(rng.randint(2, 15))]
        b = [rng.randint(3, 23) for _ in range(rng.randint(2, 15))]
        ab, ba = wilcoxon_rank_sum(a, b), wilcoxon_rank_sum(b, a)
        assert ab.p_value == pytest.approx(ba.p_value, abs=1e-12)
        assert ba.mark == flip[ab.mark]


@pytest.mark.parametrize("seed", range(20))
def test_exact_path_matches_scipy(seed):
    rng = random.Random(seed)
    n1 = rng.randint(2, 6)
    n2 = rng.randint(2, 12 - n1)
    pool = rng.sample(range(100), n1 + n2)
    a, b = pool[:n1], pool[n1:]
    res = wilcoxon_rank_sum(a, b)
    ref = mannwhitneyu(a, b, alternative="two-sided", method="exact")
    assert res.exact
    assert res.statistic == ref.statistic
    assert res.p_value == pytest.approx(ref.pvalue, abs=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_normal_path_matches_scipy(seed):
    rng = random.Random(seed)
    a = [rng.randint(0, 10) for _ in range(rng.randint(5, 30))]
    b = [rng.randint(2, 12) for _ in range(rng.randint(5, 30))]
    res = wilcoxon_rank_sum(a, b)
    ref = mannwhitneyu(a, b, alternative="two-sided", method="asymptotic", use_continuity=True)
    assert not res.exact
    assert res.p_value == pytest.approx(ref.pvalue, abs=1e-10)


def test_mark_rule():
    lo, hi = list(range(20)), list(range(100, 120))
    assert wilcoxon_rank_sum(hi, lo).mark == "+"
    assert wilcoxon_rank_sum(lo, hi).mark == "-"
    assert wilcoxon_rank_sum(hi, lo, alpha=0.0).mark == "="
