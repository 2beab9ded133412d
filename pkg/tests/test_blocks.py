import math
from decimal import Decimal, getcontext
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallratio.blocks import (
    BlockProfile,
    as_fraction,
    chif_failure_bound,
    chif_threshold,
    custom_profile,
    exp_profile,
    expected_edge_count,
    param_profile,
    profile_from_spec,
    sample,
    tower_profile,
)
from hallratio.graph import GraphError, is_independent
from hallratio.rng import SplitMix64


def _dec_ceil_pow(n: int, e: Decimal) -> int:
    getcontext().prec = 80
    return int((Decimal(n) ** e).to_integral_value(rounding="ROUND_CEILING"))


def test_exp_profile_examples():
    assert exp_profile(729).sizes == (243, 81, 27)
    assert exp_profile(9).sizes == (3,)
    assert exp_profile(6561).sizes == (2187, 729, 243, 81)
    with pytest.raises(GraphError):
        exp_profile(8)


def test_exp_profile_k_and_ceilings():
    for n in [9, 10, 80, 81, 100, 728, 1000, 59049]:
        p = exp_profile(n)
        assert p.k == math.floor(math.log(n, 3) / 2 + 1e-12)
        assert p.sizes == tuple(-(-n // 3**i) for i in range(1, p.k + 1))


def test_chif_bound_hypotheses_flag():
    assert exp_profile(729).meets_chif_bound_hypotheses  # |B_3| = 27 >= 3
    assert not exp_profile(81).meets_chif_bound_hypotheses  # k = 2 < 3
    assert not custom_profile([5, 2, 2]).meets_chif_bound_hypotheses


def test_param_profile_against_decimal_oracle():
    # exponents 0.9, 0.8, 0.6 at n = 10^6
    expect = [_dec_ceil_pow(10**6, Decimal(e)) for e in ("0.9", "0.8", "0.6")]
    p = param_profile(10**6, 2, 0.05, 3)
    assert list(p.sizes) == expect == [251189, 63096, 3982]
    assert param_profile(2 * 10**4, 2, 0.08, 3).sizes == (4101, 841, 36)
    assert param_profile(10**4, 2, 0.1, 3).sizes == (1585, 252, 7)


def test_param_profile_single_block():
    p = param_profile(100, 2, 0.2, 1)
    assert p.sizes == (_dec_ceil_pow(100, Decimal("0.6")),) == (16,)


@pytest.mark.parametrize("args", [
    (2 * 10**4, 4, 0.08, 3),  # 1 - 16 * 0.08 < 0
    (100, 1, 0.1, 2),
    (100, 2, 0, 2),
    (100, 2, 0.1, 0),
    (100.5, 2, 0.1, 1),
])
def test_param_profile_rejects(args):
    with pytest.raises(GraphError):
        param_profile(*args)


def test_float_eps_read_as_decimal():
    assert as_fraction(0.08) == Fraction(2, 25)
    assert param_profile(10**4, 2, 0.25, 1).params["eps"] == "1/4"


def test_tower_profile_single_block():
    n = 10**30  # ln n ~ 69.1, so floor(log_4(ln n) / 3) = 1
    getcontext().prec = 80
    ln = Decimal(n).ln()
    eps = 1 / ln.sqrt()
    expect = _dec_ceil_pow(n, 1 - 4 * eps)
    p = tower_profile(n)
    assert p.k == 1 and p.sizes == (expect,)
    with pytest.raises(GraphError):
        tower_profile(10**20)  # ln n < 64


def test_profile_validation():
    with pytest.raises(GraphError):
        BlockProfile((3, 4))
    with pytest.raises(GraphError):
        BlockProfile((0,))
    with pytest.raises(GraphError):
        BlockProfile(())
    assert custom_profile([1, 3, 2]).sizes == (3, 2, 1)
    with pytest.raises(GraphError):
        profile_from_spec({"kind": "nope"})


def test_expected_edge_count_examples():
    assert expected_edge_count([3, 3, 3]) == 9
    assert expected_edge_count([7]) == 0
    assert expected_edge_count([4, 2]) == 2
    assert expected_edge_count(exp_profile(729)) == 81 + 2 * 27


def _sequential_sample(sizes, seed):
    """Independent re-derivation of the documented draw order with the sequential generator."""
    r = SplitMix64(seed)
    starts = [sum(sizes[:i]) for i in range(len(sizes))]
    edges = set()
    for j in range(len(sizes)):
        for i in range(j + 1, len(sizes)):
            for a in range(sizes[j]):
                for b in range(sizes[i]):
                    x = r.next()
                    if sizes[j] == 1 or x < (1 << 64) // sizes[j]:
                        edges.add((starts[j] + a, starts[i] + b))
    return edges


@pytest.mark.parametrize("sizes,seed", [([3, 2, 1], 42), ([5, 5, 3, 2], 0), ([8, 8, 8, 8], 2**64 - 1), ([1], 3)])
def test_sample_matches_sequential_oracle(sizes, seed):
    bg = sample(custom_profile(sizes), seed)
    assert set(bg.graph.edges) == _sequential_sample(sizes, seed)


def test_sample_invariants_and_determinism():
    prof = exp_profile(729)
    a, b = sample(prof, 11), sample(prof, 11)
    assert a == b and a.graph.edges == b.graph.edges
    assert sample(prof, 12) != a
    assert a.graph.n == 351 and a.sizes == [243, 81, 27]
    for i in range(1, a.k + 1):
        assert is_independent(a.graph, a.blocks[i - 1])
    assert a.blocks[0] == tuple(range(243))


def test_single_vertex_profile():
    bg = sample(custom_profile([1]), 9)
    assert bg.graph.n == 1 and bg.graph.m == 0


def test_size_one_block_always_connects():
    # |B_j| = 1 means probability 1
    bg = sample(custom_profile([1, 1, 1]), 5)
    assert bg.graph.m == 3


def _mean_edges(sizes, seeds):
    ms = np.array([sample(custom_profile(sizes), s).graph.m for s in seeds], dtype=float)
    return ms.mean(), ms.std(ddof=1) / math.sqrt(len(ms))


def test_monte_carlo_mean_two_blocks():
    mean, se = _mean_edges([2, 1], range(10_000))
    assert abs(mean - 1) <= 3 * se


def test_monte_carlo_mean_three_blocks():
    mean, se = _mean_edges([3, 3, 3], range(10_000))
    assert abs(mean - 9) <= 3 * se


def test_chif_threshold_values():
    assert chif_threshold(3) == pytest.approx(3 / (10 * math.log(3)))
    assert chif_threshold(3) == pytest.approx(0.27307, abs=1e-5)
    assert chif_failure_bound(3) == pytest.approx((1 + 3 ** (-math.log(3))) ** 3 - 1)


@given(st.lists(st.integers(1, 6), min_size=1, max_size=4), st.integers(0, 2**64 - 1))
@settings(max_examples=60, deadline=None)
def test_sample_type_invariants(sizes, seed):
    bg = sample(custom_profile(sizes), seed)
    for u, v in bg.graph.edges:
        assert bg.block_of[u] != bg.block_of[v]
    assert bg.sizes == sorted(sizes, reverse=True)
