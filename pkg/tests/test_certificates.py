import json
import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallratio.blocks import BlockGraph, custom_profile, exp_profile, param_profile, sample
from hallratio.certificates import (
    CertificateDependencyError,
    Status,
    check_claim42,
    check_property_A,
    densest_subgraph,
    extract_lemma31,
    extract_lemma41,
    recheck_report,
    theorem13_details,
    verify_theorem13_weights,
    windows,
)
from hallratio.families import complete, cycle, petersen
from hallratio.graph import Graph, GraphError, Subgraph, degeneracy, induced_subgraph, is_independent, mask_of, random_subgraph

from conftest import graphs, random_graph


def _block_graph(sizes, rng, p):
    starts = [sum(sizes[:i]) for i in range(len(sizes))]
    blocks = [list(range(s, s + z)) for s, z in zip(starts, sizes)]
    of = {v: i for i, b in enumerate(blocks) for v in b}
    n = sum(sizes)
    es = [(u, v) for u in range(n) for v in range(u + 1, n) if of[u] != of[v] and rng.random() < p]
    return BlockGraph(Graph(n, es), blocks)


def _brute_density(g: Graph, within=None):
    vs = list(range(g.n)) if within is None else list(within)
    best = Fraction(0)
    for r in range(1, len(vs) + 1):
        for s in combinations(vs, r):
            best = max(best, Fraction(g.edges_within(mask_of(s)), r))
    return best


# ------------------------------------------------------------ densest subgraph

def test_densest_examples():
    assert densest_subgraph(complete(4)) == (Fraction(3, 2), (0, 1, 2, 3))
    assert densest_subgraph(cycle(5))[0] == 1
    assert densest_subgraph(petersen())[0] == Fraction(3, 2) == _brute_density(petersen())
    assert densest_subgraph(Graph(3))[0] == 0
    with pytest.raises(GraphError):
        densest_subgraph(Graph(3), [])


def test_densest_matches_brute_force():
    r = random.Random(77)
    for trial in range(80):
        n = r.randint(1, 14 if trial % 10 == 0 else 10)
        g = random_graph(r, n, r.choice([0.15, 0.3, 0.5, 0.8]))
        d, wit = densest_subgraph(g)
        assert d == _brute_density(g)
        assert Fraction(g.edges_within(mask_of(wit)), len(wit)) == d


def test_densest_restricted():
    g = complete(6)
    assert densest_subgraph(g, [0, 1, 2])[0] == 1
    assert set(densest_subgraph(g, [4, 5])[1]) == {4, 5}


# ------------------------------------------------------------ window event

def _window_oracle(bg: BlockGraph):
    """Literal check over every (i, j, s) and every vertex subset of the window."""
    g = bg.graph
    bad = []
    for w in windows(bg):
        W = [v for v in range(g.n) if w.lo <= bg.block_of[v] <= w.hi]
        for s in range(w.s_lo + 1, w.s_hi + 1):
            for r in range(1, min(s, len(W)) + 1):
                if any(g.edges_within(mask_of(c)) >= 3 * s for c in combinations(W, r)):
                    bad.append((w.i, w.j, s))
                    break
    return bad


def test_windows_shape():
    bg = sample(exp_profile(729), 0)
    got = [(w.i, w.j, w.lo, w.hi) for w in windows(bg)]
    assert got == [(2, 0, 1, 1), (3, 0, 2, 2), (3, 1, 1, 1)]
    w = windows(bg)[0]
    assert (w.s_lo, w.s_hi) == (2 * 27 * 0 + 2 * 27, 2 * 81)


def test_property_a_zero_edges():
    bg = sample(custom_profile([1]), 0)
    assert check_property_A(bg).status is Status.CERTIFIED
    bg = BlockGraph(Graph(12), [range(0, 6), range(6, 10), range(10, 12)])
    assert check_property_A(bg).status is Status.CERTIFIED


def _k7_graph():
    # 16 blocks of size 4; a K7 on one vertex from each of blocks 1..7.
    blocks = [list(range(4 * b, 4 * b + 4)) for b in range(16)]
    k7 = [4 * b for b in range(7)]
    return BlockGraph(Graph(64, combinations(k7, 2)), blocks)


def test_property_a_k7_violation():
    bg = _k7_graph()
    rep = check_property_A(bg)
    assert rep.status is Status.VIOLATED
    w = rep.witness
    assert w["n_vertices"] == 7 and w["n_edges"] == 21 and w["s"] == 7
    assert (w["i"], w["j"]) == (16, 3)
    assert recheck_report(bg, rep.to_json()) == {"ok": True, "errors": []}
    assert sorted(w["vertices"]) == [4 * b for b in range(7)]


def test_recheck_catches_tampering():
    bg = _k7_graph()
    rep = check_property_A(bg).to_json()
    rep["witness"]["edges"][0] = [1, 2]
    out = recheck_report(bg, rep)
    assert not out["ok"]
    rep = check_property_A(bg).to_json()
    rep["status"] = "Certified"
    assert not recheck_report(bg, rep)["ok"]


def test_property_a_inconclusive_then_brute_force():
    left, right = list(range(7)), list(range(7, 14))
    es = [(u, v) for u in left for v in right if v - 7 != u]  # K_{7,7} minus a perfect matching
    bg = BlockGraph(Graph(26, es), [left, right, list(range(14, 20)), list(range(20, 26))])
    assert densest_subgraph(bg.graph)[0] == 3
    assert check_property_A(bg, brute_cap=0).status is Status.INCONCLUSIVE
    rep = check_property_A(bg)
    assert rep.status is Status.CERTIFIED
    assert any(it["method"] == "brute-force" for it in rep.items)
    assert _window_oracle(bg) == []


def test_property_a_never_contradicts_brute_force():
    r = random.Random(5)
    seen = set()
    for trial in range(40):
        sizes = r.choice([[6, 6, 6, 6], [7, 6, 6, 6], [6, 6, 5, 5, 2], [4, 4, 3, 3, 3]])
        bg = _block_graph(sizes, r, r.choice([0.5, 0.85, 0.95, 1.0]))
        rep = check_property_A(bg)
        bad = _window_oracle(bg)
        seen.add(rep.status)
        if rep.status is Status.CERTIFIED:
            assert bad == []
        elif rep.status is Status.VIOLATED:
            assert bad
            assert recheck_report(bg, rep.to_json())["ok"]
    assert {Status.CERTIFIED, Status.VIOLATED} <= seen


def test_property_a_exp_profile_seeds():
    for seed in range(5):
        bg = sample(exp_profile(729), seed)
        rep = check_property_A(bg)
        assert rep.status is Status.CERTIFIED
        assert len(rep.items) == 3


# ------------------------------------------------------------ prefix / tail event

def _prefix_oracle(bg: BlockGraph, i: int) -> bool:
    g, k = bg.graph, bg.k
    P = [v for v in range(g.n) if bg.block_of[v] <= i - 1]
    cap = k**5 * bg.size(i)
    for r in range(1, min(len(P), cap) + 1):
        for c in combinations(P, r):
            if 2 * g.edges_within(mask_of(c)) >= 3 * r:
                return True
    return False


def test_claim42_zero_edges():
    bg = BlockGraph(Graph(6), [[0, 1, 2], [3, 4], [5]])
    rep = check_claim42(bg)
    assert rep.status is Status.CERTIFIED
    assert rep.parts["statement1"].status is Status.CERTIFIED
    assert rep.parts["statement2"].status is Status.CERTIFIED


def test_claim42_prefix_k4():
    bg = BlockGraph(Graph(5, combinations(range(4), 2)), [[v] for v in range(5)])
    rep = check_claim42(bg)
    s1 = rep.parts["statement1"]
    assert s1.status is Status.VIOLATED
    assert s1.witness["i"] == 5 and s1.witness["n_vertices"] == 4 and s1.witness["n_edges"] == 6
    assert recheck_report(bg, rep.to_json())["ok"]
    # |B_5| = 1 and the tail below block 1 holds all six edges: 6 <= 5^4 |B_2|
    assert rep.parts["statement2"].status is Status.CERTIFIED


def test_claim42_statement2_golden():
    bg = sample(custom_profile([3, 3, 3]), 0)
    items = check_claim42(bg).parts["statement2"].items
    # recount straight from the edge list
    for it in items:
        i = it["i"]
        direct = sum(1 for u, v in bg.graph.edges if bg.block_of[u] > i and bg.block_of[v] > i)
        assert it["tail_edges"] == direct
        assert it["limit"] == 81 * bg.size(i + 1)
    assert [(it["tail_edges"], it["limit"]) for it in items] == GOLDEN_TAIL


GOLDEN_TAIL = [(2, 243), (0, 243), (0, 0)]


def test_claim42_statement2_violation():
    # k = 3, tail of i = 1 holds K_{82,82}: 6724 edges > 3^4 * 82
    b = [list(range(82 * t, 82 * t + 82)) for t in range(3)]
    es = [(u, v) for u in b[1] for v in b[2]]
    bg = BlockGraph(Graph(246, es), b)
    s2 = check_claim42(bg).parts["statement2"]
    assert s2.status is Status.VIOLATED
    assert s2.items[0]["tail_edges"] == 6724 and s2.items[0]["limit"] == 6642
    assert s2.items[1]["status"] == "Certified"


def test_claim42_statement1_never_contradicts_brute_force():
    r = random.Random(8)
    for trial in range(30):
        sizes = r.choice([[3, 3, 2, 2], [2, 2, 2, 2, 1], [4, 3, 3, 1]])
        bg = _block_graph(sizes, r, r.choice([0.3, 0.6, 0.9]))
        s1 = check_claim42(bg).parts["statement1"]
        for it in s1.items:
            bad = _prefix_oracle(bg, it["i"])
            if it["status"] == "Certified":
                assert not bad
            elif it["status"] == "Violated":
                assert bad
        if s1.status is Status.CERTIFIED:
            assert s1.params["degeneracy_at_most_2"]


def test_prefix_degeneracy_follows_certification():
    for seed in range(5):
        bg = sample(param_profile(10**4, 2, 0.1, 3), seed)
        s1 = check_claim42(bg).parts["statement1"]
        assert s1.status is Status.CERTIFIED
        for it in s1.items:
            P = [v for v in range(bg.graph.n) if bg.block_of[v] < it["i"]]
            assert degeneracy(induced_subgraph(bg.graph, P)[0])[0] == it["degeneracy"] <= 2


# ------------------------------------------------------------ window extractor

def test_lemma31_inside_one_block():
    bg = sample(exp_profile(729), 1)
    h = Subgraph.induced(bg.graph, bg.blocks[1][:10])
    I, rep = extract_lemma31(bg, h)
    assert I == list(bg.blocks[1][:10]) and rep["bound_holds"]


def test_lemma31_single_edge_and_errors():
    bg = sample(exp_profile(729), 1)
    u, v = bg.graph.sorted_edges()[0]
    I, rep = extract_lemma31(bg, Subgraph.from_edges([(u, v)]))
    assert len(I) >= 1 and rep["bound_holds"] and is_independent(bg.graph, I)
    with pytest.raises(GraphError):
        extract_lemma31(bg, Subgraph(frozenset(), frozenset()))


def test_lemma31_whole_graph_on_certified_seed():
    for seed in range(50):
        bg = sample(exp_profile(729), seed)
        if check_property_A(bg).status is Status.CERTIFIED:
            break
    I, rep = extract_lemma31(bg, Subgraph.whole(bg.graph))
    assert rep["independent"] and is_independent(bg.graph, I)
    assert rep["bound_denominator"] == 112 * (2 + 1) ** 2
    assert len(I) * rep["bound_denominator"] >= bg.graph.n
    assert rep["bound_holds"]


@given(st.integers(0, 2**64 - 1), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_lemma31_always_independent(seed, sub_seed):
    bg = sample(custom_profile([27, 9, 3]), seed)
    h = random_subgraph(bg.graph, np.random.default_rng(sub_seed))
    if h.vertices:
        I, rep = extract_lemma31(bg, h)
        assert is_independent(bg.graph, I) and set(I) <= set(h.vertices)


# ------------------------------------------------------------ coloring extractor

def test_lemma41_inside_first_block():
    bg = sample(param_profile(10**4, 2, 0.1, 3), 0)
    h = Subgraph.induced(bg.graph, bg.blocks[0][:12])
    I, J, rep = extract_lemma41(bg, h, Fraction(1, 2))
    assert I == list(bg.blocks[0][:12]) and rep["Xp_size"] == 12


def test_lemma41_single_cross_edge():
    bg = sample(param_profile(10**4, 2, 0.1, 3), 0)
    u, v = next((u, v) for u, v in bg.graph.sorted_edges() if {bg.block_of[u], bg.block_of[v]} == {1, 2})
    I, J, rep = extract_lemma41(bg, Subgraph.from_edges([(u, v)]), Fraction(1, 2))
    assert rep["J_touched"] == 1 and rep["J_quarter"]
    assert rep["class_sizes"].count(0) == 2  # the endpoints land in different classes


def test_lemma41_whole_graph_fixed_seed():
    bg = sample(param_profile(10**4, 2, 0.1, 3), 7)
    h = Subgraph.whole(bg.graph)
    I, J, rep = extract_lemma41(bg, h, Fraction(1, 2))
    h0 = h.without_isolated()
    # direct recount
    tail = bg.union_mask(rep["i"] + 1, bg.k)
    Xp = [v for v in h0.vertices if not tail >> v & 1]
    assert rep["Xp_size"] == len(Xp)
    assert 4 * rep["I_size"] >= len(Xp)
    touched = sum(1 for a, b in h0.edges if a in set(J) or b in set(J))
    assert rep["J_touched"] == touched == rep["J_degree_sum"]
    assert is_independent(bg.graph, I) and is_independent(bg.graph, J)
    assert rep["coloring_proper"] and rep["guarantee_ok"]


def test_lemma41_dependency_error():
    bg = BlockGraph(Graph(5, combinations(range(4), 2)), [[v] for v in range(5)])
    with pytest.raises(CertificateDependencyError) as exc:
        extract_lemma41(bg, Subgraph.whole(bg.graph), Fraction(1, 2))
    assert exc.value.claim == "claim42.1"
    with pytest.raises(GraphError):
        extract_lemma41(bg, Subgraph.whole(bg.graph), 0)


@given(st.integers(0, 2**64 - 1), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_lemma41_outputs_independent(seed, sub_seed):
    bg = sample(custom_profile([30, 8, 2]), seed)
    h = random_subgraph(bg.graph, np.random.default_rng(sub_seed))
    if not h.vertices:
        return
    try:
        I, J, rep = extract_lemma41(bg, h, Fraction(1, 2))
    except CertificateDependencyError:
        return
    assert is_independent(bg.graph, I) and is_independent(bg.graph, J)
    assert rep["J_degree_sum"] == rep["J_touched"]
    assert rep["guarantee_ok"]


# ------------------------------------------------------------ degree weights

def test_theorem13_single_edge():
    bg = BlockGraph(Graph(3, [(0, 2)]), [[0, 1], [2]])
    d = theorem13_details(bg, Subgraph.from_edges([(0, 2)]), Fraction(1, 2))
    assert Fraction(d["alpha_deg"]) == 1 and d["passes"]
    assert verify_theorem13_weights(bg, Subgraph.from_edges([(0, 2)]), Fraction(1, 2))


def test_theorem13_c5():
    c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    bg = BlockGraph(Graph(8, c5), [[0, 2, 5], [1, 3, 6], [4, 7]])
    d = theorem13_details(bg, Subgraph.from_edges(c5), Fraction(1, 2))
    assert Fraction(d["alpha_deg"]) == 4 and d["passes"]


def test_theorem13_random_subgraphs_when_certified():
    for seed in range(3):
        bg = sample(param_profile(10**4, 2, 0.1, 3), seed)
        if check_claim42(bg).status is not Status.CERTIFIED:
            continue
        rng = np.random.default_rng(seed)
        for _ in range(50):
            h = random_subgraph(bg.graph, rng)
            assert verify_theorem13_weights(bg, h, Fraction(1, 2))


def test_reports_serialize():
    bg = _k7_graph()
    for rep in (check_property_A(bg), check_claim42(bg)):
        back = json.loads(rep.dumps())
        assert back["status"] == str(rep.status)
        assert recheck_report(bg, back)["ok"]
