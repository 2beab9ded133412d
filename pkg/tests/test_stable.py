import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallratio.families import complete, cycle, empty, path, petersen
from hallratio.graph import Graph, GraphError, is_independent, members
from hallratio.stable import ResourceLimitError, alpha, alpha_of, alpha_table, mwis, mwis_bruteforce

from conftest import graphs, random_graph


@pytest.mark.parametrize("solver", [mwis, mwis_bruteforce])
def test_mwis_examples(solver):
    assert solver(complete(3)).value == 1
    r = solver(path(4), [1, 3, 3, 1])
    assert r.value == 4 and is_independent(path(4), r.set)
    assert solver(cycle(5), [Fraction(1, 5)] * 5).value == Fraction(2, 5)


def test_alpha_examples():
    assert alpha(cycle(5)) == 2
    assert alpha(petersen()) == 4 == mwis_bruteforce(petersen()).value
    assert alpha(empty(7)) == 7
    assert alpha(Graph(0)) == 0


def test_alpha_table_examples():
    t = alpha_table(cycle(5))
    assert t[0] == 0 and t[0b11111] == 2
    assert alpha_table(complete(4))[0b11] == 1


def test_errors():
    with pytest.raises(GraphError):
        mwis(path(3), [1, -1, 1])
    with pytest.raises(GraphError):
        mwis(path(3), [1, 1])
    with pytest.raises(ResourceLimitError):
        mwis_bruteforce(empty(21))
    with pytest.raises(ResourceLimitError):
        alpha_table(empty(5), cap=4)
    with pytest.raises(ResourceLimitError):
        mwis(random_graph(random.Random(0), 60, 0.3), node_cap=5)


def _rand_weights(r: random.Random, n: int):
    return [Fraction(r.randint(0, 12), r.randint(1, 6)) for _ in range(n)]


def test_oracle_equivalence_random():
    r = random.Random(2024)
    for trial in range(120):
        n = r.randint(1, 18)
        g = random_graph(r, n, r.choice([0.2, 0.5, 0.8]))
        w = _rand_weights(r, n)
        a, b = mwis(g, w), mwis_bruteforce(g, w)
        assert a.value == b.value
        assert is_independent(g, a.set) and sum(w[v] for v in a.set) == a.value


@given(graphs(max_n=11), st.data())
@settings(max_examples=80, deadline=None)
def test_monotonicity(g, data):
    w = [Fraction(data.draw(st.integers(0, 9)), data.draw(st.integers(1, 4))) for _ in range(g.n)]
    base = mwis(g, w).value
    non_edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    if non_edges:
        e = data.draw(st.sampled_from(non_edges))
        assert mwis(Graph(g.n, list(g.edges) + [e]), w).value <= base
    if g.n:
        v = data.draw(st.integers(0, g.n - 1))
        w2 = list(w)
        w2[v] = 0
        assert mwis(g, w2).value <= base


@given(graphs(max_n=12))
@settings(max_examples=80, deadline=None)
def test_alpha_table_matches(g):
    t = alpha_table(g)
    assert t[g.full_mask] == alpha(g)
    r = random.Random(g.m * 31 + g.n)
    for _ in range(10):
        s = r.randrange(1 << g.n) if g.n else 0
        assert t[s] == alpha_of(g, s)
