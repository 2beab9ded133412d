"""Small named graphs used as fixtures and in the demos."""

from __future__ import annotations

from itertools import combinations

from .graph import Graph


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph(n)


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    """``K_{1,leaves}`` with the centre at vertex 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def mycielskian(g: Graph) -> Graph:
    """Mycielski construction: shadow vertices ``n..2n-1`` and apex ``2n``."""
    n = g.n
    edges = list(g.edges)
    for u, v in g.edges:
        edges.append((u, n + v))
        edges.append((v, n + u))
    edges.extend((n + i, 2 * n) for i in range(n))
    return Graph(2 * n + 1, edges)


def grotzsch() -> Graph:
    return mycielskian(cycle(5))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


def k4_minus_edge() -> Graph:
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
