"""Core graph type and elementary deterministic graph algorithms.

Vertices are dense integer indices ``0..n-1``. Adjacency is stored as one
Python ``int`` bitmask per vertex, so set operations on vertex sets are
plain bitwise arithmetic.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

__all__ = [
    "Graph",
    "Subgraph",
    "GraphError",
    "mask_of",
    "members",
    "induced_subgraph",
    "degree_weight",
    "degeneracy",
    "greedy_coloring_from_degeneracy",
    "caro_wei_greedy",
    "caro_wei_bound",
    "is_independent",
    "is_proper_coloring",
    "connected_components",
    "random_subgraph",
]


class GraphError(ValueError):
    """Invalid graph, vertex set or subgraph input."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of pairs
        Unordered vertex pairs. Duplicates are merged; self-loops and
        out-of-range endpoints raise :class:`GraphError`.
    """

    __slots__ = ("_n", "_edges", "_adj")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        adj = [0] * n
        es = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            es.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._edges = frozenset(es)
        self._adj = tuple(adj)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> frozenset:
        """Edges as ``(u, v)`` pairs with ``u < v``."""
        return self._edges

    @property
    def adj(self) -> tuple:
        """Per-vertex neighbourhood bitmasks."""
        return self._adj

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def neighbors(self, v: int) -> list[int]:
        return members(self._adj[v])

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def edges_within(self, mask: int) -> int:
        """Number of edges with both ends in the vertex set ``mask``."""
        total = 0
        for v in members(mask):
            total += _popcount(self._adj[v] & mask)
        return total // 2

    def max_degree(self) -> int:
        return max((_popcount(a) for a in self._adj), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


def _popcount(x: int) -> int:
    return x.bit_count()


@dataclass(frozen=True)
class Subgraph:
    """A subgraph ``H`` of a host graph: a vertex set plus an edge subset.

    Endpoints of every edge must lie in ``vertices``; :meth:`validate`
    checks that the edges exist in the host.
    """

    vertices: frozenset
    edges: frozenset

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], extra_vertices: Iterable[int] = ()) -> "Subgraph":
        es = frozenset((min(u, v), max(u, v)) for u, v in edges)
        vs = {x for e in es for x in e} | set(extra_vertices)
        return cls(frozenset(vs), es)

    @classmethod
    def induced(cls, g: Graph, vertices: Iterable[int]) -> "Subgraph":
        vs = frozenset(vertices)
        _check_vertices(g, vs)
        m = mask_of(vs)
        es = frozenset((u, v) for v in vs for u in members(g.adj[v] & m) if u < v)
        return cls(vs, es)

    @classmethod
    def whole(cls, g: Graph) -> "Subgraph":
        return cls(frozenset(range(g.n)), g.edges)

    def validate(self, g: Graph) -> None:
        _check_vertices(g, self.vertices)
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside the subgraph's vertex set")
            if not g.has_edge(u, v):
                raise GraphError(f"edge ({u}, {v}) is not an edge of the host graph")

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    def degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def without_isolated(self) -> "Subgraph":
        return Subgraph.from_edges(self.edges)

    def isolated(self) -> frozenset:
        touched = {x for e in self.edges for x in e}
        return frozenset(self.vertices - touched)


def _check_vertices(g: Graph, vs: Iterable[int]) -> None:
    for v in vs:
        if not (0 <= v < g.n):
            raise GraphError(f"vertex {v} outside [0, {g.n})")


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``(g[s], index_map)``; ``index_map[i]`` is the original id of new vertex ``i``."""
    order = sorted(set(s))
    _check_vertices(g, order)
    pos = {v: i for i, v in enumerate(order)}
    m = mask_of(order)
    edges = [(pos[u], pos[v]) for v in order for u in members(g.adj[v] & m) if u < v]
    return Graph(len(order), edges), order


def degree_weight(g: Graph, h: Subgraph) -> list[Fraction]:
    """Weighting ``deg_H``: degree in ``h`` on ``V(h)`` and zero elsewhere."""
    h.validate(g)
    w = [Fraction(0)] * g.n
    for u, v in h.edges:
        w[u] += 1
        w[v] += 1
    return w


def degeneracy(g: Graph) -> tuple[int, list[int]]:
    """Min-degree elimination ordering and the degeneracy it witnesses.

    Ties between minimum-degree vertices go to the lowest index.
    """
    deg = [_popcount(a) for a in g.adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    alive = g.full_mask
    order = []
    d = 0
    while heap:
        dv, v = heapq.heappop(heap)
        if not alive >> v & 1 or dv != deg[v]:
            continue
        d = max(d, dv)
        order.append(v)
        alive &= ~(1 << v)
        for u in members(g.adj[v] & alive):
            deg[u] -= 1
            heapq.heappush(heap, (deg[u], u))
    return d, order


def greedy_coloring_from_degeneracy(g: Graph, ordering: Optional[Sequence[int]] = None) -> dict[int, int]:
    """Color vertices in reverse elimination order with the smallest free color.

    Each vertex sees at most ``d`` already-colored neighbours, so at most
    ``d + 1`` colors are used.
    """
    if ordering is None:
        ordering = degeneracy(g)[1]
    if sorted(ordering) != list(range(g.n)):
        raise GraphError("ordering must be a permutation of the vertex set")
    color: dict[int, int] = {}
    for v in reversed(ordering):
        used = {color[u] for u in members(g.adj[v]) if u in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def caro_wei_bound(g: Graph) -> Fraction:
    """The Turán-type bound ``n^2 / (2m + n)`` on the independence number."""
    if g.n == 0:
        return Fraction(0)
    return Fraction(g.n * g.n, 2 * g.m + g.n)


def caro_wei_greedy(g: Graph) -> list[int]:
    """Independent set from repeatedly taking a min-degree vertex and deleting its closed neighbourhood.

    Ties go to the lowest index. The result always has size at least
    ``ceil(n^2 / (2m + n))``.
    """
    deg = [_popcount(a) for a in g.adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    alive = g.full_mask
    chosen = []
    while heap:
        dv, v = heapq.heappop(heap)
        if not alive >> v & 1 or dv != deg[v]:
            continue
        chosen.append(v)
        closed = (g.adj[v] & alive) | (1 << v)
        alive &= ~closed
        for x in members(closed):
            for u in members(g.adj[x] & alive):
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return sorted(chosen)


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    m = mask_of(s)
    return all(g.adj[v] & m == 0 for v in members(m))


def is_proper_coloring(g: Graph, color: dict[int, int]) -> bool:
    return all(color[u] != color[v] for u, v in g.edges if u in color and v in color)


def connected_components(g: Graph, within: Optional[int] = None) -> list[int]:
    """Connected components of ``g[within]`` as bitmasks, ordered by lowest member."""
    rest = g.full_mask if within is None else within
    comps = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in members(frontier):
                nxt |= g.adj[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def random_subgraph(g: Graph, rng) -> Subgraph:
    """Draw a random subgraph of ``g`` using a ``numpy.random.Generator``.

    Mixes three shapes so that sparse hosts still yield subgraphs with
    edges: an induced subgraph on a random vertex sample, a random edge
    sample with its endpoints, and a breadth-first ball around a vertex.
    """
    if g.n == 0:
        return Subgraph(frozenset(), frozenset())
    kind = int(rng.integers(3))
    edges = g.sorted_edges()
    if kind == 0 or not edges:
        p = float(rng.uniform(0.05, 1.0))
        vs = [v for v in range(g.n) if rng.random() < p] or [int(rng.integers(g.n))]
        return Subgraph.induced(g, vs)
    if kind == 1:
        p = float(rng.uniform(0.1, 1.0))
        chosen = [e for e in edges if rng.random() < p] or [edges[int(rng.integers(len(edges)))]]
        return Subgraph.from_edges(chosen)
    u, _ = edges[int(rng.integers(len(edges)))]
    ball = 1 << u
    for _ in range(int(rng.integers(1, 6))):
        nxt = ball
        for v in members(ball):
            nxt |= g.adj[v]
        ball = nxt
    sub = Subgraph.induced(g, members(ball))
    keep = [e for e in sorted(sub.edges) if rng.random() < 0.8] or sorted(sub.edges)
    return Subgraph.from_edges(keep)
