"""Fractional chromatic number and weight-ratio lower bounds.

The covering LP ``min sum x_I`` over independent sets ``I`` with
``sum_{I ∋ v} x_I >= 1`` is solved exactly. :func:`chi_f_colgen` prices
new columns with an exact MWIS on the current duals;
:func:`chi_f_enumerate` hands every independent set to the LP at once and
serves as the oracle for small graphs.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .blocks import BlockGraph
from .graph import (
    Graph,
    GraphError,
    connected_components,
    degeneracy,
    greedy_coloring_from_degeneracy,
    induced_subgraph,
    is_independent,
    mask_of,
    members,
)
from .simplex import RevisedSimplex
from .stable import DEFAULT_NODE_CAP, ResourceLimitError, mwis

__all__ = [
    "FractionalColoring",
    "DualWitness",
    "ChiFResult",
    "chi_f_colgen",
    "chi_f_enumerate",
    "weight_ratio_lower_bound",
    "block_weight",
    "block_weight_lower_bound",
    "independent_sets",
    "ENUMERATE_CAP",
]

ENUMERATE_CAP = 15


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class FractionalColoring:
    columns: list  # [(tuple of vertices, Fraction weight)]

    @property
    def total(self) -> Fraction:
        return sum((w for _, w in self.columns), Fraction(0))

    def coverage(self, n: int) -> list[Fraction]:
        cov = [Fraction(0)] * n
        for s, w in self.columns:
            for v in s:
                cov[v] += w
        return cov

    def is_feasible(self, g: Graph) -> bool:
        return (all(w > 0 and is_independent(g, s) for s, w in self.columns)
                and all(c >= 1 for c in self.coverage(g.n)))


@dataclass
class DualWitness:
    y: list  # Fraction per vertex

    @property
    def total(self) -> Fraction:
        return sum(self.y, Fraction(0))

    def verify(self, g: Graph, *, node_cap: int = DEFAULT_NODE_CAP) -> bool:
        """One exact MWIS call: feasible iff every independent set has ``y``-weight at most 1."""
        return all(v >= 0 for v in self.y) and mwis(g, self.y, node_cap=node_cap).value <= 1


@dataclass
class ChiFResult:
    value: Fraction
    primal: FractionalColoring
    dual: DualWitness
    method: str = "colgen"
    iterations: int = 0
    stats: dict = field(default_factory=dict)

    def check(self, g: Graph) -> bool:
        """Re-verify primal feasibility, dual feasibility and exact strong duality."""
        return (self.primal.total == self.value == self.dual.total
                and self.primal.is_feasible(g) and self.dual.verify(g))

    def to_json(self) -> dict:
        return {
            "value": _fmt(self.value),
            "columns": [[list(s), _fmt(w)] for s, w in self.primal.columns],
            "dual": {str(v): _fmt(y) for v, y in enumerate(self.dual.y) if y != 0},
            "method": self.method,
            "iterations": self.iterations,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


# covering LP helpers


def _initial_classes(g: Graph) -> list[int]:
    _, order = degeneracy(g)
    color = greedy_coloring_from_degeneracy(g, order)
    classes: dict[int, int] = {}
    for v, c in color.items():
        classes[c] = classes.get(c, 0) | (1 << v)
    return [classes[c] for c in sorted(classes)]


class _CoverLP:
    """Covering LP with surplus columns ``0..n-1`` and set columns after them.

    The starting basis takes each initial color class plus the surplus of
    every vertex that is not its class's lowest member. It covers each
    vertex exactly once, so it is feasible (and degenerate).
    """

    def __init__(self, g: Graph, init_classes: list[int]):
        n = g.n
        self.n = n
        cols = [{v: Fraction(-1)} for v in range(n)]
        costs = [0] * n
        self.sets: list[int] = []
        for c in init_classes:
            cols.append({v: Fraction(1) for v in members(c)})
            costs.append(1)
            self.sets.append(c)
        reps = {c & -c for c in init_classes}
        basis = [n + j for j in range(len(init_classes))]
        basis += [v for v in range(n) if not (1 << v) in reps]
        self.lp = RevisedSimplex([1] * n, cols, costs, basis=basis)

    def add(self, s: int) -> None:
        self.lp.add_column({v: Fraction(1) for v in members(s)}, 1)
        self.sets.append(s)

    def solve(self):
        res = self.lp.solve()
        cols = [(tuple(members(s)), res.x[self.n + j]) for j, s in enumerate(self.sets) if res.x[self.n + j] > 0]
        return res, cols


def _maximalise(g: Graph, s: int) -> int:
    blocked = s
    for v in members(s):
        blocked |= g.adj[v]
    for v in range(g.n):
        if not blocked >> v & 1:
            s |= 1 << v
            blocked |= g.adj[v] | (1 << v)
    return s


def _colgen_connected(g: Graph, *, max_iter: Optional[int], node_cap: int) -> tuple[Fraction, list, list, int]:
    master = _CoverLP(g, _initial_classes(g))
    cap = max_iter if max_iter is not None else min(10 * 2**g.n, 100_000)
    it = 0
    while True:
        res, cols = master.solve()
        y = res.y
        priced = mwis(g, y, node_cap=node_cap)
        if priced.value <= 1:
            return res.value, cols, y, it
        it += 1
        if it > cap:
            raise ResourceLimitError(
                f"column generation hit {cap} iterations; bounds so far "
                f"{_fmt(res.value / priced.value)} <= chi_f <= {_fmt(res.value)}")
        master.add(_maximalise(g, mask_of(priced.set)))


def _bipartition(g: Graph, comp: int) -> Optional[tuple[int, int]]:
    side = {}
    for root in members(comp):
        if root in side:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for u in members(g.adj[v]):
                if u not in side:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return None
    a = mask_of(v for v, s in side.items() if s == 0)
    return a, comp & ~a


def _zip_colorings(parts: list[list], total: Fraction) -> list:
    """Run component colorings side by side along ``[0, total)`` and union the active sets."""
    breaks = {Fraction(0), total}
    laid = []
    for cols in parts:
        pos = Fraction(0)
        seg = []
        for s, w in cols:
            seg.append((pos, pos + w, s))
            pos += w
            breaks.add(pos)
        laid.append(seg)
    pts = sorted(b for b in breaks if b <= total)
    merged: dict[tuple, Fraction] = {}
    cursor = [0] * len(laid)
    for a, b in zip(pts, pts[1:]):
        union: list[int] = []
        for ci, seg in enumerate(laid):
            while cursor[ci] < len(seg) and seg[cursor[ci]][1] <= a:
                cursor[ci] += 1
            if cursor[ci] < len(seg) and seg[cursor[ci]][0] <= a:
                union.extend(seg[cursor[ci]][2])
        key = tuple(sorted(union))
        if key:
            merged[key] = merged.get(key, Fraction(0)) + (b - a)
    return sorted(merged.items())


def _peel(g: Graph, comp: int) -> tuple[int, list]:
    """Strip vertices of degree <= 1 until none are left; returns the 2-core and the peel log."""
    core = comp
    log = []
    queue = [v for v in members(comp) if (g.adj[v] & comp).bit_count() <= 1]
    while queue:
        v = queue.pop()
        if not core >> v & 1:
            continue
        nb = g.adj[v] & core
        if nb.bit_count() > 1:
            continue
        core &= ~(1 << v)
        u = nb.bit_length() - 1 if nb else None
        log.append((v, u))
        if u is not None and (g.adj[u] & core).bit_count() <= 1:
            queue.append(u)
    return core, log


def _extend_pendants(columns: list, log: list) -> list:
    """Re-insert peeled vertices into a fractional coloring of total weight at least 2.

    For a vertex ``v`` whose only present neighbour is ``u``: first cut the
    coverage of ``u`` down to exactly 1, then put ``v`` into sets avoiding
    ``u`` of total weight exactly 1. Both steps split at most one column.
    """
    cols = [[set(s), w] for s, w in columns]
    for v, u in reversed(log):
        if u is not None:
            excess = sum((w for s, w in cols if u in s), Fraction(0)) - 1
            for idx in range(len(cols)):
                if excess <= 0:
                    break
                s, w = cols[idx]
                if u not in s:
                    continue
                if w <= excess:
                    s.discard(u)
                    excess -= w
                else:
                    cols[idx][1] = w - excess
                    cols.append([s - {u}, excess])
                    excess = Fraction(0)
        need = Fraction(1)
        for idx in range(len(cols)):
            if need == 0:
                break
            s, w = cols[idx]
            if u is not None and u in s:
                continue
            if w <= need:
                s.add(v)
                need -= w
            else:
                cols[idx][1] = w - need
                cols.append([s | {v}, need])
                need = Fraction(0)
        if need > 0:  # pragma: no cover - total weight below 2
            raise ArithmeticError("not enough room to re-insert a peeled vertex")
    merged: dict[tuple, Fraction] = {}
    for s, w in cols:
        if s and w > 0:
            key = tuple(sorted(s))
            merged[key] = merged.get(key, Fraction(0)) + w
    return sorted(merged.items())


class _Solver:
    def __init__(self, g: Graph, max_iter: Optional[int], node_cap: int):
        self.g = g
        self.max_iter = max_iter
        self.node_cap = node_cap
        self.iterations = 0
        self.kinds = {"isolated": 0, "bipartite": 0, "lp": 0, "peeled": 0}

    def vertex_set(self, mask: int) -> tuple[Fraction, list, dict]:
        """``chi_f(g[mask])`` with a primal coloring and a dual weighting (sparse)."""
        best = Fraction(0)
        best_dual: dict = {}
        parts = []
        for comp in connected_components(self.g, mask):
            val, cols, dual = self.component(comp)
            parts.append(cols)
            if val > best:
                best, best_dual = val, dual
        columns = parts[0] if len(parts) == 1 else _zip_colorings(parts, best)
        return best, list(columns), best_dual

    def component(self, comp: int) -> tuple[Fraction, list, dict]:
        g = self.g
        vs = members(comp)
        if len(vs) == 1:
            self.kinds["isolated"] += 1
            return Fraction(1), [((vs[0],), Fraction(1))], {vs[0]: Fraction(1)}
        bip = _bipartition(g, comp)
        if bip is not None:
            self.kinds["bipartite"] += 1
            u = vs[0]
            w = members(g.adj[u] & comp)[0]
            cols = [(tuple(members(bip[0])), Fraction(1)), (tuple(members(bip[1])), Fraction(1))]
            return Fraction(2), cols, {u: Fraction(1), w: Fraction(1)}
        core, log = _peel(g, comp)
        if log:
            # A non-bipartite component keeps its odd cycles in the 2-core, so chi_f >= 2 there.
            self.kinds["peeled"] += len(log)
            val, cols, dual = self.vertex_set(core)
            return val, _extend_pendants(cols, log), dual
        self.kinds["lp"] += 1
        sub, idx = induced_subgraph(g, vs)
        val, subcols, y, it = _colgen_connected(sub, max_iter=self.max_iter, node_cap=self.node_cap)
        self.iterations += it
        cols = [(tuple(idx[v] for v in s), x) for s, x in subcols]
        return val, cols, {idx[i]: yi for i, yi in enumerate(y) if yi != 0}


def chi_f_colgen(g: Graph, *, max_iter: Optional[int] = None, node_cap: int = DEFAULT_NODE_CAP,
                 verify: bool = True) -> ChiFResult:
    """Exact fractional chromatic number by column generation.

    Components are solved separately (``chi_f`` of a graph is the maximum
    over its components). Isolated vertices and bipartite components are
    closed-form; other components are reduced to their 2-core, which has
    the same ``chi_f``, and the core runs the restricted-master loop seeded
    with the color classes of a degeneracy-order greedy coloring. Peeled
    vertices are put back into the coloring exactly. The final duals are
    certified by one exact MWIS call on the whole graph.

    Raises
    ------
    GraphError
        If ``g`` has no vertices.
    ResourceLimitError
        If the iteration cap or the MWIS node cap is exceeded.
    """
    if g.n == 0:
        raise GraphError("chi_f is undefined for the empty graph")
    solver = _Solver(g, max_iter, node_cap)
    value, columns, dual = solver.vertex_set(g.full_mask)
    y = [dual.get(v, Fraction(0)) for v in range(g.n)]
    result = ChiFResult(value, FractionalColoring(columns), DualWitness(y), "colgen", solver.iterations,
                        {"components": solver.kinds})
    if verify and not result.check(g):  # pragma: no cover - would indicate a solver bug
        raise ArithmeticError("column generation produced an uncertified result")
    return result


def independent_sets(g: Graph) -> list[int]:
    """All nonempty independent sets as bitmasks."""
    out = []

    def extend(cur: int, cand: int) -> None:
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            nxt = cur | low
            out.append(nxt)
            extend(nxt, cand & ~g.adj[v])

    extend(0, g.full_mask)
    return out


def chi_f_enumerate(g: Graph, *, cap: int = ENUMERATE_CAP) -> ChiFResult:
    """Exact optimum of the covering LP over the full list of independent sets."""
    if g.n > cap:
        raise ResourceLimitError(f"full enumeration is capped at n={cap}, got n={g.n}")
    if g.n == 0:
        raise GraphError("chi_f is undefined for the empty graph")
    classes = _initial_classes(g)
    master = _CoverLP(g, classes)
    known = set(classes)
    for s in independent_sets(g):
        if s not in known:
            master.add(s)
    res, cols = master.solve()
    return ChiFResult(res.value, FractionalColoring(cols), DualWitness(list(res.y)), "enumerate", 0)


def weight_ratio_lower_bound(g: Graph, w: Sequence, *, node_cap: int = DEFAULT_NODE_CAP) -> Fraction:
    """``sum(w) / alpha_w(g)``, a lower bound on ``chi_f(g)`` for any nonzero ``w >= 0``."""
    fw = [Fraction(x) for x in w]
    total = sum(fw, Fraction(0))
    if total == 0:
        raise GraphError("weighting must not be identically zero")
    return total / mwis(g, fw, node_cap=node_cap).value


def block_weight(bg: BlockGraph) -> list[Fraction]:
    """``w(v) = 1/|B_i|`` for ``v`` in ``B_i``; the total weight is exactly ``k``."""
    w = [Fraction(0)] * bg.graph.n
    for b in bg.blocks:
        q = Fraction(1, len(b))
        for v in b:
            w[v] = q
    return w


def block_weight_lower_bound(bg: BlockGraph, *, node_cap: int = DEFAULT_NODE_CAP) -> Fraction:
    return weight_ratio_lower_bound(bg.graph, block_weight(bg), node_cap=node_cap)
