"""Exact maximum-weight independent sets.

:func:`mwis` is a branch and bound on bitset adjacency. Rational weights
are scaled to integers by their common denominator, so every bound and
pruning comparison is exact. :func:`mwis_bruteforce` and
:func:`alpha_table` are exhaustive oracles for small graphs.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .graph import Graph, GraphError, connected_components, members

__all__ = [
    "ResourceLimitError",
    "MwisResult",
    "mwis",
    "alpha",
    "alpha_of",
    "mwis_bruteforce",
    "alpha_table",
    "DEFAULT_NODE_CAP",
    "DEFAULT_TABLE_CAP",
]

DEFAULT_NODE_CAP = 10**7
DEFAULT_TABLE_CAP = 26
BRUTEFORCE_CAP = 20


class ResourceLimitError(RuntimeError):
    """A configured size or work cap was exceeded."""


@dataclass(frozen=True)
class MwisResult:
    set: tuple
    value: Fraction

    def __iter__(self):
        return iter((self.set, self.value))


def _scaled_weights(g: Graph, w: Optional[Sequence]) -> tuple[list[int], int]:
    if w is None:
        return [1] * g.n, 1
    if len(w) != g.n:
        raise GraphError(f"weighting has {len(w)} entries for {g.n} vertices")
    if all(type(x) is int for x in w):
        bad = next((v for v, x in enumerate(w) if x < 0), None)
        if bad is not None:
            raise GraphError(f"negative weight {w[bad]} at vertex {bad}")
        return list(w), 1
    fr = [x if isinstance(x, Fraction) else Fraction(x) for x in w]
    if all(x.denominator == 1 for x in fr):
        fr = [x.numerator for x in fr]
        bad = next((v for v, x in enumerate(fr) if x < 0), None)
        if bad is not None:
            raise GraphError(f"negative weight {fr[bad]} at vertex {bad}")
        return fr, 1
    for v, x in enumerate(fr):
        if x < 0:
            raise GraphError(f"negative weight {x} at vertex {v}")
    den = 1
    for x in fr:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return [int(x * den) for x in fr], den


def _clique_cover_bound(P: int, order: list[int], adj: tuple, wt: list[int]) -> int:
    """Sum over a greedy clique partition of ``P`` of each clique's heaviest weight."""
    cliques: list[int] = []
    bound = 0
    for v in order:
        if not P >> v & 1:
            continue
        av = adj[v]
        for idx, c in enumerate(cliques):
            if c & ~av == 0:
                cliques[idx] = c | (1 << v)
                break
        else:
            cliques.append(1 << v)
            bound += wt[v]
    return bound


def _bnb_component(P: int, adj: tuple, wt: list[int], order: list[int], cap: list) -> tuple[int, int]:
    """Exact MWIS of the component ``P``; returns ``(value, set_mask)``."""
    best_val = 0
    best_set = 0
    # Greedy start: heaviest-first maximal independent set.
    cand = P
    gset = 0
    gval = 0
    for v in order:
        if cand >> v & 1:
            gset |= 1 << v
            gval += wt[v]
            cand &= ~(adj[v] | (1 << v))
    best_val, best_set = gval, gset

    stack = [(P, 0, 0)]
    while stack:
        P, cur, cset = stack.pop()
        cap[0] -= 1
        if cap[0] < 0:
            raise ResourceLimitError("MWIS branch-node cap exceeded")
        # Vertices with no neighbour left in P join for free; pendant vertices
        # at least as heavy as their only neighbour are safe to take too.
        changed = True
        while changed and P:
            changed = False
            for v in members(P):
                if not P >> v & 1:
                    continue
                nb = adj[v] & P
                if nb == 0:
                    cur += wt[v]
                    cset |= 1 << v
                    P &= ~(1 << v)
                    changed = True
                elif nb & (nb - 1) == 0 and wt[v] >= wt[nb.bit_length() - 1]:
                    cur += wt[v]
                    cset |= 1 << v
                    P &= ~(nb | (1 << v))
                    changed = True
        if not P:
            if cur > best_val:
                best_val, best_set = cur, cset
            continue
        if cur + _clique_cover_bound(P, order, adj, wt) <= best_val:
            continue
        bv = -1
        bd = -1
        for v in members(P):
            d = (adj[v] & P).bit_count()
            if d > bd:
                bv, bd = v, d
        bit = 1 << bv
        # Exclude pushed first so the include branch is explored first.
        stack.append((P & ~bit, cur, cset))
        stack.append((P & ~(adj[bv] | bit), cur + wt[bv], cset | bit))
    return best_val, best_set


def mwis(g: Graph, w: Optional[Sequence] = None, *, node_cap: int = DEFAULT_NODE_CAP) -> MwisResult:
    """Maximum-weight independent set of ``g`` under nonnegative weights ``w``.

    ``w=None`` means unit weights. The returned ``value`` is exact. The
    search runs per connected component of the positive-weight vertices,
    branching on a maximum residual degree vertex (lowest index on ties)
    and pruning with a greedy weighted clique cover.

    Raises
    ------
    GraphError
        On negative weights or a weighting of the wrong length.
    ResourceLimitError
        If more than ``node_cap`` branch nodes are needed.
    """
    wt, den = _scaled_weights(g, w)
    positive = 0
    for v in range(g.n):
        if wt[v] > 0:
            positive |= 1 << v
    order = sorted(members(positive), key=lambda v: (-wt[v], v))
    cap = [node_cap]
    total = 0
    chosen = 0
    comps = connected_components(g, positive)
    where = {}
    for ci, comp in enumerate(comps):
        for v in members(comp):
            where[v] = ci
    orders: list[list[int]] = [[] for _ in comps]
    for v in order:
        orders[where[v]].append(v)
    for comp, corder in zip(comps, orders):
        val, s = _bnb_component(comp, g.adj, wt, corder, cap)
        total += val
        chosen |= s
    return MwisResult(tuple(members(chosen)), Fraction(total, den))


def alpha(g: Graph, **kw) -> int:
    """Independence number."""
    return int(mwis(g, None, **kw).value)


def alpha_of(g: Graph, mask: int, **kw) -> int:
    """``alpha(g[mask])`` without building the induced graph."""
    w = [1 if mask >> v & 1 else 0 for v in range(g.n)]
    return int(mwis(g, w, **kw).value)


def _subset_masks(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def mwis_bruteforce(g: Graph, w: Optional[Sequence] = None, *, cap: int = BRUTEFORCE_CAP) -> MwisResult:
    """Exhaustive scan of all ``2^n`` vertex subsets (numpy-vectorised)."""
    if g.n > cap:
        raise ResourceLimitError(f"brute force is capped at n={cap}, got n={g.n}")
    wt, den = _scaled_weights(g, w)
    masks = _subset_masks(g.n)
    ok = np.ones(masks.shape, dtype=bool)
    for u, v in g.edges:
        ok &= ((masks >> u) & (masks >> v) & 1) == 0
    big = sum(wt) >= 2**62
    vals = np.zeros(masks.shape, dtype=object if big else np.int64)
    for v in range(g.n):
        if wt[v]:
            vals = vals + ((masks >> v) & 1).astype(vals.dtype) * wt[v]
    vals = np.where(ok, vals, -1)
    idx = int(np.argmax(vals))
    return MwisResult(tuple(members(idx)), Fraction(int(vals[idx]), den))


def alpha_table(g: Graph, *, cap: int = DEFAULT_TABLE_CAP) -> np.ndarray:
    """``table[S] = alpha(g[S])`` for every vertex subset ``S`` (as a bitmask index).

    Uses ``alpha(S) = max(alpha(S - v), 1 + alpha(S - N[v]))``. Sets are
    filled in blocks by their highest member ``v`` so each block is one
    vectorised step; the recurrence holds for any member.
    """
    n = g.n
    if n > cap:
        raise ResourceLimitError(f"alpha table is capped at n={cap}, got n={n}")
    table = np.zeros(1 << n, dtype=np.uint8)
    step = 1 << 20
    for v in range(n):
        lo = 1 << v
        keep = np.int64(~g.adj[v] & (lo - 1))
        for start in range(0, lo, step):
            rest = np.arange(start, min(lo, start + step), dtype=np.int64)
            table[lo + rest] = np.maximum(table[rest], table[rest & keep] + 1)
    return table
