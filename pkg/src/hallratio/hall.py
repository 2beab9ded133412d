"""Hall ratio ``rho(G) = max over nonempty S of |S| / alpha(G[S])``.

Maximising over induced subgraphs is enough: deleting edges can only
raise the independence number, which lowers the ratio.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

import numpy as np

from .graph import Graph, connected_components, mask_of, members
from .stable import DEFAULT_TABLE_CAP, ResourceLimitError, alpha_of, alpha_table, mwis

__all__ = [
    "HallRatioResult",
    "hall_ratio_exact",
    "hall_ratio_lower_bound",
    "hall_ratio_via_01_weights",
    "ZERO_ONE_CAP",
]

ZERO_ONE_CAP = 16


@dataclass(frozen=True)
class HallRatioResult:
    value: Fraction
    witness: tuple
    mode: str  # "exact" or "lower-bound"
    evaluations: int = 0

    def to_json(self) -> dict:
        v = self.value
        return {
            "value": str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}",
            "witness": list(self.witness),
            "mode": self.mode,
            "evaluations": self.evaluations,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def _popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.uint8)
    for v in range(n):
        lo = 1 << v
        pc[lo:2 * lo] = pc[:lo] + 1
    return pc


def _lex_smallest(cands: np.ndarray, n: int) -> int:
    """Lexicographically smallest (as sorted vertex tuples) among equal-size sets."""
    for v in range(n):
        has = (cands >> v) & 1 == 1
        if has.any() and not has.all():
            cands = cands[has]
    return int(cands[0])


def hall_ratio_exact(g: Graph, *, cap: int = DEFAULT_TABLE_CAP, table: Optional[np.ndarray] = None) -> HallRatioResult:
    """Exact Hall ratio from the full ``alpha`` table.

    The witness is a maximising set of smallest size, ties broken
    lexicographically.
    """
    n = g.n
    if n > cap:
        raise ResourceLimitError(f"exact Hall ratio is capped at n={cap}, got n={n}")
    if n == 0:
        return HallRatioResult(Fraction(0), (), "exact", 0)
    if table is None:
        table = alpha_table(g, cap=cap)
    pc = _popcounts(n)
    best = Fraction(0)
    for a in range(1, int(table.max()) + 1):
        sel = table == a
        if sel.any():
            best = max(best, Fraction(int(pc[sel].max()), a))
    # The smallest maximising set sits at the smallest alpha level a with best * a integral.
    for a in range(best.denominator, int(table.max()) + 1, best.denominator):
        size = int(best * a)
        hit = np.flatnonzero((table == a) & (pc == size))
        if hit.size:
            return HallRatioResult(best, tuple(members(_lex_smallest(hit, n))), "exact", 1 << n)
    raise AssertionError("no witness found for the maximal ratio")  # pragma: no cover


def hall_ratio_via_01_weights(g: Graph, *, cap: int = ZERO_ONE_CAP) -> Fraction:
    """``max over 0/1 weightings w != 0 of sum(w) / alpha_w(g)`` by enumeration and exact MWIS."""
    if g.n > cap:
        raise ResourceLimitError(f"0/1 weighting enumeration is capped at n={cap}, got n={g.n}")
    best = Fraction(0)
    for bits in product((0, 1), repeat=g.n):
        total = sum(bits)
        if total == 0 or Fraction(total) <= best:
            continue
        r = Fraction(total) / mwis(g, list(bits)).value
        if r > best:
            best = r
    return best


def _core_candidates(g: Graph) -> list[int]:
    """The distinct nonempty k-cores of ``g``, as bitmasks."""
    cores = []
    alive = g.full_mask
    k = 1
    while alive:
        changed = True
        while changed:
            changed = False
            for v in members(alive):
                if (g.adj[v] & alive).bit_count() < k:
                    alive &= ~(1 << v)
                    changed = True
        if alive and (not cores or cores[-1] != alive):
            cores.append(alive)
        k += 1
    return cores


def _greedy_clique(g: Graph, start: int) -> int:
    clique = 1 << start
    cand = g.adj[start]
    while cand:
        v = max(members(cand), key=lambda x: ((g.adj[x] & cand).bit_count(), -x))
        clique |= 1 << v
        cand &= g.adj[v]
    return clique


def hall_ratio_lower_bound(g: Graph, budget: int = 200, *, node_cap: int = 10**6) -> HallRatioResult:
    """Local-search lower bound on the Hall ratio; every evaluated ratio is exact.

    Starting points are the whole graph, the densest-subgraph witness,
    the k-cores of a min-degree peeling and greedy cliques around
    high-degree vertices. The best start is then improved by single
    vertex additions, removals and swaps. ``budget`` caps the number of
    MWIS evaluations; running out returns the best value so far.
    """
    from .certificates import densest_subgraph

    if g.n == 0:
        return HallRatioResult(Fraction(0), (), "lower-bound", 0)
    calls = 0
    cache: dict[int, Fraction] = {}

    def ratio(mask: int) -> Optional[Fraction]:
        nonlocal calls
        if mask in cache:
            return cache[mask]
        if calls >= budget:
            return None
        calls += 1
        try:
            a = alpha_of(g, mask, node_cap=node_cap)
        except ResourceLimitError:
            return None
        r = Fraction(mask.bit_count(), a)
        cache[mask] = r
        return r

    starts: list[int] = [g.full_mask]
    if g.m:
        starts.append(mask_of(densest_subgraph(g, range(g.n))[1]))
    starts.extend(_core_candidates(g))
    by_deg = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    starts.extend(_greedy_clique(g, v) for v in by_deg[:5])
    for comp in connected_components(g):
        starts.append(comp)

    best_r = Fraction(1)
    best_s = 1 << by_deg[0]
    for s in dict.fromkeys(starts):
        r = ratio(s)
        if r is not None and (r > best_r or (r == best_r and s.bit_count() < best_s.bit_count())):
            best_r, best_s = r, s

    improved = True
    while improved and calls < budget:
        improved = False
        cur = best_s
        boundary = 0
        for v in members(cur):
            boundary |= g.adj[v]
        boundary &= ~cur
        moves = [cur & ~(1 << v) for v in members(cur) if cur & ~(1 << v)]
        moves += [cur | (1 << v) for v in members(boundary)]
        for s in moves:
            r = ratio(s)
            if r is None:
                break
            if r > best_r:
                best_r, best_s = r, s
                improved = True
                break
        if not improved and calls < budget:
            out_v = members(cur)
            in_v = members(boundary)
            for a in out_v:
                for b in in_v:
                    r = ratio((cur & ~(1 << a)) | (1 << b))
                    if r is None:
                        break
                    if r > best_r:
                        best_r, best_s = r, (cur & ~(1 << a)) | (1 << b)
                        improved = True
                        break
                if improved or calls >= budget:
                    break
    return HallRatioResult(best_r, tuple(members(best_s)), "lower-bound", calls)
