"""Sparsity certificates for block graphs and the independent-set extractors built on them.

Two sparsity events are checked:

* the *window* event (property A): for every block ``i``, every
  ``0 <= j < log2(i)`` and every ``2|B_{i+1}| < s <= 2|B_i|`` no subgraph
  inside ``B_{i-2^{j+1}+1} ∪ ... ∪ B_{i-2^j}`` has at most ``s`` vertices
  and at least ``3s`` edges;
* the *prefix/tail* event (``check_claim42``): (1) no nonempty subgraph of
  ``B_1 ∪ ... ∪ B_{i-1}`` with at most ``k^5 |B_i|`` vertices has
  ``|E| >= 3/2 |V|``, and (2) the tail ``B_{i+1} ∪ ... ∪ B_k`` spans at most
  ``k^4 |B_{i+1}|`` edges.

Statuses are three-valued. Certified and Violated are always sound; the
size-constrained dense-subgraph question is hard in general, so when the
unconstrained densest subgraph does not settle it and the window is too
large for exhaustive search the answer is Inconclusive.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import networkx as nx
import numpy as np

from .blocks import BlockGraph
from .fractional import _fmt
from .graph import (
    Graph,
    GraphError,
    Subgraph,
    caro_wei_greedy,
    connected_components,
    degeneracy,
    degree_weight,
    greedy_coloring_from_degeneracy,
    induced_subgraph,
    is_independent,
    is_proper_coloring,
    mask_of,
    members,
)
from .stable import DEFAULT_NODE_CAP, mwis

__all__ = [
    "Status",
    "CertificateReport",
    "CertificateDependencyError",
    "WindowSpec",
    "windows",
    "densest_subgraph",
    "check_property_A",
    "check_claim42",
    "extract_lemma31",
    "extract_lemma41",
    "verify_theorem13_weights",
    "theorem13_details",
    "recheck_report",
    "BRUTE_CAP",
]

BRUTE_CAP = 18


class Status(str, enum.Enum):
    CERTIFIED = "Certified"
    VIOLATED = "Violated"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


def _worst(statuses: Iterable[Status]) -> Status:
    statuses = list(statuses)
    if Status.VIOLATED in statuses:
        return Status.VIOLATED
    if Status.INCONCLUSIVE in statuses:
        return Status.INCONCLUSIVE
    return Status.CERTIFIED


class CertificateDependencyError(RuntimeError):
    """An extractor needed a sparsity statement that does not hold on this graph."""

    def __init__(self, claim: str, message: str):
        super().__init__(message)
        self.claim = claim


@dataclass
class CertificateReport:
    status: Status
    check: str
    witness: Optional[dict] = None
    params: dict = field(default_factory=dict)
    items: list = field(default_factory=list)
    parts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"check": self.check, "status": str(self.status), "params": self.params}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.items:
            out["items"] = self.items
        if self.parts:
            out["parts"] = {k: v.to_json() for k, v in self.parts.items()}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def _witness(g: Graph, mask: int, **extra) -> dict:
    vs = members(mask)
    es = sorted(Subgraph.induced(g, vs).edges)
    out = {"vertices": vs, "edges": [list(e) for e in es], "n_vertices": len(vs), "n_edges": len(es)}
    out.update(extra)
    return out


# ---------------------------------------------------------------- densest subgraph

def _two_core(g: Graph, mask: int) -> int:
    changed = True
    while changed and mask:
        changed = False
        for v in members(mask):
            if (g.adj[v] & mask).bit_count() < 2:
                mask &= ~(1 << v)
                changed = True
    return mask


def _max_excess_set(g: Graph, comp: int, p: int, q: int) -> int:
    """Vertex set maximising ``q e(S) - p |S|`` inside ``comp`` via one minimum cut.

    Goldberg's network with every capacity scaled by ``q``: source to ``v``
    with ``m q``, ``v`` to sink with ``m q + 2p - d_v q`` and ``q`` on each
    edge in both directions. The source side of a minimum cut is an
    optimal set. A value of zero is returned as the empty set.
    """
    vs = members(comp)
    m = g.edges_within(comp)
    net = nx.DiGraph()
    for v in vs:
        d = (g.adj[v] & comp).bit_count()
        net.add_edge("s", v, capacity=m * q)
        net.add_edge(v, "t", capacity=m * q + 2 * p - d * q)
        for u in members(g.adj[v] & comp):
            net.add_edge(v, u, capacity=q)
    cut, (side, _) = nx.minimum_cut(net, "s", "t")
    if cut >= m * q * len(vs):
        return 0
    return mask_of(x for x in side if x != "s")


def _densest_component(g: Graph, comp: int) -> tuple[Fraction, int]:
    e, v = g.edges_within(comp), comp.bit_count()
    if e == v:  # a single cycle
        return Fraction(1), comp
    best, best_set = Fraction(e, v), comp
    while True:  # Dinkelbach iteration on the density
        s = _max_excess_set(g, comp, best.numerator, best.denominator)
        if not s:
            return best, best_set
        d = Fraction(g.edges_within(s), s.bit_count())
        if d <= best:  # pragma: no cover - a positive excess always improves
            return best, best_set
        best, best_set = d, s


def densest_subgraph(g: Graph, restrict: Optional[Iterable[int]] = None) -> tuple[Fraction, tuple]:
    """Maximum of ``|E(H)| / |V(H)|`` over induced subgraphs ``H`` of ``g[restrict]``.

    Returns the exact density and a vertex set attaining it. Components of
    the 2-core are handled separately (any subgraph of density at least one
    survives the peeling), cycles in closed form and the rest by a
    parametric minimum-cut iteration.
    """
    mask = g.full_mask if restrict is None else mask_of(restrict)
    if not mask:
        raise GraphError("densest_subgraph needs a nonempty vertex set")
    core = _two_core(g, mask)
    if not core:
        # A forest: the largest tree wins with density (c - 1) / c.
        comps = connected_components(g, mask)
        big = max(comps, key=lambda c: (c.bit_count(), -(c & -c)))
        c = big.bit_count()
        if c == 1:
            return Fraction(0), (members(mask)[0],)
        return Fraction(c - 1, c), tuple(members(big))
    best, best_set = Fraction(-1), 0
    for comp in connected_components(g, core):
        d, s = _densest_component(g, comp)
        if d > best or (d == best and s.bit_count() < best_set.bit_count()):
            best, best_set = d, s
    return best, tuple(members(best_set))


def _peel_sets(g: Graph, mask: int) -> list[int]:
    """Nested vertex sets from repeatedly deleting a minimum-degree vertex."""
    out = []
    while mask:
        out.append(mask)
        v = min(members(mask), key=lambda x: ((g.adj[x] & mask).bit_count(), x))
        mask &= ~(1 << v)
    return out


def _non_isolated(g: Graph, mask: int) -> int:
    return mask_of(v for v in members(mask) if g.adj[v] & mask)


def _subset_counts(g: Graph, vs: list[int]) -> tuple[np.ndarray, np.ndarray]:
    """Vertex and induced edge counts of every subset of ``vs`` (local bitmask order)."""
    c = len(vs)
    idx = np.arange(1 << c, dtype=np.int64)
    nv = np.zeros(1 << c, dtype=np.int64)
    for a in range(c):
        nv += (idx >> a) & 1
    ne = np.zeros(1 << c, dtype=np.int64)
    pos = {v: a for a, v in enumerate(vs)}
    sub = mask_of(vs)
    for v in vs:
        for u in members(g.adj[v] & sub):
            if u < v:
                ne += ((idx >> pos[u]) & (idx >> pos[v])) & 1
    return nv, ne


def _first_hit(ok: np.ndarray, nv: np.ndarray, vs: list[int]) -> Optional[int]:
    """Smallest then lexicographically first local subset flagged in ``ok``, as a global mask."""
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    small = hits[nv[hits] == nv[hits].min()]
    for a in range(len(vs)):
        has = (small >> a) & 1 == 1
        if has.any() and not has.all():
            small = small[has]
    loc = int(small[0])
    return mask_of(vs[a] for a in range(len(vs)) if loc >> a & 1)


# ---------------------------------------------------------------- window event

@dataclass(frozen=True)
class WindowSpec:
    """Window ``(i, j)``: blocks ``lo..hi`` and admissible sizes ``s_lo < s <= s_hi``."""

    i: int
    j: int
    lo: int
    hi: int
    s_lo: int
    s_hi: int

    def mask(self, bg: BlockGraph) -> int:
        return bg.union_mask(self.lo, self.hi)

    def violating_s(self, nv: int, ne: int) -> Optional[int]:
        """Smallest ``s`` for which a subgraph with these counts breaks the window event."""
        s = max(nv, self.s_lo + 1)
        return s if s <= self.s_hi and ne >= 3 * s else None

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "blocks": [self.lo, self.hi], "s_range": [self.s_lo + 1, self.s_hi]}


def windows(bg: BlockGraph) -> list[WindowSpec]:
    out = []
    for i in range(1, bg.k + 1):
        j = 0
        while 2**j < i:
            lo = max(i - 2 ** (j + 1) + 1, 1)
            out.append(WindowSpec(i, j, lo, i - 2**j, 2 * bg.size(i + 1), 2 * bg.size(i)))
            j += 1
    return out


def _check_window(bg: BlockGraph, w: WindowSpec, brute_cap: int) -> tuple[Status, str, Optional[dict], dict]:
    g = bg.graph
    info: dict = {}
    if w.s_lo >= w.s_hi:
        return Status.CERTIFIED, "empty-s-range", None, info
    W = w.mask(bg)
    ew = g.edges_within(W)
    info["window_edges"] = ew
    # Any violation needs at least 3 (s_lo + 1) edges.
    if ew < 3 * (w.s_lo + 1):
        return Status.CERTIFIED, "edge-count", None, info
    d, wit = densest_subgraph(g, members(W))
    info["density"] = _fmt(d)
    if d < 3:
        return Status.CERTIFIED, "densest", None, info
    for cand in [mask_of(wit)] + _peel_sets(g, _two_core(g, W)):
        s = w.violating_s(cand.bit_count(), g.edges_within(cand))
        if s is not None:
            return Status.VIOLATED, "densest", _witness(g, cand, s=s, **w.to_json()), info
    vs = members(_non_isolated(g, W))
    if len(vs) > brute_cap:
        return Status.INCONCLUSIVE, "undecided", None, info
    nv, ne = _subset_counts(g, vs)
    s = np.maximum(nv, w.s_lo + 1)
    hit = _first_hit((nv > 0) & (s <= w.s_hi) & (ne >= 3 * s), nv, vs)
    if hit is None:
        return Status.CERTIFIED, "brute-force", None, info
    s = w.violating_s(hit.bit_count(), g.edges_within(hit))
    return Status.VIOLATED, "brute-force", _witness(g, hit, s=s, **w.to_json()), info


def check_property_A(bg: BlockGraph, *, brute_cap: int = BRUTE_CAP) -> CertificateReport:
    """Check the window sparsity event on every window ``(i, j)``.

    Per window: Certified when the window has too few edges or its densest
    subgraph has density below 3; Violated when the densest witness or a
    set on its min-degree peeling path fits the size window; otherwise an
    exhaustive subset scan of the window's non-isolated vertices when at
    most ``brute_cap`` of them remain, else Inconclusive.
    """
    items = []
    statuses = []
    witness = None
    for w in windows(bg):
        st, how, wit, info = _check_window(bg, w, brute_cap)
        statuses.append(st)
        items.append({**w.to_json(), "status": str(st), "method": how, **info})
        if wit is not None and witness is None:
            witness = wit
    return CertificateReport(_worst(statuses), "propertyA", witness, {"k": bg.k, "sizes": bg.sizes}, items)


# ---------------------------------------------------------------- prefix / tail event

def _prefix_item(bg: BlockGraph, i: int, brute_cap: int) -> tuple[Status, dict, Optional[dict]]:
    g, k = bg.graph, bg.k
    P = bg.union_mask(1, i - 1)
    cap = k**5 * bg.size(i)
    item = {"i": i, "size_cap": cap}
    sub, _ = induced_subgraph(g, members(P))
    item["degeneracy"] = degeneracy(sub)[0] if sub.n else 0
    if not P or g.edges_within(P) == 0:
        return Status.CERTIFIED, {**item, "method": "edgeless"}, None
    d, wit = densest_subgraph(g, members(P))
    item["density"] = _fmt(d)
    if 2 * d < 3:
        return Status.CERTIFIED, {**item, "method": "densest"}, None
    for cand in [mask_of(wit)] + _peel_sets(g, _two_core(g, P)):
        nv, ne = cand.bit_count(), g.edges_within(cand)
        if nv <= cap and 2 * ne >= 3 * nv:
            return Status.VIOLATED, {**item, "method": "densest"}, _witness(g, cand, i=i, size_cap=cap)
    vs = members(_non_isolated(g, P))
    if len(vs) > brute_cap:
        return Status.INCONCLUSIVE, {**item, "method": "undecided"}, None
    nv, ne = _subset_counts(g, vs)
    hit = _first_hit((nv > 0) & (nv <= cap) & (2 * ne >= 3 * nv), nv, vs)
    if hit is None:
        return Status.CERTIFIED, {**item, "method": "brute-force"}, None
    return Status.VIOLATED, {**item, "method": "brute-force"}, _witness(g, hit, i=i, size_cap=cap)


def check_claim42(bg: BlockGraph, *, brute_cap: int = BRUTE_CAP) -> CertificateReport:
    """Check both prefix/tail sparsity statements.

    Statement (2) is a plain edge count per ``i``. Statement (1) is decided
    per prefix like the window event, with threshold density ``3/2`` and
    size cap ``k^5 |B_i|``. Each prefix's degeneracy is reported as well;
    density below ``3/2`` everywhere forces it to be at most 2.
    """
    g, k = bg.graph, bg.k
    items1, st1, wit1 = [], [], None
    for i in range(1, k + 1):
        st, item, wit = _prefix_item(bg, i, brute_cap)
        st1.append(st)
        items1.append({**item, "status": str(st)})
        if wit is not None and wit1 is None:
            wit1 = wit
    s1 = _worst(st1)
    degen_ok = all(it["degeneracy"] <= 2 for it in items1)
    rep1 = CertificateReport(s1, "claim42.1", wit1, {"k": k, "degeneracy_at_most_2": degen_ok}, items1)

    items2, st2, wit2 = [], [], None
    for i in range(1, k + 1):
        tail = bg.union_mask(i + 1, k)
        e = g.edges_within(tail)
        limit = k**4 * bg.size(i + 1)
        st = Status.CERTIFIED if e <= limit else Status.VIOLATED
        st2.append(st)
        items2.append({"i": i, "tail_edges": e, "limit": limit, "status": str(st)})
        if st is Status.VIOLATED and wit2 is None:
            wit2 = {"i": i, "tail_blocks": [i + 1, k], "n_edges": e, "limit": limit}
    rep2 = CertificateReport(_worst(st2), "claim42.2", wit2, {"k": k}, items2)
    return CertificateReport(_worst([s1, rep2.status]), "claim42", wit1 or wit2, {"k": k, "sizes": bg.sizes},
                             parts={"statement1": rep1, "statement2": rep2})


# ---------------------------------------------------------------- extractors

def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x >= 1 else 0


def _as_subgraph(g: Graph, h) -> Subgraph:
    if isinstance(h, Subgraph):
        h.validate(g)
        return h
    return Subgraph.induced(g, h)


def extract_lemma31(bg: BlockGraph, h) -> tuple[list[int], dict]:
    """Independent set from the window decomposition of ``V(h)``.

    With ``s = |V(h)|`` and ``i`` the block with ``2|B_{i+1}| < s <= 2|B_i|``,
    the vertices of ``h`` outside the tail ``B_{i+1} ∪ ... ∪ B_k`` split
    into ``X ∩ B_i`` and one part per window ``(i, j)``. The largest part
    is kept whole if it lies in ``B_i``, otherwise reduced by the min-degree
    greedy on its induced subgraph in ``G`` (so the result is independent
    in ``G``, not just in ``h``). The report says whether
    ``|I| >= s / (112 (ceil(log2 k) + 1)^2)``; this is guaranteed when the
    window event holds.
    """
    g, k = bg.graph, bg.k
    h = _as_subgraph(g, h)
    s = len(h.vertices)
    if s == 0:
        raise GraphError("extract_lemma31 needs a nonempty subgraph")
    i = next((t for t in range(1, k + 1) if 2 * bg.size(t + 1) < s <= 2 * bg.size(t)), None)
    in_range = i is not None
    if i is None:
        i = 1  # s exceeds 2|B_1|; the decomposition still yields an independent set
    X = h.mask & ~bg.union_mask(i + 1, k)
    parts = [(-1, X & bg.block_mask(i))]
    for j in range(_ceil_log2(i)):
        parts.append((j, X & bg.union_mask(i - 2 ** (j + 1) + 1, i - 2**j)))
    j_best, part = max(parts, key=lambda p: (p[1].bit_count(), -p[0]))
    if j_best == -1:
        chosen = members(part)
    else:
        sub, back = induced_subgraph(g, members(part))
        chosen = sorted(back[v] for v in caro_wei_greedy(sub))
    denom = 112 * (_ceil_log2(k) + 1) ** 2
    n_param = bg.meta.get("profile", {}).get("n", g.n)
    try:
        ll = math.log(math.log(float(n_param)))
        flag300 = ll > 0 and denom <= 300 * ll * ll
    except (ValueError, TypeError):
        flag300 = False
    report = {
        "s": s,
        "i": i,
        "index_in_range": in_range,
        "X_size": X.bit_count(),
        "parts": {str(j): p.bit_count() for j, p in parts},
        "chosen_part": j_best,
        "I_size": len(chosen),
        "independent": is_independent(g, chosen),
        "bound_denominator": denom,
        "bound_holds": len(chosen) * denom >= s,
        "bound_denominator_le_300_loglog_sq": bool(flag300),
    }
    return chosen, report


def extract_lemma41(bg: BlockGraph, h, delta) -> tuple[list[int], list[int], dict]:
    """Independent sets ``I`` and ``J`` from a 4-coloring of ``V(h)`` minus the tail.

    ``h`` is stripped of isolated vertices first (unless it has no edges
    at all). With ``i`` the block where ``k^5 |B_{i+1}| < |V(h)| <= k^5 |B_i|``,
    ``X`` drops blocks ``i..k`` and ``X'`` drops blocks ``i+1..k``. ``G[X]``
    is 3-colored from its degeneracy order and ``X' ∩ B_i`` is the fourth
    class. ``I`` is the largest class, ``J`` the class touching the most
    edges of ``h``. Isolated vertices of ``h`` are then added to ``I``
    wherever independence in ``G`` allows.

    Raises
    ------
    CertificateDependencyError
        If ``G[X]`` is not 2-degenerate, i.e. the prefix sparsity
        statement (1) fails.
    """
    g, k = bg.graph, bg.k
    delta = Fraction(delta)
    if delta <= 0:
        raise GraphError(f"delta must be positive, got {delta}")
    h = _as_subgraph(g, h)
    if not h.vertices:
        raise GraphError("extract_lemma41 needs a nonempty subgraph")
    h0 = h.without_isolated() if h.edges else h
    nv, ne = len(h0.vertices), len(h0.edges)
    i = next((t for t in range(1, k + 1) if k**5 * bg.size(t + 1) < nv <= k**5 * bg.size(t)), None)
    in_range = i is not None
    if i is None:
        i = 1
    Xp = h0.mask & ~bg.union_mask(i + 1, k)
    X = Xp & ~bg.block_mask(i)
    sub, back = induced_subgraph(g, members(X))
    d, order = degeneracy(sub)
    if d > 2:
        raise CertificateDependencyError(
            "claim42.1", f"G[X] has degeneracy {d} > 2 at i={i}: prefix sparsity statement (1) fails")
    col = greedy_coloring_from_degeneracy(sub, order)
    classes = [0, 0, 0, Xp & bg.block_mask(i)]
    for v, c in col.items():
        classes[c] |= 1 << back[v]
    color = {v: c for c, cl in enumerate(classes) for v in members(cl)}

    def touched(cl: int) -> int:
        return sum(1 for u, v in h0.edges if cl >> u & 1 or cl >> v & 1)

    ci = max(range(4), key=lambda c: (classes[c].bit_count(), -c))
    cj = max(range(4), key=lambda c: (touched(classes[c]), -c))
    I0, J = classes[ci], classes[cj]
    I = I0
    for v in sorted(h.isolated()):
        if not g.adj[v] & I:
            I |= 1 << v
    tail = bg.union_mask(i + 1, k)
    F = g.edges_within(tail)
    F_h = sum(1 for u, v in h0.edges if tail >> u & 1 and tail >> v & 1)
    tj = touched(J)
    deg = h0.degrees()
    slack_v = k * bg.size(i + 1) * (4 + delta) <= delta * nv
    slack_e = F * (4 + delta) <= delta * ne
    concl_i = (4 + delta) * I0.bit_count() >= nv
    concl_j = (4 + delta) * tj >= ne
    report = {
        "i": i,
        "index_in_range": in_range,
        "delta": _fmt(delta),
        "h_vertices": nv,
        "h_edges": ne,
        "X_size": X.bit_count(),
        "Xp_size": Xp.bit_count(),
        "degeneracy": d,
        "class_sizes": [c.bit_count() for c in classes],
        "coloring_proper": is_proper_coloring(g, color),
        "I_class": ci,
        "I_size": I0.bit_count(),
        "I_size_with_isolated": I.bit_count(),
        "J_class": cj,
        "J_touched": tj,
        "J_degree_sum": sum(deg.get(v, 0) for v in members(J)),
        "I_independent": is_independent(g, members(I)),
        "J_independent": is_independent(g, members(J)),
        "I_quarter": 4 * I0.bit_count() >= Xp.bit_count(),
        "J_quarter": 4 * tj >= ne - F_h,
        "tail_edges": F,
        "tail_edges_in_h": F_h,
        "slack_vertices": slack_v,
        "slack_edges": slack_e,
        "I_conclusion": concl_i,
        "J_conclusion": concl_j,
        "guarantee_ok": not (slack_v and slack_e) or (concl_i and concl_j),
    }
    return members(I), members(J), report


def theorem13_details(bg: BlockGraph, h, delta, *, node_cap: int = DEFAULT_NODE_CAP) -> dict:
    """``alpha_{deg_h}(G)`` against ``|E(h)| / (4 + delta)``, plus the ``J`` witness cross-check."""
    g = bg.graph
    delta = Fraction(delta)
    h = _as_subgraph(g, h)
    w = degree_weight(g, h)
    e = len(h.edges)
    a = mwis(g, w, node_cap=node_cap).value if e else Fraction(0)
    bound = Fraction(e) / (4 + delta)
    out = {"alpha_deg": _fmt(a), "bound": _fmt(bound), "passes": a >= bound, "J_consistent": None}
    if h.vertices:
        try:
            _, J, rep = extract_lemma41(bg, h, delta)
        except CertificateDependencyError as exc:
            out["J_skipped"] = str(exc)
        else:
            out["J_consistent"] = rep["J_degree_sum"] == rep["J_touched"] and rep["J_independent"]
            out["J_touched"] = rep["J_touched"]
    return out


def verify_theorem13_weights(bg: BlockGraph, h, delta, **kw) -> bool:
    """Whether ``alpha_{deg_h}(G) >= |E(h)| / (4 + delta)`` and the ``J`` cross-check agree."""
    d = theorem13_details(bg, h, delta, **kw)
    return bool(d["passes"]) and d["J_consistent"] is not False


# ---------------------------------------------------------------- recheck

def _recheck_witness(bg: BlockGraph, check: str, wit: dict) -> list[str]:
    g = bg.graph
    errs = []
    vs = wit.get("vertices", [])
    if any(not (0 <= v < g.n) for v in vs):
        return ["witness vertex out of range"]
    vset = set(vs)
    for u, v in wit.get("edges", []):
        if u not in vset or v not in vset or not g.has_edge(u, v):
            errs.append(f"witness edge ({u}, {v}) is not an edge of G inside the witness")
    ne, nv = len(wit.get("edges", [])), len(vs)
    if check == "propertyA":
        lo, hi = wit["blocks"]
        if mask_of(vs) & ~bg.union_mask(lo, hi):
            errs.append("witness leaves its window")
        s = wit["s"]
        smin, smax = wit["s_range"]
        if not (smin <= s <= smax and nv <= s and ne >= 3 * s):
            errs.append("witness does not meet the window thresholds")
    elif check == "claim42.1":
        if mask_of(vs) & ~bg.union_mask(1, wit["i"] - 1):
            errs.append("witness leaves its prefix")
        if not (0 < nv <= wit["size_cap"] and 2 * ne >= 3 * nv):
            errs.append("witness does not meet the prefix thresholds")
    elif check == "claim42.2":
        lo, hi = wit["tail_blocks"]
        e = g.edges_within(bg.union_mask(lo, hi))
        if e != wit["n_edges"] or e <= wit["limit"]:
            errs.append("tail edge count does not exceed the limit")
    return errs


def recheck_report(bg: BlockGraph, report: dict) -> dict:
    """Re-verify a serialized report against ``bg``.

    Violated witnesses are re-verified from raw adjacency. The check is
    then rerun and its status compared with the recorded one.
    """
    errors = []

    def walk(rep: dict):
        if rep.get("status") == "Violated" and "witness" in rep and rep["check"] in ("propertyA", "claim42.1", "claim42.2"):
            errors.extend(_recheck_witness(bg, rep["check"], rep["witness"]))
        for sub in rep.get("parts", {}).values():
            walk(sub)

    walk(report)
    fresh = {"propertyA": check_property_A, "claim42": check_claim42}.get(report.get("check"))
    if fresh is not None:
        st = str(fresh(bg).status)
        if st != report.get("status"):
            errors.append(f"recorded status {report.get('status')} but recomputed {st}")
    return {"ok": not errors, "errors": errors}
