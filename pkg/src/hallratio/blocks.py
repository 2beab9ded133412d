"""Unbalanced random block graphs and their block-size profiles.

Vertices of block ``B_1`` get the lowest indices, then ``B_2`` and so on.
Every cross-block pair ``u in B_i``, ``v in B_j`` with ``i > j`` becomes an
edge independently with probability ``1/|B_j|``. Blocks are 1-indexed in
the public API, matching the usual ``B_1, ..., B_k`` notation; block
indices outside ``[1, k]`` denote the empty set.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import mpmath
import numpy as np

from .graph import Graph, GraphError, mask_of
from .rng import MASK64, draws

__all__ = [
    "BlockProfile",
    "BlockGraph",
    "exp_profile",
    "tower_profile",
    "param_profile",
    "custom_profile",
    "profile_from_spec",
    "sample",
    "expected_edge_count",
    "as_fraction",
    "chif_threshold",
    "chif_failure_bound",
]

Number = Union[int, float, str, Fraction]

# Work in chunks so a single block pair never allocates more than this many draws.
_CHUNK = 1 << 22


def as_fraction(x: Number) -> Fraction:
    """Convert to an exact rational; floats are read as their decimal repr (0.08 -> 2/25)."""
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class BlockProfile:
    """Block sizes ``|B_1| >= ... >= |B_k|`` plus where they came from."""

    sizes: tuple
    kind: str = "custom"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.sizes:
            raise GraphError("a profile needs at least one block")
        if any((not isinstance(s, int)) or s < 1 for s in self.sizes):
            raise GraphError(f"block sizes must be positive integers, got {self.sizes}")
        if any(a < b for a, b in zip(self.sizes, self.sizes[1:])):
            raise GraphError(f"block sizes must be nonincreasing, got {self.sizes}")

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def n_vertices(self) -> int:
        return sum(self.sizes)

    @property
    def meets_chif_bound_hypotheses(self) -> bool:
        """Whether ``k >= 3`` and ``|B_k| >= k``, the hypotheses of the fractional chromatic bound."""
        return self.k >= 3 and self.sizes[-1] >= self.k

    def to_json(self) -> dict:
        out = {"kind": self.kind, "sizes": list(self.sizes)}
        out.update(self.params)
        return out


def custom_profile(sizes: Sequence[int]) -> BlockProfile:
    return BlockProfile(tuple(sorted((int(s) for s in sizes), reverse=True)), "custom", {})


def exp_profile(n: int) -> BlockProfile:
    """``k = floor(log_3(n) / 2)`` blocks with ``|B_i| = ceil(n / 3^i)``."""
    n = int(n)
    if n < 9:
        raise GraphError(f"exp profile needs n >= 9 so that k >= 1, got n={n}")
    k = 0
    while 9 ** (k + 1) <= n:
        k += 1
    sizes = sorted((-(-n // 3**i) for i in range(1, k + 1)), reverse=True)
    return BlockProfile(tuple(sizes), "exp", {"n": n})


def _ceil_int_power(n: int, e: Fraction) -> int:
    """``ceil(n ** e)`` for integer ``n >= 1`` and rational ``0 < e``, computed exactly."""
    a, b = e.numerator, e.denominator
    with mpmath.workdps(50):
        guess = int(mpmath.ceil(mpmath.mpf(n) ** (mpmath.mpf(a) / b)))
    if b > 2000:
        return guess
    target = n**a
    m = max(guess, 1)
    while m > 1 and (m - 1) ** b >= target:
        m -= 1
    while m**b < target:
        m += 1
    return m


def param_profile(n: Number, q: Number, eps: Number, k: int) -> BlockProfile:
    """Doubly exponential profile ``|B_i| = ceil(n^(1 - q^i * eps))`` for ``i = 1..k``.

    With ``q=4`` and ``eps = 1/sqrt(log n)`` this is the tower-shaped regime;
    other values keep the same shape at reachable ``n``.
    """
    k = int(k)
    qf, ef = as_fraction(q), as_fraction(eps)
    if k < 1:
        raise GraphError(f"k must be >= 1, got {k}")
    if qf < 2:
        raise GraphError(f"q must be >= 2, got {qf}")
    if ef <= 0:
        raise GraphError(f"eps must be positive, got {ef}")
    n_int = int(n)
    if n_int != as_fraction(n) or n_int < 1:
        raise GraphError(f"n must be a positive integer, got {n}")
    sizes = []
    for i in range(1, k + 1):
        e = 1 - qf**i * ef
        if e <= 0:
            raise GraphError(f"exponent 1 - q^{i}*eps = {e} is not positive; the profile is empty at block {i}")
        sizes.append(_ceil_int_power(n_int, e))
    sizes.sort(reverse=True)
    return BlockProfile(tuple(sizes), "param", {"n": n_int, "q": str(qf), "eps": str(ef), "k": k})


def tower_profile(n: Number) -> BlockProfile:
    """``q = 4``, ``eps = 1/sqrt(ln n)`` and ``k = floor(log_4(ln n) / 3)``.

    ``k >= 1`` needs ``ln n >= 64``, so sizes here are astronomically
    large; the profile is still computable even when sampling is not.
    """
    with mpmath.workdps(60):
        nm = mpmath.mpf(int(n)) if isinstance(n, int) else mpmath.mpf(n)
        if nm <= mpmath.e:
            raise GraphError(f"tower profile needs n > e, got {n}")
        ln = mpmath.log(nm)
        eps = 1 / mpmath.sqrt(ln)
        k = int(mpmath.floor(mpmath.log(ln, 4) / 3))
        if k < 1:
            raise GraphError(f"tower profile has k = 0 at n={n}; it needs ln(n) >= 64")
        sizes = []
        for i in range(1, k + 1):
            e = 1 - mpmath.mpf(4) ** i * eps
            if e <= 0:
                raise GraphError(f"exponent at block {i} is not positive")
            sizes.append(int(mpmath.ceil(nm**e)))
        eps_str = mpmath.nstr(eps, 30)
    sizes.sort(reverse=True)
    return BlockProfile(tuple(sizes), "tower", {"n": str(n), "q": "4", "eps": eps_str, "k": k})


def profile_from_spec(spec: dict) -> BlockProfile:
    """Build a profile from ``{"kind": "exp"|"tower"|"param"|"custom", ...}``."""
    kind = spec.get("kind")
    if kind == "exp":
        return exp_profile(spec["n"])
    if kind == "tower":
        return tower_profile(spec["n"])
    if kind == "param":
        return param_profile(spec["n"], spec.get("q", 4), spec["eps"], spec["k"])
    if kind == "custom":
        return custom_profile(spec["sizes"])
    raise GraphError(f"unknown profile kind {kind!r}")


class BlockGraph:
    """A graph with an ordered partition into independent blocks of nonincreasing size."""

    def __init__(self, graph: Graph, blocks: Sequence[Sequence[int]], meta: Optional[dict] = None):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        seen = sorted(v for b in blocks for v in b)
        if seen != list(range(graph.n)):
            raise GraphError("blocks must partition the vertex set 0..n-1")
        if any(len(a) < len(b) for a, b in zip(blocks, blocks[1:])):
            raise GraphError("blocks must be ordered by nonincreasing size")
        if any(len(b) == 0 for b in blocks):
            raise GraphError("blocks must be nonempty")
        block_of = [0] * graph.n
        masks = []
        for i, b in enumerate(blocks, start=1):
            for v in b:
                block_of[v] = i
            masks.append(mask_of(b))
        for u, v in graph.edges:
            if block_of[u] == block_of[v]:
                raise GraphError(f"edge ({u}, {v}) lies inside block {block_of[u]}")
        self.graph = graph
        self.blocks = blocks
        self.meta = dict(meta or {})
        self.block_of = block_of
        self._masks = masks

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def size(self, i: int) -> int:
        """``|B_i|`` with ``B_i`` empty outside ``[1, k]``."""
        return len(self.blocks[i - 1]) if 1 <= i <= self.k else 0

    def block_mask(self, i: int) -> int:
        return self._masks[i - 1] if 1 <= i <= self.k else 0

    def union_mask(self, lo: int, hi: int) -> int:
        """Bitmask of ``B_lo ∪ ... ∪ B_hi`` (inclusive, clipped to ``[1, k]``)."""
        m = 0
        for i in range(max(lo, 1), min(hi, self.k) + 1):
            m |= self._masks[i - 1]
        return m

    def to_profile(self) -> BlockProfile:
        return BlockProfile(tuple(self.sizes), self.meta.get("profile", {}).get("kind", "custom"))

    def __eq__(self, other) -> bool:
        return isinstance(other, BlockGraph) and self.graph == other.graph and self.blocks == other.blocks

    def __repr__(self) -> str:
        return f"BlockGraph(sizes={self.sizes}, m={self.graph.m})"


def _threshold(size: int) -> Optional[int]:
    """``floor(2^64 / size)``, or ``None`` when every draw succeeds (size 1)."""
    return None if size == 1 else (1 << 64) // size


def sample(profile: BlockProfile, seed: int) -> BlockGraph:
    """Sample the random block graph for ``profile`` from a 64-bit ``seed``.

    Draw order: block pairs ``(j, i)`` with ``j < i`` in lexicographic order,
    then ``v in B_j`` (outer) and ``u in B_i`` (inner) by increasing index.
    The edge ``uv`` is present iff its draw is below ``floor(2^64 / |B_j|)``.
    """
    seed &= MASK64
    sizes = list(profile.sizes)
    starts = np.cumsum([0] + sizes)
    edges_u: list[np.ndarray] = []
    edges_v: list[np.ndarray] = []
    counter = 0
    for j in range(len(sizes)):
        t = _threshold(sizes[j])
        for i in range(j + 1, len(sizes)):
            bj, bi = sizes[j], sizes[i]
            rows_per_chunk = max(1, _CHUNK // bi)
            for r0 in range(0, bj, rows_per_chunk):
                r1 = min(bj, r0 + rows_per_chunk)
                cnt = (r1 - r0) * bi
                if t is None:
                    hit = np.ones(cnt, dtype=bool)
                else:
                    hit = draws(seed, counter + r0 * bi, cnt) < np.uint64(t)
                idx = np.flatnonzero(hit)
                edges_v.append(starts[j] + r0 + idx // bi)
                edges_u.append(starts[i] + idx % bi)
            counter += bj * bi
    if edges_u:
        uu = np.concatenate(edges_u).tolist()
        vv = np.concatenate(edges_v).tolist()
    else:
        uu = vv = []
    g = Graph(int(starts[-1]), zip(vv, uu))
    blocks = [range(int(starts[i]), int(starts[i + 1])) for i in range(len(sizes))]
    meta = {"profile": profile.to_json(), "seed": seed}
    return BlockGraph(g, blocks, meta)


def expected_edge_count(profile: Union[BlockProfile, Sequence[int]]) -> Fraction:
    """``sum over j < i of |B_i||B_j| / |B_j|``, i.e. ``sum_i (i-1)|B_i|``."""
    sizes = profile.sizes if isinstance(profile, BlockProfile) else tuple(profile)
    return Fraction(sum(i * s for i, s in enumerate(sizes)))


def chif_threshold(k: int) -> float:
    """``k / (10 ln k)``, the fractional chromatic lower bound that block graphs reach w.h.p.; needs ``k >= 2``."""
    return k / (10 * math.log(k)) if k >= 2 else float("nan")


def chif_failure_bound(k: int) -> float:
    """``(1 + k^(-ln k))^k - 1``, the failure probability bound attached to :func:`chif_threshold`."""
    if k < 2:
        return float("nan")
    return (1 + k ** (-math.log(k))) ** k - 1
