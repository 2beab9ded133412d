"""Exact rational revised simplex.

Solves ``min c.x  s.t.  A x = b, x >= 0`` exactly with Bland's rule, so it
terminates on degenerate problems. Columns are sparse ``{row: value}``
dicts and can be appended between solves, which is what column
generation needs: the current basis stays primal feasible when a column
is added, so the next solve warm-starts from it.

Arithmetic runs on ``gmpy2.mpq`` when available (``Fraction`` otherwise);
inputs and outputs are :class:`fractions.Fraction`. The basis inverse is
kept as sparse rows.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

__all__ = ["LPError", "Infeasible", "Unbounded", "LPResult", "RevisedSimplex", "solve_lp"]


def _q(x) -> "_Q":
    if isinstance(x, Fraction):
        return _Q(x.numerator, x.denominator)
    return _Q(x)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class LPError(ArithmeticError):
    pass


class Infeasible(LPError):
    pass


class Unbounded(LPError):
    pass


@dataclass
class LPResult:
    value: Fraction
    x: list  # primal values, one per column
    y: list  # row duals, ``c_B B^-1``
    basis: list
    pivots: int


class RevisedSimplex:
    """Revised simplex with an explicit exact basis inverse.

    Parameters
    ----------
    b : sequence of rationals
        Right-hand side, one entry per row. Must be nonnegative when no
        starting basis is given.
    columns, costs
        Initial columns (sparse dicts) and their costs.
    basis : list of column indices, optional
        A primal feasible starting basis. Without one, a phase-one problem
        with artificial columns is solved first.
    """

    def __init__(self, b: Sequence, columns: Sequence[Mapping[int, Fraction]] = (),
                 costs: Sequence = (), basis: Optional[Sequence[int]] = None):
        self.m = len(b)
        self.b = [_q(v) for v in b]
        self.cols: list[dict] = []
        self.costs: list = []
        self.pivots = 0
        self._artificial: set = set()
        for col, c in zip(columns, costs):
            self.add_column(col, c)
        if basis is None:
            self._phase_one()
        else:
            self._set_basis(list(basis))

    def add_column(self, col: Mapping[int, Fraction], cost) -> int:
        self.cols.append({int(r): _q(v) for r, v in col.items() if v != 0})
        self.costs.append(_q(cost))
        return len(self.cols) - 1

    def _set_basis(self, basis: list[int]) -> None:
        if len(basis) != self.m:
            raise LPError(f"basis has {len(basis)} columns, need {self.m}")
        m = self.m
        # Sparse Gauss-Jordan on [B | I]; row r of the result is basis position r.
        mat: list[dict] = [{} for _ in range(m)]
        for j, cidx in enumerate(basis):
            for r, v in self.cols[cidx].items():
                mat[r][j] = v
        inv: list[dict] = [{i: _Q(1)} for i in range(m)]
        for c in range(m):
            piv = next((r for r in range(c, m) if c in mat[r]), None)
            if piv is None:
                raise LPError("starting basis is singular")
            mat[c], mat[piv] = mat[piv], mat[c]
            inv[c], inv[piv] = inv[piv], inv[c]
            f = mat[c][c]
            if f != 1:
                mat[c] = {j: v / f for j, v in mat[c].items()}
                inv[c] = {j: v / f for j, v in inv[c].items()}
            for r in range(m):
                if r != c and c in mat[r]:
                    g = mat[r][c]
                    _axpy(mat[r], -g, mat[c])
                    _axpy(inv[r], -g, inv[c])
        self.basis = list(basis)
        self.binv = inv
        self.xb = [sum((v * self.b[i] for i, v in row.items()), _Q(0)) for row in inv]
        if any(v < 0 for v in self.xb):
            raise Infeasible("starting basis is not primal feasible")

    def _ftran(self, col: Mapping[int, object]) -> list:
        out = []
        for row in self.binv:
            s = _Q(0)
            for r, v in col.items():
                e = row.get(r)
                if e is not None:
                    s += e * v
            out.append(s)
        return out

    def _duals(self, costs: Sequence) -> dict:
        y: dict = {}
        for pos, cidx in enumerate(self.basis):
            c = costs[cidx]
            if c != 0:
                _axpy(y, c, self.binv[pos])
        return y

    def duals(self) -> list[Fraction]:
        y = self._duals(self.costs)
        return [_frac(y.get(i, _Q(0))) for i in range(self.m)]

    def _pivot(self, r: int, q: int, u: list) -> None:
        ur = u[r]
        prow = {j: v / ur for j, v in self.binv[r].items()}
        xr = self.xb[r] / ur
        for i in range(self.m):
            if i == r or u[i] == 0:
                continue
            _axpy(self.binv[i], -u[i], prow)
            self.xb[i] -= u[i] * xr
        self.binv[r] = prow
        self.xb[r] = xr
        self.basis[r] = q
        self.pivots += 1

    def _iterate(self, costs: Sequence, allowed: Optional[set] = None) -> None:
        """Run Bland's rule to optimality for ``costs``."""
        while True:
            y = self._duals(costs)
            inbasis = set(self.basis)
            q = None
            for j, col in enumerate(self.cols):
                if j in inbasis or (allowed is not None and j not in allowed):
                    continue
                d = costs[j]
                for r, v in col.items():
                    yr = y.get(r)
                    if yr is not None:
                        d -= yr * v
                if d < 0:
                    q = j
                    break
            if q is None:
                return
            u = self._ftran(self.cols[q])
            r = None
            best = None
            for i in range(self.m):
                if u[i] > 0:
                    ratio = self.xb[i] / u[i]
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[r]):
                        best, r = ratio, i
            if r is None:
                raise Unbounded(f"column {q} improves the objective without bound")
            self._pivot(r, q, u)

    def _phase_one(self) -> None:
        if any(v < 0 for v in self.b):
            raise LPError("phase one needs b >= 0; negate rows first")
        n_real = len(self.cols)
        art = [self.add_column({r: 1}, 0) for r in range(self.m)]
        self._set_basis(art)
        phase_costs = [_Q(0)] * n_real + [_Q(1)] * self.m
        self._iterate(phase_costs)
        if sum((self.xb[p] for p, c in enumerate(self.basis) if c >= n_real), _Q(0)) != 0:
            raise Infeasible("phase one optimum is positive")
        # Drive zero-level artificials out where some real column can replace them;
        # any that remain sit on redundant rows and never leave level zero.
        for pos in range(self.m):
            if self.basis[pos] < n_real:
                continue
            row = self.binv[pos]
            inbasis = set(self.basis)
            for j in range(n_real):
                if j in inbasis:
                    continue
                if sum((row.get(r, 0) * v for r, v in self.cols[j].items()), _Q(0)) != 0:
                    self._pivot(pos, j, self._ftran(self.cols[j]))
                    break
        self._artificial = set(art)

    def solve(self) -> LPResult:
        allowed = None
        if self._artificial:
            allowed = set(range(len(self.cols))) - self._artificial
        self._iterate(self.costs, allowed)
        x = [Fraction(0)] * len(self.cols)
        for pos, cidx in enumerate(self.basis):
            x[cidx] = _frac(self.xb[pos])
        value = sum((_frac(self.costs[j]) * x[j] for j in range(len(x)) if x[j] != 0), Fraction(0))
        return LPResult(value, x, self.duals(), list(self.basis), self.pivots)


def _axpy(target: dict, a, src: dict) -> None:
    """``target += a * src`` on sparse dicts, dropping exact zeros."""
    for j, v in src.items():
        t = target.get(j)
        nv = a * v if t is None else t + a * v
        if nv == 0:
            target.pop(j, None)
        else:
            target[j] = nv


def solve_lp(c: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    """Dense convenience wrapper: ``min c.x  s.t.  a_eq x = b_eq, x >= 0``."""
    rows = [list(map(Fraction, r)) for r in a_eq]
    b = [Fraction(v) for v in b_eq]
    flipped = [v < 0 for v in b]
    for i in range(len(b)):
        if flipped[i]:
            rows[i] = [-a for a in rows[i]]
            b[i] = -b[i]
    ncol = len(c)
    cols = [{i: rows[i][j] for i in range(len(rows)) if rows[i][j] != 0} for j in range(ncol)]
    lp = RevisedSimplex(b, cols, list(c))
    res = lp.solve()
    res.x = res.x[:ncol]
    res.y = [-v if f else v for v, f in zip(res.y, flipped)]
    return res
