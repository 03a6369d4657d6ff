"""Exact covering-LP solver.

Solves ``min sum(x) s.t. sum_{S ni v} x_S >= demand[v], x >= 0`` over a
family of 0/1 columns with a two-phase revised simplex in rational
arithmetic.  Bland's rule is used for both the entering and the leaving
variable, so degenerate problems cannot cycle.

The basis has one row per demand entry, which keeps the basis inverse small
even when the column family (all maximal independent sets, say) is large.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class LpError(RuntimeError):
    pass


@dataclass
class CoveringSolution:
    value: Fraction
    weights: list[Fraction]  # one entry per input column
    pivots: int


class _RevisedSimplex:
    # variable layout: [0, m) structural, [m, m+n) surplus, [m+n, m+2n) artificial

    def __init__(self, columns: Sequence[frozenset[int]], demand: Sequence[Fraction]):
        self.cols = [sorted(c) for c in columns]
        self.n = len(demand)
        self.m = len(columns)
        self.b = [Fraction(t) for t in demand]
        n = self.n
        self.basis = [self.m + n + i for i in range(n)]
        self.binv = [[ONE if i == k else ZERO for k in range(n)] for i in range(n)]
        self.xb = list(self.b)
        self.pivots = 0

    def column(self, j: int) -> dict[int, int]:
        if j < self.m:
            return {v: 1 for v in self.cols[j]}
        if j < self.m + self.n:
            return {j - self.m: -1}
        return {j - self.m - self.n: 1}

    def ftran(self, j: int) -> list[Fraction]:
        col = self.column(j)
        return [sum((row[k] * a for k, a in col.items()), ZERO) for row in self.binv]

    def duals(self, cost: Callable[[int], Fraction]) -> list[Fraction]:
        cb = [cost(j) for j in self.basis]
        return [
            sum((cb[i] * self.binv[i][k] for i in range(self.n) if cb[i]), ZERO)
            for k in range(self.n)
        ]

    def pivot(self, r: int, j: int, d: list[Fraction]) -> None:
        piv = d[r]
        theta = self.xb[r] / piv
        for i in range(self.n):
            if i != r and d[i]:
                self.xb[i] -= theta * d[i]
        self.xb[r] = theta
        prow = [a / piv for a in self.binv[r]]
        self.binv[r] = prow
        for i in range(self.n):
            if i != r and d[i]:
                f = d[i]
                self.binv[i] = [a - f * p for a, p in zip(self.binv[i], prow)]
        self.basis[r] = j
        self.pivots += 1

    def run(self, cost: Callable[[int], Fraction], nvars: int) -> None:
        while True:
            y = self.duals(cost)
            in_basis = set(self.basis)
            entering = None
            for j in range(nvars):
                if j in in_basis:
                    continue
                col = self.column(j)
                reduced = cost(j) - sum((y[k] * a for k, a in col.items()), ZERO)
                if reduced < 0:
                    entering = j
                    break
            if entering is None:
                return
            d = self.ftran(entering)
            best = None
            for i in range(self.n):
                if d[i] > 0:
                    key = (self.xb[i] / d[i], self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise LpError("covering LP is unbounded")
            self.pivot(best[1], entering, d)

    def solve(self) -> CoveringSolution:
        m, n = self.m, self.n
        art0 = m + n
        self.run(lambda j: ONE if j >= art0 else ZERO, m + 2 * n)
        if any(self.xb[i] for i in range(n) if self.basis[i] >= art0):
            raise LpError("columns do not cover every demand entry")
        # drive zero-level artificials out of the basis
        for r in range(n):
            if self.basis[r] < art0:
                continue
            in_basis = set(self.basis)
            for j in range(m + n):
                if j in in_basis:
                    continue
                d = self.ftran(j)
                if d[r]:
                    self.pivot(r, j, d)
                    break
            else:
                raise LpError("degenerate artificial could not be removed")
        self.run(lambda j: ONE if j < m else ZERO, m + n)
        weights = [ZERO] * m
        for i, j in enumerate(self.basis):
            if j < m:
                weights[j] = self.xb[i]
        return CoveringSolution(sum(weights, ZERO), weights, self.pivots)


def solve_covering_lp(
    columns: Sequence[frozenset[int]], demand: Sequence[Fraction]
) -> CoveringSolution:
    """Minimum total weight on ``columns`` covering ``demand`` exactly.

    ``columns`` are subsets of ``range(len(demand))``.
    """
    for c in columns:
        if any(not 0 <= v < len(demand) for v in c):
            raise ValueError("column refers to a row outside the demand vector")
    if any(Fraction(t) < 0 for t in demand):
        raise ValueError("demands must be nonnegative")
    if not demand:
        return CoveringSolution(ZERO, [ZERO] * len(columns), 0)
    return _RevisedSimplex(columns, demand).solve()
