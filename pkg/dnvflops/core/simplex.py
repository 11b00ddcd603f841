"""
Exact rational phase-one simplex

Decides feasibility of {x >= 0, a.x >= b for inequality rows, a.x = b for
equality rows} over Fractions with Bland's rule, so results are exact and
deterministic.
"""
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..utils.logger import attach_to_log

logger = attach_to_log(name=__name__)

Row = Tuple[Sequence, object]


class SimplexTableau:
    """Phase-one tableau; artificial columns never re-enter the basis"""

    def __init__(self, inequalities: Sequence[Row], equalities: Sequence[Row], n: int):
        self.n = n
        self.slacks = len(inequalities)
        self.m = len(inequalities) + len(equalities)
        self.width = n + self.slacks + self.m
        self.A: List[List[Fraction]] = []
        self.b: List[Fraction] = []

        rows = [(row, rhs, True) for row, rhs in inequalities] + [(row, rhs, False) for row, rhs in equalities]
        for i, (row, rhs, is_inequality) in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"Row {i} has {len(row)} coefficients, expected {n}")
            line = [Fraction(x) for x in row] + [Fraction(0)] * (self.slacks + self.m)
            if is_inequality:
                line[n + i] = Fraction(-1)
            rhs = Fraction(rhs)
            if rhs < 0:
                line = [-x for x in line]
                rhs = -rhs
            line[n + self.slacks + i] = Fraction(1)
            self.A.append(line)
            self.b.append(rhs)

        self.basis = [n + self.slacks + i for i in range(self.m)]
        artificial = n + self.slacks
        self.cost = [sum((self.A[i][j] for i in range(self.m)), Fraction(0)) if j < artificial else Fraction(0)
                     for j in range(self.width)]
        self.pivots = 0

    def is_artificial(self, j: int) -> bool:
        return j >= self.n + self.slacks

    def pivot(self, i: int, j: int) -> None:
        piv = self.A[i][j]
        row = [x / piv for x in self.A[i]]
        self.A[i] = row
        self.b[i] = self.b[i] / piv
        for k in range(self.m):
            if k == i:
                continue
            f = self.A[k][j]
            if f:
                self.A[k] = [x - f * y if y else x for x, y in zip(self.A[k], row)]
                self.b[k] -= f * self.b[i]
        f = self.cost[j]
        if f:
            self.cost = [x - f * y if y else x for x, y in zip(self.cost, row)]
        self.basis[i] = j
        self.pivots += 1

    def bland_step(self) -> str:
        basic = set(self.basis)
        entering = next((j for j in range(self.width)
                         if not self.is_artificial(j) and j not in basic and self.cost[j] > 0), None)
        if entering is None:
            return 'optimal'
        candidates = [(self.b[i] / self.A[i][entering], self.basis[i], i)
                      for i in range(self.m) if self.A[i][entering] > 0]
        if not candidates:
            return 'unbounded'
        _, _, leaving = min(candidates)
        self.pivot(leaving, entering)
        return 'go_on'

    def solve(self) -> Optional[List[Fraction]]:
        while True:
            status = self.bland_step()
            if status != 'go_on':
                break
        infeasibility = sum((self.b[i] for i, j in enumerate(self.basis) if self.is_artificial(j)), Fraction(0))
        logger.debug(f"Phase one finished after {self.pivots} pivots, residual {infeasibility}")
        if infeasibility > 0:
            return None
        x = [Fraction(0)] * self.n
        for i, j in enumerate(self.basis):
            if j < self.n:
                x[j] = self.b[i]
        return x


def feasible_point(inequalities: Sequence[Row], equalities: Sequence[Row] = (),
                   n: Optional[int] = None) -> Optional[List[Fraction]]:
    """A non-negative solution of the system, or None when there is none"""
    if n is None:
        rows = list(inequalities) + list(equalities)
        if not rows:
            return []
        n = len(rows[0][0])
    if not inequalities and not equalities:
        return [Fraction(0)] * n
    return SimplexTableau(inequalities, equalities, n).solve()
