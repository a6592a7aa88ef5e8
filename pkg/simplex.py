"""Exact two-phase simplex over Fractions with Bland's anti-cycling rule."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from logger import log


class Relation(Enum):
    LE = "<="
    GE = ">="
    EQ = "="

    def flipped(self) -> Relation:
        return {Relation.LE: Relation.GE, Relation.GE: Relation.LE, Relation.EQ: Relation.EQ}[self]


class Sense(Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Row:
    """coefficients . x  (relation)  rhs"""
    coefficients: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction = Fraction(0)

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((c * v for c, v in zip(self.coefficients, x)), Fraction(0))
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """Optimize objective . x subject to rows, x >= 0."""
    variable_count: int
    rows: tuple[Row, ...]
    objective: tuple[Fraction, ...]
    sense: Sense = Sense.MINIMIZE

    def __post_init__(self):
        if len(self.objective) != self.variable_count:
            raise ValueError("objective length does not match the variable count")
        for row in self.rows:
            if len(row.coefficients) != self.variable_count:
                raise ValueError("constraint row references undeclared variables")


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: Fraction | None = None
    solution: tuple[Fraction, ...] | None = None


class _Tableau:
    """Dense simplex tableau; the last column of each row is the right-hand side."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis

    def pivot(self, r: int, col: int) -> None:
        pivot_row = self.rows[r]
        factor = pivot_row[col]
        pivot_row[:] = [v / factor for v in pivot_row]
        for i, row in enumerate(self.rows):
            if i != r and row[col] != 0:
                f = row[col]
                row[:] = [v - f * p for v, p in zip(row, pivot_row)]
        self.basis[r] = col

    def reduced_cost(self, cost: Sequence[Fraction], col: int) -> Fraction:
        return cost[col] - sum(
            (cost[b] * row[col] for b, row in zip(self.basis, self.rows) if row[col] != 0),
            Fraction(0),
        )

    def run(self, cost: Sequence[Fraction], allowed: Sequence[int]) -> LPStatus:
        """Minimize cost over the current basis using Bland's rule."""
        while True:
            in_basis = set(self.basis)
            entering = next(
                (j for j in allowed if j not in in_basis and self.reduced_cost(cost, j) < 0),
                None,
            )
            if entering is None:
                return LPStatus.OPTIMAL
            candidates = [
                (row[-1] / row[entering], self.basis[i], i)
                for i, row in enumerate(self.rows)
                if row[entering] > 0
            ]
            if not candidates:
                return LPStatus.UNBOUNDED
            _, _, leaving = min(candidates)
            self.pivot(leaving, entering)

    def value_of(self, col: int) -> Fraction:
        for b, row in zip(self.basis, self.rows):
            if b == col:
                return row[-1]
        return Fraction(0)


def solve_lp(lp: LinearProgram) -> LPResult:
    """
    Solve a linear program exactly.

    Phase 1 minimizes the sum of artificial variables to find a feasible basis;
    phase 2 optimizes the objective. Both phases use Bland's rule, so the run
    terminates and is deterministic for identical input.
    """
    n = lp.variable_count
    m = len(lp.rows)
    slack_count = sum(1 for row in lp.rows if row.relation is not Relation.EQ)

    # Column layout: originals | slacks | artificials
    first_artificial = n + slack_count
    total = first_artificial + m
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    slack = n
    artificial = first_artificial
    artificials: list[int] = []
    for row in lp.rows:
        coefficients = [Fraction(c) for c in row.coefficients]
        rhs = Fraction(row.rhs)
        relation = row.relation
        if rhs < 0:
            coefficients = [-c for c in coefficients]
            rhs = -rhs
            relation = relation.flipped()
        line = coefficients + [Fraction(0)] * (total - n) + [rhs]
        if relation is not Relation.EQ:
            line[slack] = Fraction(1) if relation is Relation.LE else Fraction(-1)
            if relation is Relation.LE:
                basis.append(slack)
                slack += 1
                rows.append(line)
                continue
            slack += 1
        line[artificial] = Fraction(1)
        basis.append(artificial)
        artificials.append(artificial)
        artificial += 1
        rows.append(line)

    tableau = _Tableau(rows, basis)
    log.debug(f"solve_lp: {n} variables, {m} rows, {len(artificials)} artificials")

    if artificials:
        phase_one_cost = [Fraction(0)] * total
        for a in artificials:
            phase_one_cost[a] = Fraction(1)
        tableau.run(phase_one_cost, range(total))
        infeasibility = sum((tableau.value_of(a) for a in artificials), Fraction(0))
        if infeasibility > 0:
            log.debug("solve_lp: infeasible")
            return LPResult(LPStatus.INFEASIBLE)
        # Drive zero-valued artificials out of the basis; rows with nothing to pivot on are redundant.
        artificial_set = set(artificials)
        i = 0
        while i < len(tableau.rows):
            if tableau.basis[i] in artificial_set:
                col = next((j for j in range(first_artificial) if tableau.rows[i][j] != 0), None)
                if col is None:
                    del tableau.rows[i]
                    del tableau.basis[i]
                    continue
                tableau.pivot(i, col)
            i += 1

    sign = Fraction(1) if lp.sense is Sense.MINIMIZE else Fraction(-1)
    cost = [sign * Fraction(c) for c in lp.objective] + [Fraction(0)] * (total - n)
    status = tableau.run(cost, range(first_artificial))
    if status is LPStatus.UNBOUNDED:
        log.debug("solve_lp: unbounded")
        return LPResult(LPStatus.UNBOUNDED)

    solution = tuple(tableau.value_of(j) for j in range(n))
    value = sum((Fraction(c) * x for c, x in zip(lp.objective, solution)), Fraction(0))
    return LPResult(LPStatus.OPTIMAL, value, solution)
