"""Exact linear programming over rationals: primal simplex with Bland's rule.

Models are maximization problems with <= rows and every variable boxed to
[0, 1].  Box upper bounds become explicit rows, so the all-slack basis is
feasible from the start (all right-hand sides are non-negative) and no
phase-1 is needed.  Bland's pivoting rule guarantees termination, and exact
Fraction arithmetic means the reported vertex is a true basic solution: at
most (number of rows) variables sit strictly between their bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LpRow:
    name: str
    coeffs: tuple[Fraction, ...]
    rhs: Fraction


@dataclass(frozen=True)
class LpModel:
    """max objective . x  subject to  rows (<=)  and  0 <= x <= 1."""

    var_names: tuple[str, ...]
    objective: tuple[Fraction, ...]
    rows: tuple[LpRow, ...]


@dataclass(frozen=True)
class BasicSolution:
    var_names: tuple[str, ...]
    values: tuple[Fraction, ...]
    objective: Fraction
    iterations: int

    def fractional_vars(self) -> tuple[str, ...]:
        return tuple(
            name for name, v in zip(self.var_names, self.values) if 0 < v < 1
        )


def simplex_solve(model: LpModel) -> BasicSolution:
    """Maximize over the box-and-rows polytope, exactly.

    Entering variable: the lowest-index negative reduced cost; leaving row:
    the ratio test with ties broken by the lowest basis variable index.  Both
    choices together are Bland's rule, so degenerate pivots cannot cycle.
    """
    n = len(model.var_names)
    box_rows = [
        LpRow(name=f"ub_{name}", coeffs=tuple(Fraction(int(j == i)) for j in range(n)), rhs=Fraction(1))
        for i, name in enumerate(model.var_names)
    ]
    rows = list(model.rows) + box_rows
    r = len(rows)

    # Tableau columns: n structural vars, r slacks, then the rhs.
    tableau = []
    for i, row in enumerate(rows):
        line = [Fraction(c) for c in row.coeffs]
        line += [Fraction(int(j == i)) for j in range(r)]
        line.append(Fraction(row.rhs))
        tableau.append(line)
    reduced = [-Fraction(c) for c in model.objective] + [Fraction(0)] * (r + 1)
    basis = [n + i for i in range(r)]

    iterations = 0
    while True:
        entering = next((j for j in range(n + r) if reduced[j] < 0), None)
        if entering is None:
            break
        pivot_row = None
        best_ratio = None
        for i in range(r):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[pivot_row])
                ):
                    best_ratio = ratio
                    pivot_row = i
        if pivot_row is None:
            raise ValueError("unbounded LP; the box constraints should prevent this")

        iterations += 1
        pivot = tableau[pivot_row][entering]
        tableau[pivot_row] = [x / pivot for x in tableau[pivot_row]]
        for i in range(r):
            if i != pivot_row and tableau[i][entering] != 0:
                factor = tableau[i][entering]
                tableau[i] = [x - factor * y for x, y in zip(tableau[i], tableau[pivot_row])]
        if reduced[entering] != 0:
            factor = reduced[entering]
            reduced = [x - factor * y for x, y in zip(reduced, tableau[pivot_row])]
        basis[pivot_row] = entering

    values = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            values[var] = tableau[i][-1]
    objective = sum((c * v for c, v in zip(model.objective, values)), Fraction(0))
    return BasicSolution(
        var_names=model.var_names,
        values=tuple(values),
        objective=objective,
        iterations=iterations,
    )
