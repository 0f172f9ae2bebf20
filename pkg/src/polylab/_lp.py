"""Exact rational linear programming: two-phase simplex with Bland's rule.

Solves  maximize c·x  subject to  A_eq·x = b_eq,  A_ub·x <= b_ub,  x >= 0
entirely over fractions.Fraction.  Bland's pivoting rule guarantees
termination; there is no tolerance anywhere, so feasibility and optimality
verdicts are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(rows: list[list[Fraction]], obj: list[Fraction], basis: list[int], r: int, c: int) -> None:
    piv = rows[r][c]
    if piv != 1:
        rows[r] = [x / piv for x in rows[r]]
    for i, row in enumerate(rows):
        if i != r and row[c] != 0:
            f = row[c]
            rows[i] = [x - f * y for x, y in zip(row, rows[r])]
    if obj[c] != 0:
        f = obj[c]
        obj[:] = [x - f * y for x, y in zip(obj, rows[r])]
    basis[r] = c


def _run_simplex(rows: list[list[Fraction]], obj: list[Fraction], basis: list[int]) -> str:
    """Dantzig pivoting, falling back to Bland's rule once pivots pile up.

    The fallback bound makes cycling impossible while keeping the usual
    fast behaviour on non-degenerate problems.
    """
    ncols = len(obj) - 1
    budget = 3 * (len(rows) + ncols) + 50
    pivots = 0
    while True:
        enter = None
        if pivots < budget:
            best_cost = _ZERO
            for j in range(ncols):
                if obj[j] > best_cost:
                    best_cost = obj[j]
                    enter = j
        else:
            enter = next((j for j in range(ncols) if obj[j] > 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                key = (row[-1] / row[enter], basis[i])
                if best is None or key < best:
                    best = key
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(rows, obj, basis, leave, enter)
        pivots += 1


def lp_maximize(
    objective: Sequence[int | Fraction],
    num_vars: int,
    a_eq: Sequence[Sequence[int | Fraction]] = (),
    b_eq: Sequence[int | Fraction] = (),
    a_ub: Sequence[Sequence[int | Fraction]] = (),
    b_ub: Sequence[int | Fraction] = (),
) -> tuple[str, Fraction | None, list[Fraction] | None]:
    """Returns (status, value, x); value/x are None unless status is optimal."""
    n_eq, n_ub = len(a_eq), len(a_ub)
    rows: list[list[Fraction]] = []
    for coeffs, rhs in zip(a_eq, b_eq):
        rows.append([Fraction(c) for c in coeffs] + [_ZERO] * n_ub + [Fraction(rhs)])
    for k, (coeffs, rhs) in enumerate(zip(a_ub, b_ub)):
        row = [Fraction(c) for c in coeffs] + [_ZERO] * n_ub + [Fraction(rhs)]
        row[num_vars + k] = _ONE
        rows.append(row)
    for row in rows:
        if row[-1] < 0:
            row[:] = [-x for x in row]

    # phase 1: artificial variable per row without an obvious basic slack
    nbase = num_vars + n_ub
    art_of_row: list[int | None] = []
    n_art = 0
    for k, row in enumerate(rows):
        slack = num_vars + (k - n_eq) if k >= n_eq else None
        if slack is not None and row[slack] == 1:
            art_of_row.append(None)
        else:
            art_of_row.append(nbase + n_art)
            n_art += 1
    basis: list[int] = []
    for k, row in enumerate(rows):
        row[-1:-1] = [_ZERO] * n_art
        a = art_of_row[k]
        if a is None:
            basis.append(num_vars + (k - n_eq))
        else:
            row[a] = _ONE
            basis.append(a)

    total = nbase + n_art
    if n_art:
        obj = [_ZERO] * (total + 1)
        for j in range(nbase, total):
            obj[j] = Fraction(-1)
        for i, b in enumerate(basis):
            if obj[b] != 0:
                f = obj[b]
                obj = [x - f * y for x, y in zip(obj, rows[i])]
        _run_simplex(rows, obj, basis)
        if -obj[-1] != 0:
            return INFEASIBLE, None, None
        # drive leftover artificials out of the basis (or drop redundant rows)
        for i in reversed(range(len(rows))):
            if basis[i] >= nbase:
                col = next((j for j in range(nbase) if rows[i][j] != 0), None)
                if col is None:
                    del rows[i], basis[i]
                else:
                    _pivot(rows, obj, basis, i, col)
        rows = [row[:nbase] + row[-1:] for row in rows]

    obj2 = [Fraction(objective[j]) if j < num_vars else _ZERO for j in range(nbase)] + [_ZERO]
    for i, b in enumerate(basis):
        if obj2[b] != 0:
            f = obj2[b]
            obj2 = [x - f * y for x, y in zip(obj2, rows[i])]
    status = _run_simplex(rows, obj2, basis)
    if status != OPTIMAL:
        return status, None, None
    x = [_ZERO] * num_vars
    for i, b in enumerate(basis):
        if b < num_vars:
            x[b] = rows[i][-1]
    value = sum((Fraction(objective[j]) * x[j] for j in range(num_vars)), _ZERO)
    return OPTIMAL, value, x


def lp_feasible(
    num_vars: int,
    a_eq: Sequence[Sequence[int | Fraction]] = (),
    b_eq: Sequence[int | Fraction] = (),
    a_ub: Sequence[Sequence[int | Fraction]] = (),
    b_ub: Sequence[int | Fraction] = (),
) -> bool:
    status, _, _ = lp_maximize([0] * num_vars, num_vars, a_eq, b_eq, a_ub, b_ub)
    return status == OPTIMAL
