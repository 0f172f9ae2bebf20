"""Exact integer matrices and dense integer polynomials.

Matrices are immutable ``IntMatrix`` values over arbitrary-precision Python
ints.  Determinants use fraction-free Bareiss elimination, Smith normal forms
use gcd reduction with explicitly tracked unimodular transforms, and linear
systems are solved exactly over the rationals (fractions.Fraction).  No
floating point enters anywhere.

Polynomials are plain tuples of ints in ascending degree with trailing zeros
stripped, so tuple equality is polynomial equality.  The zero polynomial
is ``()``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

IntVec = tuple[int, ...]
IntPoly = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major."""

    entries: tuple[IntVec, ...]

    def __post_init__(self) -> None:
        if len({len(r) for r in self.entries}) > 1:
            raise ValueError("ragged rows")

    @staticmethod
    def from_rows(rows: Iterable[Sequence[int]]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(x) for x in row) for row in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row(self, i: int) -> IntVec:
        return self.entries[i]

    def col(self, j: int) -> IntVec:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries))) if self.entries else IntMatrix(())

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        tcols = list(zip(*other.entries))
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in tcols)
                for row in self.entries
            )
        )

    def is_square(self) -> bool:
        return self.rows == self.cols


def _rows_of(m: IntMatrix | Sequence[Sequence[int]]) -> list[list[int]]:
    entries = m.entries if isinstance(m, IntMatrix) else m
    return [list(map(int, r)) for r in entries]


def det(m: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    a = _rows_of(m)
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("det requires a square matrix")
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank(m: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, by exact Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in _rows_of(m)]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def solve_rational(
    m: IntMatrix | Sequence[Sequence[int]],
    b: Sequence[int | Fraction],
) -> list[Fraction] | None:
    """A rational solution of M·x = b, or None when the system is inconsistent.

    Free variables (if any) are set to zero; for full-column-rank M the
    solution is unique.
    """
    a = [[Fraction(x) for x in row] for row in _rows_of(m)]
    rows = len(a)
    if rows != len(b):
        raise ValueError("rhs length mismatch")
    cols = len(a[0]) if rows else 0
    rhs = [Fraction(x) for x in b]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        rhs[r], rhs[piv] = rhs[piv], rhs[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        rhs[r] /= inv
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                rhs[i] -= f * rhs[r]
        pivots.append((r, c))
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if rhs[i] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in pivots:
        x[c] = rhs[i]
    return x


def _apply_row_op(mat: list[list[int]], op: tuple, ncols: int) -> None:
    kind = op[0]
    if kind == "swap":
        _, i, j = op
        mat[i], mat[j] = mat[j], mat[i]
    elif kind == "add":
        _, i, j, c = op
        mat[i] = [x + c * y for x, y in zip(mat[i], mat[j])]
    else:  # negate
        _, i = op
        mat[i] = [-x for x in mat[i]]


def _apply_col_op(mat: list[list[int]], op: tuple) -> None:
    kind = op[0]
    if kind == "swap":
        _, i, j = op
        for row in mat:
            row[i], row[j] = row[j], row[i]
    elif kind == "add":
        _, i, j, c = op
        for row in mat:
            row[i] += c * row[j]
    else:  # negate
        _, i = op
        for row in mat:
            row[i] = -row[i]


def snf(m: IntMatrix | Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns (U, D, V) with U·M·V = D.

    U and V are unimodular; D is diagonal with nonnegative entries d_1 | d_2 | ...
    Computed by repeated gcd reduction, moving the smallest nonzero entry to the
    pivot and clearing its row and column.
    """
    d = _rows_of(m)
    nrows = len(d)
    ncols = len(d[0]) if nrows else 0
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def row_op(op: tuple) -> None:
        _apply_row_op(d, op, ncols)
        _apply_row_op(u, op, nrows)

    def col_op(op: tuple) -> None:
        _apply_col_op(d, op)
        _apply_col_op(v, op)

    t = 0
    while t < min(nrows, ncols):
        piv = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if d[i][j] != 0 and (piv is None or abs(d[i][j]) < abs(d[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            row_op(("swap", t, piv[0]))
        if piv[1] != t:
            col_op(("swap", t, piv[1]))
        if d[t][t] < 0:
            row_op(("negate", t))
        pivot = d[t][t]
        dirty = False
        for i in range(t + 1, nrows):
            if d[i][t] != 0:
                q = d[i][t] // pivot
                if q:
                    row_op(("add", i, t, -q))
                if d[i][t] != 0:
                    dirty = True
        for j in range(t + 1, ncols):
            if d[t][j] != 0:
                q = d[t][j] // pivot
                if q:
                    col_op(("add", j, t, -q))
                if d[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        culprit = next(
            (i for i in range(t + 1, nrows) if any(d[i][j] % pivot for j in range(t + 1, ncols))),
            None,
        )
        if culprit is not None:
            row_op(("add", t, culprit, 1))
            continue
        t += 1
    return IntMatrix.from_rows(u), IntMatrix.from_rows(d), IntMatrix.from_rows(v)


def invert_unimodular(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix (still integral)."""
    if not m.is_square():
        raise ValueError("not square")
    n = m.rows
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        x = solve_rational(m, e)
        if x is None or any(v.denominator != 1 for v in x):
            raise ValueError("matrix is not unimodular")
        cols.append([int(v) for v in x])
    return IntMatrix.from_rows(zip(*cols))


def kernel_basis(m: IntMatrix | Sequence[Sequence[int]]) -> list[IntVec]:
    """Basis of the saturated integer kernel {x : M·x = 0}."""
    mat = IntMatrix.from_rows(_rows_of(m))
    if mat.rows == 0:
        raise ValueError("kernel of an empty matrix is ambient-ambiguous")
    _, d, v = snf(mat)
    r = sum(1 for i in range(min(d.rows, d.cols)) if d.entries[i][i] != 0)
    return [v.col(j) for j in range(r, mat.cols)]


def sublattice_index(vectors: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by the rows inside its saturation.

    Equals the gcd of the maximal minors; 0 when the rows are dependent.
    For a lattice simplex this is its normalized volume (edge vectors as rows).
    """
    mat = IntMatrix.from_rows(vectors)
    if mat.rows == 0:
        return 1
    _, d, _ = snf(mat)
    out = 1
    for i in range(mat.rows):
        if i >= d.cols or d.entries[i][i] == 0:
            return 0
        out *= d.entries[i][i]
    return out


# ---------------------------------------------------------------------------
# dense integer polynomials


def poly_trim(coeffs: Sequence[int]) -> IntPoly:
    """Canonical form: strip trailing zeros."""
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_add(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_scale(p: Sequence[int], c: int) -> IntPoly:
    return poly_trim([c * x for x in p])


def poly_mul(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_mirror(p: Sequence[int], n: int) -> IntPoly:
    """Coefficient reversal within the window 0..n, i.e. t^n · p(1/t)."""
    p = poly_trim(p)
    if len(p) > n + 1:
        raise ValueError(f"degree {len(p) - 1} exceeds mirror window {n}")
    padded = list(p) + [0] * (n + 1 - len(p))
    return poly_trim(padded[::-1])


def poly_eval(p: Sequence[int], x: int | Fraction) -> int | Fraction:
    out: int | Fraction = 0
    for c in reversed(p):
        out = out * x + c
    return out


def poly_one_minus_t_power(k: int) -> IntPoly:
    """(1 - t)^k as a dense polynomial."""
    if k < 0:
        raise ValueError("negative exponent")
    return tuple((-1) ** a * math.comb(k, a) for a in range(k + 1))
