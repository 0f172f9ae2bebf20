"""Delta vectors, Eulerian polynomials, and the two-parameter A-family.

The delta vector of a d-dimensional lattice polytope is recovered from the
counting function by the usual alternating binomial window,

    delta_k = sum_{m=0}^{k} (-1)^m binom(d+1, m) * count((k-m) P),

so everything here reduces to exact lattice point counts.  On top of that
sit the combinatorial predicates (unimodal, symmetric, alternatingly
increasing) and the closed-form polynomial families used by the
parallelepiped machinery: Eulerian polynomials and the A(i, j) polynomials,
which interpolate between Eul(i) at j = -1 and t*Eul(i) at j = i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import exactmath as xm
from . import polytope as pt
from .exactmath import IntPoly

#: formal value of Eul(-1, t); the A-family recursion wants t*Eul(-1, 1/t) = t.
FORMAL_T_INVERSE = "t**-1"


@dataclass(frozen=True)
class DeltaReport:
    """A delta vector plus the headline facts read off from it."""

    window: IntPoly  # coefficients delta_0 .. delta_d
    dim: int
    degree: int  # largest s with delta_s != 0
    codegree: int  # d + 1 - degree
    normalized_volume: int
    unimodal: bool
    symmetric: bool
    alternatingly_increasing: bool


def is_unimodal(window: IntPoly) -> bool:
    """Rises (weakly), then falls (weakly)."""
    i = 0
    n = len(window)
    while i + 1 < n and window[i] <= window[i + 1]:
        i += 1
    while i + 1 < n and window[i] >= window[i + 1]:
        i += 1
    return i == n - 1


def is_symmetric(window: IntPoly, dim: int) -> bool:
    """delta_k == delta_{d-k} for all k (indices through the dimension)."""
    padded = list(window) + [0] * (dim + 1 - len(window))
    return padded == padded[::-1]


def is_alternatingly_increasing(window: IntPoly, degree: int) -> bool:
    """h_0 <= h_s <= h_1 <= h_{s-1} <= ... up to the middle.

    Interleaves the window from both ends toward the middle and checks that
    the interleaving is non-decreasing.
    """
    h = list(window) + [0] * (degree + 1 - len(window))
    chain = []
    i = 0
    while i <= degree - i:
        chain.append(h[i])
        if i < degree - i:
            chain.append(h[degree - i])
        i += 1
    return all(a <= b for a, b in zip(chain, chain[1:]))


def delta_from_counts(counts: IntPoly, dim: int) -> IntPoly:
    """Delta window from the counts of the first d+1 dilates (0P .. dP)."""
    if len(counts) < dim + 1:
        raise ValueError(f"need counts for dilations 0..{dim}, got {len(counts)}")
    if counts[0] != 1:
        raise ValueError("count of the 0-th dilate must be 1")
    window = []
    for k in range(dim + 1):
        window.append(
            sum((-1) ** m * math.comb(dim + 1, m) * counts[k - m] for m in range(k + 1))
        )
    return tuple(window)


def build_report(window: IntPoly, dim: int) -> DeltaReport:
    if len(window) != dim + 1:
        raise ValueError("window length must be dim + 1")
    if window[0] != 1:
        raise ValueError("delta_0 must be 1")
    if any(c < 0 for c in window):
        raise ValueError(f"negative delta entry in {window}")
    degree = max(k for k, c in enumerate(window) if c != 0)
    return DeltaReport(
        window=tuple(window),
        dim=dim,
        degree=degree,
        codegree=dim + 1 - degree,
        normalized_volume=sum(window),
        unimodal=is_unimodal(window),
        symmetric=is_symmetric(window, dim),
        alternatingly_increasing=is_alternatingly_increasing(window, degree),
    )


def delta_vector(p: pt.LatticePolytope) -> DeltaReport:
    """Delta vector of a lattice polytope, by counting d+1 dilates."""
    counts = tuple(pt.count_lattice_points(p, n) for n in range(p.dim + 1))
    return build_report(delta_from_counts(counts, p.dim), p.dim)


def check_interior_chain(report: DeltaReport) -> bool:
    """delta_0 <= delta_d <= delta_1 <= delta_{d-1} <= delta_2, when defined.

    The chain is only asserted for d >= 3 with nonzero delta_d; otherwise it
    holds vacuously.
    """
    w, d = report.window, report.dim
    if d < 3 or w[d] == 0:
        return True
    return w[0] <= w[d] <= w[1] <= w[d - 1] <= w[2]


# ---------------------------------------------------------------------------
# Eulerian polynomials and the A-family


@lru_cache(maxsize=None)
def eulerian(n: int) -> IntPoly | str:
    """Eulerian polynomial Eul(n, t), the delta vector of [0,1]^(n+1).

    ``eulerian(-1)`` returns the formal token for 1/t, which only ever
    appears multiplied by t inside the A-family identities.
    """
    if n == -1:
        return FORMAL_T_INVERSE
    if n < -1:
        raise ValueError("eulerian polynomials start at n = -1")
    coeffs = []
    for i in range(n + 1):
        coeffs.append(
            sum((-1) ** j * math.comb(n + 2, j) * (i + 1 - j) ** (n + 1) for j in range(i + 2))
        )
    return xm.poly_trim(tuple(coeffs))


@dataclass(frozen=True)
class APoly:
    i: int
    j: int
    coeffs: IntPoly


@lru_cache(maxsize=None)
def _a_poly_coeffs(i: int, j: int) -> IntPoly:
    # (1-t)^{i+2} * sum_n t^n n^{j+1} (n+1)^{i-j}, truncated past degree i+1;
    # the tail of the series cannot reach back into low-degree coefficients.
    top = i + 1
    series = tuple(n**(j + 1) * (n + 1) ** (i - j) for n in range(top + 1))
    prod = xm.poly_mul(series, xm.poly_one_minus_t_power(i + 2))
    return xm.poly_trim(prod[: top + 1])


def a_poly(i: int, j: int) -> APoly:
    """The polynomial A(i, j), for -1 <= j <= i."""
    if not -1 <= j <= i:
        raise ValueError(f"A(i, j) needs -1 <= j <= i, got ({i}, {j})")
    return APoly(i, j, _a_poly_coeffs(i, j))


def product_with_segment(window: IntPoly, dim: int) -> IntPoly:
    """Delta window of P x [0,1] from the window of d-dimensional P.

    delta_i(P x segment) = (i+1) * delta_i(P) + (d+1-i) * delta_{i-1}(P).
    """
    h = list(window) + [0] * (dim + 1 - len(window))
    out = []
    for i in range(dim + 2):
        prev = h[i - 1] if 0 < i <= dim + 1 else 0
        here = h[i] if i <= dim else 0
        out.append((i + 1) * here + (dim + 1 - i) * prev)
    return tuple(out)


def delta_simplex_product(k: int, i: int) -> IntPoly:
    """Delta window of (triangle)^k x (segment)^i by direct dilate counting."""
    d = 2 * k + i
    counts = tuple((((n + 1) * (n + 2)) // 2) ** k * (n + 1) ** i for n in range(d + 1))
    return delta_from_counts(counts, d)
