"""Lattice parallelepipeds: box points, the subset census, and closed forms.

A spec is a list of linearly independent integer vectors v_0..v_r.  They
span three nested regions -- the closed parallelepiped (coefficients in
[0,1]), the half-open one Pi (in [0,1)), and the open box bx (in (0,1)) --
and every count of interest reduces to lattice points of these regions.

The primary enumeration is Smith-normal-form coset walking: the points of
the half-open box are in bijection with (Z^m intersect span V) / ZV, a group
whose order is the product of the invariant factors, so the work is
O(index) instead of O(bounding box).  A scan-based oracle (`box_points_scan`)
recomputes the same sets from inequalities alone and is kept deliberately
independent of the SNF path.

The census b(G) of open-box counts over generator subsets G feeds both the
closed-form delta vector, sum over G of b(G) * A(r, |G|-1), and the
reflexive-translate criterion b(full) = 1 with every b(G) <= 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import ehrhart as eh
from . import exactmath as xm
from . import polytope as pt
from .exactmath import IntPoly

Coeffs = tuple[Fraction, ...]
BoxPoint = tuple[tuple[int, ...], Coeffs]


@dataclass(frozen=True)
class ParallelepipedSpec:
    """Linearly independent generators of a lattice parallelepiped."""

    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        gens = self.generators
        if not gens:
            raise ValueError("need at least one generator")
        m = len(gens[0])
        if any(len(g) != m for g in gens):
            raise ValueError("generators must share an ambient dimension")
        r = xm.rank(list(gens))
        if r != len(gens):
            raise ValueError(f"generators have rank {r}, expected {len(gens)}")

    @property
    def count(self) -> int:
        return len(self.generators)

    @property
    def ambient_dim(self) -> int:
        return len(self.generators[0])


def spec_from_vectors(vectors) -> ParallelepipedSpec:
    return ParallelepipedSpec(tuple(tuple(int(x) for x in v) for v in vectors))


def _column_matrix(gens) -> list[list[int]]:
    return [[g[c] for g in gens] for c in range(len(gens[0]))]


def box_points(vectors, mode: str = "halfopen") -> list[BoxPoint]:
    """Lattice points of the (half-)open box with exact coefficient vectors.

    SNF coset enumeration: with UBV = D, the columns u_j of U^-1 generate
    the saturation of the column span of B, and W/ZB is the direct sum of
    Z/d_j.  Each coset representative is reduced into the fundamental
    domain by flooring its rational coordinates.
    """
    if mode not in ("halfopen", "open"):
        raise ValueError(f"unknown mode {mode!r}")
    spec = vectors if isinstance(vectors, ParallelepipedSpec) else spec_from_vectors(vectors)
    gens = spec.generators
    k, m = spec.count, spec.ambient_dim
    bcols = _column_matrix(gens)
    u, d, _ = xm.snf(xm.IntMatrix.from_rows(bcols))
    uinv = xm.invert_unimodular(u)
    factors = [d.entries[j][j] for j in range(k)]
    sat_basis = [tuple(uinv.entries[c][j] for c in range(m)) for j in range(k)]
    lam_of_u = []
    for uj in sat_basis:
        sol = xm.solve_rational(bcols, uj)
        assert sol is not None
        lam_of_u.append(sol)

    out: list[BoxPoint] = []
    for coset in itertools.product(*[range(f) for f in factors]):
        lam = [sum(c * lam_of_u[j][i] for j, c in enumerate(coset)) for i in range(k)]
        frac = tuple(v - math.floor(v) for v in lam)
        if mode == "open" and any(f == 0 for f in frac):
            continue
        point = tuple(
            sum(c * sat_basis[j][i] for j, c in enumerate(coset))
            - sum(math.floor(lam[j]) * gens[j][i] for j in range(k))
            for i in range(m)
        )
        out.append((point, frac))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# scan oracle (independent of SNF)


def _fm_project(rows: list[tuple[tuple[int, ...], int]], coord: int):
    """Fourier-Motzkin elimination of one coordinate from integer rows."""
    keep, pos, neg = [], [], []
    for c, r in rows:
        if c[coord] == 0:
            keep.append((c, r))
        elif c[coord] > 0:
            pos.append((c, r))
        else:
            neg.append((c, r))
    out = set(keep)
    for cp, rp in pos:
        for cn, rn in neg:
            a, b = cp[coord], -cn[coord]
            c = tuple(b * x + a * y for x, y in zip(cp, cn))
            r = b * rp + a * rn
            if any(c):
                g = math.gcd(*c)
                c = tuple(x // g for x in c)
                r = r // g  # floor keeps integer points
            out.add((c, r))
    return list(out)


def _fm_scan(rows, bounds) -> list[tuple[int, ...]]:
    """Integer points of a box cut by rows, with exact projection pruning.

    Successive Fourier-Motzkin projections give, at every prefix depth, the
    exact interval the next coordinate may take, so the search tree only
    visits extendable prefixes.
    """
    m = len(bounds)
    systems: list[list] = [[] for _ in range(m)]
    cur = list(rows)
    systems[m - 1] = cur
    for c in range(m - 2, -1, -1):
        cur = _fm_project(cur, c + 1)
        systems[c] = cur
    for lvl in range(m):
        for c, r in systems[lvl]:
            if not any(c) and r < 0:
                return []
    tight = [
        [(c[lvl], c, r) for c, r in systems[lvl] if c[lvl] != 0] for lvl in range(m)
    ]
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def descend(lvl: int) -> None:
        lo, hi = bounds[lvl]
        for coef, c, r in tight[lvl]:
            s = r - sum(ci * xi for ci, xi in zip(c, prefix))
            if coef > 0:
                hi = min(hi, s // coef)
            else:
                lo = max(lo, -((-s) // coef))
            if lo > hi:
                return
        if lvl == m - 1:
            out.extend(tuple(prefix) + (x,) for x in range(lo, hi + 1))
            return
        for x in range(lo, hi + 1):
            prefix.append(x)
            descend(lvl + 1)
            prefix.pop()

    descend(0)
    return out


def _coeff_rows(spec: ParallelepipedSpec):
    """Integer rows w_i with lambda_i = (w_i . x) / det(Gram) on the span."""
    gens = spec.generators
    k = spec.count
    gram = [[sum(a * b for a, b in zip(gens[i], gens[j])) for j in range(k)] for i in range(k)]
    det_g = xm.det(gram)
    rows = []
    for i in range(k):
        unit = [Fraction(1) if j == i else Fraction(0) for j in range(k)]
        z = xm.solve_rational(gram, unit)
        assert z is not None
        w = [det_g * sum(z[j] * gens[j][c] for j in range(k)) for c in range(spec.ambient_dim)]
        assert all(f.denominator == 1 for f in w)
        rows.append(tuple(int(f) for f in w))
    return rows, det_g


def _span_equation_rows(spec: ParallelepipedSpec):
    rows = []
    if spec.count < spec.ambient_dim:
        for e in xm.kernel_basis(list(spec.generators)):
            rows.append((e, 0))
            rows.append((tuple(-x for x in e), 0))
    return rows


def _closed_bbox(spec: ParallelepipedSpec, n: int = 1):
    return [
        (
            n * sum(min(0, g[c]) for g in spec.generators),
            n * sum(max(0, g[c]) for g in spec.generators),
        )
        for c in range(spec.ambient_dim)
    ]


def box_points_scan(vectors, mode: str = "halfopen") -> list[BoxPoint]:
    """Scan-based oracle for box_points: bounding box + coefficient filter."""
    if mode not in ("halfopen", "open", "closed"):
        raise ValueError(f"unknown mode {mode!r}")
    spec = vectors if isinstance(vectors, ParallelepipedSpec) else spec_from_vectors(vectors)
    wrows, det_g = _coeff_rows(spec)
    lo = 1 if mode == "open" else 0
    hi = det_g - 1 if mode in ("halfopen", "open") else det_g
    rows = _span_equation_rows(spec)
    for w in wrows:
        rows.append((tuple(-x for x in w), -lo))
        rows.append((w, hi))
    bcols = _column_matrix(spec.generators)
    out = []
    for point in _fm_scan(rows, _closed_bbox(spec)):
        lam = xm.solve_rational(bcols, point)
        if lam is None:
            continue
        low, high = Fraction(lo, det_g), Fraction(hi, det_g)
        if all(low <= v <= high for v in lam):
            out.append((point, tuple(lam)))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# census and closed forms


@dataclass
class BoxCensus:
    """Open-box counts b(G) for every generator subset G, plus the points."""

    spec: ParallelepipedSpec
    b: dict[tuple[int, ...], int]
    open_points: dict[tuple[int, ...], tuple[tuple[int, ...], ...]]

    def halfopen_count(self, subset: tuple[int, ...]) -> int:
        inside = set(subset)
        return sum(v for g, v in self.b.items() if inside.issuperset(g))


def box_census(spec: ParallelepipedSpec) -> BoxCensus:
    """Classify half-open box points by coefficient support.

    A half-open point with support G is an open-box point of the sub-box
    spanned by G, so one SNF enumeration of the full box yields every b(G)
    at once; b of the empty subset is 1 (the origin).
    """
    k = spec.count
    b: dict[tuple[int, ...], int] = {}
    points: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for size in range(k + 1):
        for subset in itertools.combinations(range(k), size):
            b[subset] = 0
            points[subset] = []
    for point, coeffs in box_points(spec, "halfopen"):
        support = tuple(i for i, c in enumerate(coeffs) if c != 0)
        b[support] += 1
        points[support].append(point)
    return BoxCensus(spec, b, {g: tuple(ps) for g, ps in points.items()})


def closed_count(spec: ParallelepipedSpec, n: int) -> int:
    """Lattice points of the n-th dilate of the closed parallelepiped.

    Face sum: each face of the closed box is a translated half-open box
    Pi(G), contributing n^|G| copies; the empty subset contributes 1.
    """
    if n < 0:
        raise ValueError("dilation must be nonnegative")
    census = box_census(spec)
    return sum(n ** len(g) * census.halfopen_count(g) for g in census.b)


def count_closed_scan(spec: ParallelepipedSpec, n: int) -> int:
    """Oracle for closed_count, by direct inequality scan of the dilate."""
    if n < 0:
        raise ValueError("dilation must be nonnegative")
    if n == 0:
        return 1
    wrows, det_g = _coeff_rows(spec)
    rows = _span_equation_rows(spec)
    for w in wrows:
        rows.append((tuple(-x for x in w), 0))
        rows.append((w, n * det_g))
    result = pt._scan(rows, _closed_bbox(spec, n), collect=False)
    assert isinstance(result, int)
    return result


def parallelepiped_delta(spec: ParallelepipedSpec) -> eh.DeltaReport:
    """Delta report of the closed parallelepiped, via the A-family form.

    delta = sum over generator subsets G of b(G) * A(r, |G| - 1), with
    r + 1 generators spanning an (r+1)-dimensional parallelepiped.
    """
    census = box_census(spec)
    k = spec.count
    window = (0,) * (k + 1)
    for subset, count in census.b.items():
        if count:
            contrib = xm.poly_scale(eh.a_poly(k - 1, len(subset) - 1).coeffs, count)
            window = xm.poly_add(window, contrib)
    padded = tuple(window) + (0,) * (k + 1 - len(window))
    return eh.build_report(padded, k)


def delta_by_counting(spec: ParallelepipedSpec) -> eh.DeltaReport:
    """Delta report of the closed parallelepiped by brute-force counting."""
    counts = tuple(count_closed_scan(spec, n) for n in range(spec.count + 1))
    return eh.build_report(eh.delta_from_counts(counts, spec.count), spec.count)


def parallelepiped_is_reflexive_translate(spec: ParallelepipedSpec) -> bool:
    """Census criterion: b(full) = 1 and every b(G) <= 1."""
    census = box_census(spec)
    full = tuple(range(spec.count))
    return census.b[full] == 1 and all(v <= 1 for v in census.b.values())


def closed_parallelepiped(spec: ParallelepipedSpec) -> pt.LatticePolytope:
    """The closed parallelepiped as a LatticePolytope (subset-sum vertices)."""
    sums = []
    for picks in itertools.product((0, 1), repeat=spec.count):
        sums.append(
            tuple(
                sum(p * g[c] for p, g in zip(picks, spec.generators))
                for c in range(spec.ambient_dim)
            )
        )
    return pt.from_points(sums)
