"""Lattice polytopes with exact convex-hull and lattice-point machinery.

A ``LatticePolytope`` is the convex hull of finitely many points of Z^m,
stored with its vertex list and an exact halfspace description: primitive
integer facet inequalities ``a·x <= b`` plus, when the polytope is not
full-dimensional, primitive integer equations cutting out the affine hull.

Vertex extraction uses an exact rational LP (is the point in the hull of the
others?); facet enumeration brute-forces d-subsets of the vertices, which is
entirely adequate at desk scale and has no tolerance anywhere.  Lattice
points of dilates are enumerated by a bounding-box scan whose innermost
coordinate is interval-tightened against every facet inequality, so the scan
touches one row per prefix instead of one test per candidate point.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import exactmath as xm
from ._lp import OPTIMAL, lp_maximize

Point = tuple[int, ...]
Halfspace = tuple[Point, int]  # (normal, offset): normal·x <= offset

DEFAULT_SCALE_GUARD = 10**8


class ScaleGuardError(RuntimeError):
    """A bounding-box scan would exceed the configured candidate budget."""


def scale_guard() -> int:
    return int(os.environ.get("POLYLAB_SCALE_GUARD", DEFAULT_SCALE_GUARD))


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of lattice points, with exact V- and H-representations."""

    vertices: tuple[Point, ...]
    extra_points: tuple[Point, ...]  # input points that were not extreme
    inequalities: tuple[Halfspace, ...]
    equations: tuple[Halfspace, ...]
    ambient_dim: int
    dim: int


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def _primitive(normal: Sequence[int], offset: int) -> Halfspace:
    g = math.gcd(*normal)
    return tuple(v // g for v in normal), offset // g


def _cross(edges: Sequence[Point], m: int) -> Point:
    """Generalized cross product: integer normal to m-1 vectors in Z^m."""
    out = []
    for j in range(m):
        minor = [[row[k] for k in range(m) if k != j] for row in edges]
        out.append((-1) ** j * xm.det(minor))
    return tuple(out)


def _is_vertex(p: Point, others: list[Point], m: int) -> bool:
    if not others:
        return True
    a_eq = [[o[c] for o in others] for c in range(m)]
    a_eq.append([1] * len(others))
    b_eq = list(p) + [1]
    status, _, _ = lp_maximize([0] * len(others), len(others), a_eq, b_eq)
    return status != OPTIMAL


def _facets_fulldim(verts: list[Point], m: int) -> list[Halfspace]:
    found: set[Halfspace] = set()
    for subset in itertools.combinations(range(len(verts)), m):
        base = verts[subset[0]]
        edges = [_sub(verts[i], base) for i in subset[1:]]
        normal = _cross(edges, m)
        if not any(normal):
            continue
        offset = _dot(normal, base)
        above = below = False
        for v in verts:
            s = _dot(normal, v) - offset
            if s > 0:
                above = True
            elif s < 0:
                below = True
            if above and below:
                break
        if above and below:
            continue
        if above:
            normal, offset = tuple(-x for x in normal), -offset
        found.add(_primitive(normal, offset))
    return sorted(found)


def _affine_basis(pts: list[Point]) -> tuple[Point, list[Point]]:
    """Base point plus difference vectors spanning the affine hull."""
    base = pts[0]
    rows: list[Point] = []
    for p in pts[1:]:
        cand = _sub(p, base)
        if xm.rank(rows + [cand]) > len(rows):
            rows.append(cand)
    return base, rows


def _facets_lowdim(
    verts: list[Point], base: Point, basis_rows: list[Point], m: int
) -> list[Halfspace]:
    """Facets of a d<m polytope, via exact coordinates on its affine hull."""
    d = len(basis_rows)
    bmat = [[basis_rows[k][c] for k in range(d)] for c in range(m)]  # m x d
    coords = []
    for v in verts:
        sol = xm.solve_rational(bmat, _sub(v, base))
        assert sol is not None
        coords.append(sol)
    scale = math.lcm(*[c.denominator for row in coords for c in row])
    ypts = [tuple(int(c * scale) for c in row) for row in coords]
    inner = _facets_fulldim(sorted(set(ypts)), d)

    gram = [[_dot(basis_rows[i], basis_rows[j]) for j in range(d)] for i in range(d)]
    out: set[Halfspace] = set()
    for a, b in inner:
        z = xm.solve_rational(gram, a)
        assert z is not None
        w = [scale * sum(z[k] * Fraction(basis_rows[k][c]) for k in range(d)) for c in range(m)]
        rhs = Fraction(b) + sum(wc * bc for wc, bc in zip(w, base))
        denom = math.lcm(*[f.denominator for f in w + [rhs]])
        out.add(_primitive([int(f * denom) for f in w], int(rhs * denom)))
    return sorted(out)


def _hull_equations(base: Point, basis_rows: list[Point], m: int) -> list[Halfspace]:
    if not basis_rows:
        kernel = [tuple(1 if i == j else 0 for i in range(m)) for j in range(m)]
    else:
        kernel = xm.kernel_basis(basis_rows)
    eqs = []
    for e in kernel:
        if next(x for x in e if x) < 0:
            e = tuple(-x for x in e)
        eqs.append((e, _dot(e, base)))
    return sorted(eqs)


def from_points(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """Convex hull of the given lattice points.

    Non-extreme input points are dropped from the vertex list but kept in
    ``extra_points`` (triangulation configurations want them back).
    """
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    m = len(pts[0])
    if m == 0 or any(len(p) != m for p in pts):
        raise ValueError("points must share a positive ambient dimension")
    base, basis_rows = _affine_basis(pts)
    d = len(basis_rows)
    if d == 0:
        return LatticePolytope((pts[0],), (), (), tuple(_hull_equations(base, [], m)), m, 0)
    if len(pts) == d + 1:
        verts = pts
    else:
        verts = [p for p in pts if _is_vertex(p, [q for q in pts if q != p], m)]
    if d == m:
        ineqs, eqs = _facets_fulldim(verts, m), []
    else:
        ineqs = _facets_lowdim(verts, base, basis_rows, m)
        eqs = _hull_equations(base, basis_rows, m)
    extra = tuple(p for p in pts if p not in set(verts))
    return LatticePolytope(tuple(verts), extra, tuple(ineqs), tuple(eqs), m, d)


def facets(p: LatticePolytope) -> tuple[Halfspace, ...]:
    """Irredundant facet inequalities (within the affine hull when d < m)."""
    if p.dim == 0:
        raise ValueError("a point has no facets")
    return p.inequalities


def contains(p: LatticePolytope, point: Sequence[int | Fraction], mode: str = "closed") -> bool:
    """Exact membership; mode 'interior' means interior in R^m (false if d < m)."""
    if len(point) != p.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if mode not in ("closed", "interior"):
        raise ValueError(f"unknown mode {mode!r}")
    for e, f in p.equations:
        if _dot(e, point) != f:
            return False
    if mode == "interior":
        if p.dim < p.ambient_dim:
            return False
        return all(_dot(a, point) < b for a, b in p.inequalities)
    return all(_dot(a, point) <= b for a, b in p.inequalities)


# ---------------------------------------------------------------------------
# lattice point scans


def _scan(
    ineqs: list[tuple[Point, int]],
    bounds: list[tuple[int, int]],
    collect: bool,
) -> list[Point] | int:
    """Integer points of a box satisfying ``coeffs·x <= rhs`` rows.

    The final coordinate is interval-tightened per prefix row, so every
    integer in the surviving interval is a solution and no per-point
    membership test is needed.
    """
    m = len(bounds)
    volume = 1
    for lo, hi in bounds:
        volume *= max(0, hi - lo + 1)
    guard = scale_guard()
    if volume > guard:
        raise ScaleGuardError(f"scan of {volume} candidates exceeds guard {guard}")
    if volume == 0:
        return [] if collect else 0
    head = [(c, r) for c, r in ineqs if c[m - 1] == 0]
    tail = [(c[m - 1], c, r) for c, r in ineqs if c[m - 1] != 0]
    out: list[Point] = []
    count = 0
    lo0, hi0 = bounds[m - 1]
    for prefix in itertools.product(*[range(lo, hi + 1) for lo, hi in bounds[:-1]]):
        if any(_dot(c, prefix) > r for c, r in head):
            continue
        lo, hi = lo0, hi0
        for cl, c, r in tail:
            s = r - _dot(c, prefix)
            if cl > 0:
                hi = min(hi, s // cl)
            else:
                lo = max(lo, -((-s) // cl))
            if lo > hi:
                break
        if lo > hi:
            continue
        if collect:
            out.extend(prefix + (x,) for x in range(lo, hi + 1))
        else:
            count += hi - lo + 1
    return out if collect else count


def _dilate_rows(p: LatticePolytope, n: int, strict: bool) -> list[tuple[Point, int]]:
    shift = 1 if strict else 0
    rows = [(a, n * b - shift) for a, b in p.inequalities]
    for e, f in p.equations:
        rows.append((e, n * f))
        rows.append((tuple(-x for x in e), -n * f))
    return rows


def _dilate_bounds(p: LatticePolytope, n: int) -> list[tuple[int, int]]:
    return [
        (n * min(v[c] for v in p.vertices), n * max(v[c] for v in p.vertices))
        for c in range(p.ambient_dim)
    ]


def lattice_points(p: LatticePolytope, n: int = 1) -> list[Point]:
    """All lattice points of the n-th dilate, in lexicographic order."""
    if n < 0:
        raise ValueError("dilation must be nonnegative")
    return _scan(_dilate_rows(p, n, strict=False), _dilate_bounds(p, n), collect=True)


def count_lattice_points(p: LatticePolytope, n: int = 1) -> int:
    if n < 0:
        raise ValueError("dilation must be nonnegative")
    return _scan(_dilate_rows(p, n, strict=False), _dilate_bounds(p, n), collect=False)


def interior_count(p: LatticePolytope, n: int = 1) -> int:
    """Number of lattice points interior to nP (full-dimensional P only)."""
    if p.dim != p.ambient_dim:
        raise ValueError("interior counts require a full-dimensional polytope")
    if n < 0:
        raise ValueError("dilation must be nonnegative")
    return _scan(_dilate_rows(p, n, strict=True), _dilate_bounds(p, n), collect=False)


def boundary_lattice_points(p: LatticePolytope) -> list[Point]:
    """Lattice points of P on some facet (relative boundary when d < m)."""
    return [q for q in lattice_points(p, 1) if any(_dot(a, q) == b for a, b in p.inequalities)]


# ---------------------------------------------------------------------------
# predicates


def is_reflexive(p: LatticePolytope) -> bool:
    """Full-dimensional with every primitive facet at lattice distance 1."""
    return p.dim == p.ambient_dim and all(b == 1 for _, b in p.inequalities)


def is_translate_of_reflexive(p: LatticePolytope) -> bool:
    """True iff the delta window of P is symmetric."""
    from . import ehrhart

    return ehrhart.delta_vector(p).symmetric


def is_integrally_closed(p: LatticePolytope, max_degree: int | None = None) -> bool:
    """Every lattice point of nP a sum of n lattice points of P, n up to d-1.

    Degrees 2..d-1 certify all degrees (generators of the cone's lattice-point
    semigroup live below height d), so the default bound is exact, not a
    heuristic truncation.
    """
    bound = max_degree if max_degree is not None else p.dim - 1
    gens = lattice_points(p, 1)
    reachable = set(gens)
    for n in range(2, bound + 1):
        reachable = {tuple(a + b for a, b in zip(x, g)) for x in reachable for g in gens}
        if reachable != set(lattice_points(p, n)):
            return False
    return True


# ---------------------------------------------------------------------------
# stock constructions


def hypercube(d: int, low: int = 0, high: int = 1) -> LatticePolytope:
    return from_points(itertools.product((low, high), repeat=d))


def cross_polytope(d: int) -> LatticePolytope:
    pts = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        pts.append(tuple(e))
        pts.append(tuple(-x for x in e))
    return from_points(pts)


def standard_simplex(d: int) -> LatticePolytope:
    pts = [tuple([0] * d)]
    for i in range(d):
        e = [0] * d
        e[i] = 1
        pts.append(tuple(e))
    return from_points(pts)


def reflexive_simplex(d: int) -> LatticePolytope:
    pts = [tuple(-1 for _ in range(d))]
    for i in range(d):
        e = [0] * d
        e[i] = 1
        pts.append(tuple(e))
    return from_points(pts)


def cartesian_product(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    return from_points(a + b for a in p.vertices for b in q.vertices)
