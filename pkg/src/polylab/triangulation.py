"""Triangulations, link h-polynomials, box polynomials, and regularity.

A triangulation is stored over a point configuration (an ordered list of
lattice points) as a list of cells, each an affinely independent index set;
its faces are the downward closure of the cells including the empty face.
Two scopes appear: "full" triangulations of a polytope (cells of size
dim + 1) and "boundary" triangulations of the boundary of a full-dimensional
polytope (cells of size dim, each inside a facet).

Regularity is decided by an exact rational LP over lifting heights: for
every cell S and configuration point p not in S, the lift of p must exceed
the induced lift of p over S by a common positive slack.  Full-scope cells
induce affine lifts; boundary cells (around an interior origin) induce
linear ones, which is the usual strict-convexity criterion for the fan over
the boundary complex.

The delta decomposition of a reflexive polytope sums, over all faces F of a
boundary triangulation, the box polynomial of F (heights of open-box points
over the height-1 lift) times the link h-polynomial of F.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import ehrhart as eh
from . import exactmath as xm
from . import parallelepiped as pp
from . import polytope as pt
from ._lp import OPTIMAL, lp_maximize
from .exactmath import IntPoly

Face = tuple[int, ...]


@dataclass(frozen=True)
class PointConfiguration:
    """Ordered lattice points; the order drives pulling triangulations."""

    points: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("empty configuration")
        m = len(self.points[0])
        if any(len(p) != m for p in self.points):
            raise ValueError("points must share an ambient dimension")
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate configuration points")


def config_from_points(points) -> PointConfiguration:
    return PointConfiguration(tuple(tuple(int(x) for x in p) for p in points))


@dataclass(frozen=True)
class Triangulation:
    config: PointConfiguration
    cells: tuple[Face, ...]
    scope: str  # "full" or "boundary"
    faces: tuple[Face, ...]  # downward closure of cells, including ()


def cell_volume(config: PointConfiguration, cell: Face) -> int:
    """Normalized volume of a cell relative to the lattice of its span."""
    base = config.points[cell[0]]
    edges = [tuple(a - b for a, b in zip(config.points[i], base)) for i in cell[1:]]
    return xm.sublattice_index(edges)


def make_triangulation(config: PointConfiguration, cells, scope: str = "full") -> Triangulation:
    if scope not in ("full", "boundary"):
        raise ValueError(f"unknown scope {scope!r}")
    n = len(config.points)
    norm_cells = []
    for k, cell in enumerate(cells):
        idx = tuple(sorted(int(i) for i in cell))
        if len(set(idx)) != len(idx):
            raise ValueError(f"cell {k} repeats an index")
        if idx and not 0 <= idx[0] <= idx[-1] < n:
            raise ValueError(f"cell {k} has an out-of-range index")
        if cell_volume(config, idx) == 0:
            raise ValueError(f"cell {k} is affinely dependent")
        norm_cells.append(idx)
    if not norm_cells:
        raise ValueError("triangulation needs at least one cell")
    sizes = {len(c) for c in norm_cells}
    if len(sizes) != 1:
        raise ValueError(f"cells have mixed sizes {sorted(sizes)}")
    faces = {()}
    for cell in norm_cells:
        for r in range(1, len(cell) + 1):
            faces.update(itertools.combinations(cell, r))
    return Triangulation(config, tuple(sorted(norm_cells)), scope, tuple(sorted(faces, key=lambda f: (len(f), f))))


# ---------------------------------------------------------------------------
# validity


def _pair_intersection_excess(points_a, points_b, shared_a, shared_b):
    """Max barycentric mass outside the shared vertices over the intersection.

    Zero (or an empty intersection) means conv(A) and conv(B) meet exactly in
    the common face spanned by their shared vertices.
    """
    na, nb = len(points_a), len(points_b)
    m = len(points_a[0])
    a_eq = []
    b_eq = []
    for c in range(m):
        a_eq.append([p[c] for p in points_a] + [-q[c] for q in points_b])
        b_eq.append(0)
    a_eq.append([1] * na + [0] * nb)
    b_eq.append(1)
    a_eq.append([0] * na + [1] * nb)
    b_eq.append(1)
    objective = [0 if i in shared_a else 1 for i in range(na)]
    objective += [0 if j in shared_b else 1 for j in range(nb)]
    status, value, _ = lp_maximize(objective, na + nb, a_eq, b_eq)
    if status != OPTIMAL:
        return Fraction(0)
    return value


def invalidity(tri: Triangulation, target: pt.LatticePolytope) -> str | None:
    """None if tri triangulates the target (or its boundary); else a reason."""
    points = tri.config.points
    if len(points[0]) != target.ambient_dim:
        return "configuration and target ambient dimensions differ"
    for i, p in enumerate(points):
        if not pt.contains(target, p):
            return f"configuration point {i} lies outside the target"
    size = len(tri.cells[0])

    if tri.scope == "full":
        if size != target.dim + 1:
            return f"full-scope cells must have {target.dim + 1} points, found {size}"
        total = sum(cell_volume(tri.config, c) for c in tri.cells)
        expect = eh.delta_vector(target).normalized_volume
        if total != expect:
            return f"cell volumes sum to {total}, target has normalized volume {expect}"
    else:
        if size != target.dim:
            return f"boundary cells must have {target.dim} points, found {size}"
        per_facet: dict[pt.Halfspace, int] = {f: 0 for f in target.inequalities}
        for k, cell in enumerate(tri.cells):
            homes = [
                (a, b)
                for a, b in target.inequalities
                if all(sum(x * y for x, y in zip(a, points[i])) == b for i in cell)
            ]
            if not homes:
                return f"cell {k} does not lie in any facet"
            for f in homes:
                per_facet[f] += cell_volume(tri.config, cell)
        for (a, b), got in per_facet.items():
            facet_pts = [p for p in pt.lattice_points(target, 1) if sum(x * y for x, y in zip(a, p)) == b]
            expect = eh.delta_vector(pt.from_points(facet_pts)).normalized_volume
            if got != expect:
                return f"facet {a}<={b} covered with volume {got}, expected {expect}"

    for (i, ca), (j, cb) in itertools.combinations(enumerate(tri.cells), 2):
        shared = set(ca) & set(cb)
        excess = _pair_intersection_excess(
            [points[k] for k in ca],
            [points[k] for k in cb],
            {ca.index(k) for k in shared},
            {cb.index(k) for k in shared},
        )
        if excess != 0:
            return f"cells {i} and {j} do not intersect in a common face"
    return None


def validate(tri: Triangulation, target: pt.LatticePolytope) -> bool:
    return invalidity(tri, target) is None


def uses_all_points(tri: Triangulation) -> bool:
    used = set()
    for cell in tri.cells:
        used.update(cell)
    return used == set(range(len(tri.config.points)))


def all_cells_empty(tri: Triangulation) -> bool:
    """Every cell an empty simplex: its only lattice points are its vertices."""
    for cell in tri.cells:
        hull = pt.from_points([tri.config.points[i] for i in cell])
        if pt.count_lattice_points(hull, 1) != len(cell):
            return False
    return True


# ---------------------------------------------------------------------------
# h- and box polynomials


def link_h(tri: Triangulation, face: Face) -> IntPoly:
    """h-polynomial of the link: sum over faces G >= F of t^(|G|-|F|)(1-t)^(n-|G|)."""
    face = tuple(sorted(face))
    if face not in tri.faces:
        raise ValueError(f"{face} is not a face of the triangulation")
    n = len(tri.cells[0])
    fset = set(face)
    total: IntPoly = ()
    for g in tri.faces:
        if fset.issubset(g):
            term = xm.poly_mul(
                (0,) * (len(g) - len(face)) + (1,),
                xm.poly_one_minus_t_power(n - len(g)),
            )
            total = xm.poly_add(total, term)
    return xm.poly_trim(total)


def box_poly(points) -> IntPoly:
    """Box polynomial of a simplex: open-box heights of the height-1 lift.

    The empty simplex gives 1; unimodular simplices give 0 (empty open box).
    """
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        return (1,)
    lifted = [p + (1,) for p in pts]
    if xm.rank(lifted) != len(lifted):
        raise ValueError("simplex vertices must be affinely independent")
    heights = [point[-1] for point, _ in pp.box_points(lifted, "open")]
    if not heights:
        return (0,)
    out = [0] * (max(heights) + 1)
    for h in heights:
        out[h] += 1
    return tuple(out)


def mp_delta(p: pt.LatticePolytope, tri: Triangulation) -> IntPoly:
    """Delta window of reflexive P from a boundary triangulation.

    Sums B_F(t) * h_F(t) over all faces F including the empty one; must
    reproduce the counting delta vector.
    """
    if not pt.is_reflexive(p):
        raise ValueError("the face-sum decomposition requires a reflexive polytope")
    if tri.scope != "boundary" or len(tri.cells[0]) != p.dim:
        raise ValueError("expected a boundary triangulation of the polytope")
    total: IntPoly = ()
    for face in tri.faces:
        b = box_poly([tri.config.points[i] for i in face])
        if any(b):
            total = xm.poly_add(total, xm.poly_mul(b, link_h(tri, face)))
    window = list(total) + [0] * (p.dim + 1 - len(total))
    if len(window) != p.dim + 1:
        raise AssertionError(f"face sum has degree {len(total) - 1} > dim {p.dim}")
    return tuple(window)


# ---------------------------------------------------------------------------
# pulling triangulations


def _cone_split(points, cell: list[int], apex: int) -> list[list[int]]:
    """Replace a cell by cones from the apex over the facets avoiding it.

    Each new cell keeps every old point lying in the cone (closed membership
    along the ray from the apex), so interior points survive for later pulls.
    """
    hull = pt.from_points([points[i] for i in cell])
    q = points[apex]
    out = []
    for a, b in hull.inequalities:
        level_q = sum(x * y for x, y in zip(a, q))
        if level_q == b:
            continue  # apex on this facet
        new_cell = [apex]
        for i in cell:
            if i == apex:
                continue
            x = points[i]
            level_x = sum(u * v for u, v in zip(a, x))
            if level_x == b:
                new_cell.append(i)
                continue
            mu = Fraction(b - level_x, b - level_q)
            if not 0 <= mu < 1:
                continue
            y = [Fraction(xc - mu * qc, 1 - mu) for xc, qc in zip(x, q)]
            if all(
                sum(u * v for u, v in zip(a2, y)) <= b2 for a2, b2 in hull.inequalities
            ):
                new_cell.append(i)
        out.append(sorted(new_cell))
    return out


def _pull(points, indices: list[int], order: list[int]) -> list[Face]:
    cells = [sorted(indices)]
    for apex in order:
        if apex not in indices:
            continue
        next_cells = []
        for cell in cells:
            if apex not in cell or xm.rank(
                [
                    tuple(a - b for a, b in zip(points[i], points[cell[0]]))
                    for i in cell[1:]
                ]
            ) == len(cell) - 1:
                next_cells.append(cell)
            else:
                next_cells.extend(_cone_split(points, cell, apex))
        cells = next_cells
    out = {tuple(c) for c in cells}
    for cell in out:
        if cell_volume_points(points, cell) == 0:
            raise AssertionError("pulling left an affinely dependent cell")
    return sorted(out)


def cell_volume_points(points, cell) -> int:
    base = points[cell[0]]
    edges = [tuple(a - b for a, b in zip(points[i], base)) for i in cell[1:]]
    return xm.sublattice_index(edges)


def pulling_triangulation(
    config: PointConfiguration, scope: str = "full", order=None
) -> Triangulation:
    """Pulling triangulation: cone each point, in order, over opposite faces.

    The result uses every configuration point and is regular by
    construction.  Boundary scope keeps only the points on the boundary of
    their convex hull and pulls facet by facet with the one global order,
    so facet triangulations agree on shared faces.
    """
    points = config.points
    order = list(order) if order is not None else list(range(len(points)))
    if sorted(order) != list(range(len(points))):
        raise ValueError("order must be a permutation of the point indices")

    if scope == "full":
        cells = _pull(points, list(range(len(points))), order)
        tri = make_triangulation(config, cells, "full")
    elif scope == "boundary":
        hull = pt.from_points(points)
        keep = [
            i
            for i, p in enumerate(points)
            if any(sum(a * x for a, x in zip(ineq, p)) == b for ineq, b in hull.inequalities)
        ]
        if len(keep) != len(points):
            remap = {old: new for new, old in enumerate(keep)}
            config = PointConfiguration(tuple(points[i] for i in keep))
            order = [remap[i] for i in order if i in remap]
            points = config.points
        cells = set()
        for a, b in hull.inequalities:
            facet = [i for i, p in enumerate(points) if sum(u * v for u, v in zip(a, p)) == b]
            cells.update(tuple(c) for c in _pull(points, facet, order))
        tri = make_triangulation(config, sorted(cells), "boundary")
    else:
        raise ValueError(f"unknown scope {scope!r}")

    if not uses_all_points(tri):
        raise AssertionError("pulling failed to use every configuration point")
    return tri


# ---------------------------------------------------------------------------
# regularity


@dataclass(frozen=True)
class RegularityCertificate:
    regular: bool
    slack: Fraction
    heights: tuple[Fraction, ...] | None
    tight_pairs: tuple[tuple[Face, int], ...]  # (cell, point) with zero margin


def _lift_coords(points, cell: Face, p, affine: bool):
    """Coefficients expressing p over the cell's affine (or linear) span."""
    cols = [points[i] for i in cell]
    if affine:
        mat = [[c[r] for c in cols] for r in range(len(p))] + [[1] * len(cols)]
        rhs = list(p) + [1]
    else:
        mat = [[c[r] for c in cols] for r in range(len(p))]
        rhs = list(p)
    return xm.solve_rational(mat, rhs)


def is_regular(tri: Triangulation) -> RegularityCertificate:
    """Exact LP: heights making every cell's lift lie strictly below the rest.

    Full-scope cells span affine lifts.  Boundary cells span linear ones
    (equivalently: cone at the interior origin), the strict-convexity test
    for the fan over the boundary.  Heights are confined to [0,1] and the
    common slack is maximized; regular iff the optimum is positive.

    The constraint per cell S and configuration point p not in S is
    lift(p) >= lift_S(p) + slack.  Constraints are generated lazily: the
    LP starts from the wall constraints (points of cells adjacent across a
    ridge) and grows until the relaxed optimum satisfies every pair, which
    certifies it as the optimum of the full LP.
    """
    points = tri.config.points
    n = len(points)
    affine = tri.scope == "full"
    if not affine:
        hull = pt.from_points(points)
        if not pt.contains(hull, (0,) * len(points[0]), "interior"):
            raise ValueError("boundary regularity needs the origin interior to the hull")

    pairs: list[tuple[Face, int]] = []
    rows: list[list[int]] = []
    index_of: dict[tuple[Face, int], int] = {}
    for cell in tri.cells:
        members = set(cell)
        for p_idx in range(n):
            if p_idx in members:
                continue
            coords = _lift_coords(points, cell, points[p_idx], affine)
            if coords is None:
                continue  # p outside the span: no constraint tied to this cell
            denom = math.lcm(*[c.denominator for c in coords])
            row = [0] * (n + 1)
            for i, c in zip(cell, coords):
                row[i] += int(c * denom)
            row[p_idx] -= denom
            row[n] = denom  # slack column
            index_of[(cell, p_idx)] = len(rows)
            rows.append(row)
            pairs.append((cell, p_idx))

    active: list[int] = []
    seen: set[int] = set()
    for ca, cb in itertools.combinations(tri.cells, 2):
        if len(set(ca) & set(cb)) != len(ca) - 1:
            continue
        for cell, other in ((ca, cb), (cb, ca)):
            for p_idx in set(other) - set(cell):
                k = index_of.get((cell, p_idx))
                if k is not None and k not in seen:
                    seen.add(k)
                    active.append(k)
    bound_rows = []
    for i in range(n + 1):
        bound = [0] * (n + 1)
        bound[i] = 1
        bound_rows.append(bound)
    objective = [0] * n + [1]

    while True:
        a_ub = [rows[k] for k in active] + bound_rows
        b_ub = [0] * len(active) + [1] * (n + 1)
        status, slack, solution = lp_maximize(objective, n + 1, a_ub=a_ub, b_ub=b_ub)
        assert status == OPTIMAL  # all-zero heights are always feasible
        if slack <= 0:
            break  # the full LP's optimum can only be smaller
        violated = [
            k
            for k, row in enumerate(rows)
            if k not in seen and sum(r * v for r, v in zip(row, solution)) > 0
        ]
        if not violated:
            break
        seen.update(violated)
        active.extend(violated)

    heights = tuple(solution[:n])
    if slack > 0:
        for cell, p_idx in pairs:
            coords = _lift_coords(points, cell, points[p_idx], affine)
            lifted = sum(c * heights[i] for i, c in zip(cell, coords))
            if not heights[p_idx] > lifted:
                raise AssertionError("regularity certificate failed verification")
        return RegularityCertificate(True, slack, heights, ())
    tight = []
    for (cell, p_idx), row in zip(pairs, rows):
        margin = sum(r * v for r, v in zip(row[:n], heights))
        if margin == 0:
            tight.append((cell, p_idx))
    return RegularityCertificate(False, slack, None, tuple(tight))


@dataclass(frozen=True)
class BoxUnimodalReport:
    box_unimodal: bool
    regular: bool
    failing_faces: tuple[tuple[Face, IntPoly], ...]
    certificate: RegularityCertificate


def is_box_unimodal(tri: Triangulation) -> BoxUnimodalReport:
    """Regular, and every face has unimodal box coefficients b_1..b_dim."""
    failing = []
    for face in tri.faces:
        if not face:
            continue
        b = box_poly([tri.config.points[i] for i in face])
        inner = tuple(b[1:]) if len(b) > 1 else ()
        if inner and not eh.is_unimodal(inner):
            failing.append((face, b))
    cert = is_regular(tri)
    ok = cert.regular and not failing
    return BoxUnimodalReport(ok, cert.regular, tuple(failing), cert)


# ---------------------------------------------------------------------------
# simplex census


@dataclass(frozen=True)
class SimplexCensus:
    dim: int
    points: tuple[tuple[int, ...], ...]
    total: int  # full-dimensional simplices on the points
    by_volume: tuple[tuple[int, int], ...]  # (normalized volume, how many)
    nonunimodular: tuple[tuple[Face, int, IntPoly], ...]


def simplex_census(p: pt.LatticePolytope, max_points: int = 15) -> SimplexCensus:
    """All full-dimensional simplices spanned by the lattice points of P."""
    points = pt.lattice_points(p, 1)
    if len(points) > max_points:
        raise pt.ScaleGuardError(
            f"census over {len(points)} points exceeds the {max_points}-point guard"
        )
    d = p.dim
    histogram: dict[int, int] = {}
    nonuni = []
    total = 0
    for subset in itertools.combinations(range(len(points)), d + 1):
        vol = cell_volume_points(points, subset)
        if vol == 0:
            continue
        total += 1
        histogram[vol] = histogram.get(vol, 0) + 1
        if vol > 1:
            nonuni.append((subset, vol, box_poly([points[i] for i in subset])))
    return SimplexCensus(
        d, tuple(points), total, tuple(sorted(histogram.items())), tuple(nonuni)
    )
