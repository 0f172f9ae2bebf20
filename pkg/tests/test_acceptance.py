"""Acceptance gate: end-to-end checks with fixed runtime budgets.

Every test asserts exact values (no tolerances) and finishes inside an
explicit wall-clock budget, so the suite doubles as a performance contract
for the desk-scale workloads the library is built around.
"""

import math
import random
import time

from polylab import cli
from polylab import ehrhart as eh
from polylab import exactmath as xm
from polylab import parallelepiped as pp
from polylab import polytope as pt
from polylab import triangulation as tr


def _under(start: float, budget: float) -> None:
    elapsed = time.monotonic() - start
    assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget:.0f}s"


TRIO = (
    (
        ((0, 0, 0, 0, 1), (2, 0, 0, 0, 2), (0, 1, 0, 0, 1), (0, 0, 1, 0, 1), (1, 1, 1, 2, 1)),
        (1, 46, 204, 194, 35, 0),
    ),
    (
        ((0, 0, 0, 0, 1), (1, 0, 0, 0, 2), (0, 1, 0, 0, 1), (0, 0, 1, 0, 1), (1, 1, 1, 2, 1)),
        (1, 27, 92, 92, 27, 1),
    ),
    (
        ((0, 0, 0, 0, 1), (1, 0, 0, 0, 1), (0, 1, 0, 0, 1), (0, 0, 1, 0, 1), (1, 1, 1, 3, 1)),
        (1, 28, 118, 158, 53, 2),
    ),
)

STEEP_SIMPLEX = (
    (0, 0, 0, 0, 0),
    (1, 0, 0, 0, 0),
    (0, 1, 0, 0, 0),
    (0, 0, 1, 0, 0),
    (0, 0, 0, 1, 0),
    (2, 2, 2, 2, 3),
)

SEVEN_POINTS = (
    (0, 0, 0, 0, 0),
    (1, 0, 0, 0, 0),
    (0, 1, 0, 0, 0),
    (0, 0, 1, 0, 0),
    (0, 0, 0, 1, 0),
    (-1, -1, -1, -1, 3),
    (0, 0, 0, 0, 1),
)

TEN_VERTICES = (
    (0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0),
    (0, 0, 1, 0, 0),
    (0, 0, 0, 1, 0),
    (0, 0, 0, 0, 1),
    (1, 0, 2, 1, 1),
    (1, 2, 0, 2, 1),
    (1, 1, 2, 0, 2),
    (1, 1, 1, 2, 0),
    (1, 2, 1, 1, 2),
)


def corpus_polytopes():
    """(name, polytope) for every corpus entry built from a vertex list."""
    out = []
    for entry in cli.corpus_entries():
        data = entry.get("input", {})
        if "vertices" in data:
            rows = [tuple(v) for v in data["vertices"]]
            rows += [tuple(q) for q in data.get("points", [])]
            out.append((entry["name"], pt.from_points(rows)))
    return out


_BOUNDARY_PULLINGS: dict = {}


def boundary_pulling(name: str, p: pt.LatticePolytope) -> tr.Triangulation:
    if name not in _BOUNDARY_PULLINGS:
        config = tr.config_from_points(pt.lattice_points(p, 1))
        _BOUNDARY_PULLINGS[name] = tr.pulling_triangulation(config, "boundary")
    return _BOUNDARY_PULLINGS[name]


# 1 ---------------------------------------------------------------------------


def test_building_block_table_dim4_exact():
    start = time.monotonic()
    table = {
        -1: (1, 26, 66, 26, 1),
        0: (0, 16, 66, 36, 2),
        1: (0, 8, 60, 48, 4),
        2: (0, 4, 48, 60, 8),
        3: (0, 2, 36, 66, 16),
        4: (0, 1, 26, 66, 26, 1),
    }
    for j, want in table.items():
        assert eh.a_poly(4, j).coeffs == want
    _under(start, 1)


# 2 ---------------------------------------------------------------------------


def test_dim5_parallelepiped_trio_both_routes():
    start = time.monotonic()
    for generators, want in TRIO:
        spec = pp.spec_from_vectors(generators)
        assert pp.parallelepiped_delta(spec).window == want
        assert pp.delta_by_counting(spec).window == want
    _under(start, 30)


# 3 ---------------------------------------------------------------------------


def test_skew_parallelepiped_headline_facts():
    start = time.monotonic()
    spec = pp.spec_from_vectors([(0, 0, 1), (3, 0, 1), (0, 1, 1)])
    report = pp.parallelepiped_delta(spec)
    assert report.window == (1, 8, 9, 0)
    assert report.unimodal is True
    assert report.alternatingly_increasing is False
    assert pp.parallelepiped_is_reflexive_translate(spec) is False
    _under(start, 1)


# 4 ---------------------------------------------------------------------------


def test_steep_simplex_box_points_and_integral_closure():
    start = time.monotonic()
    lifted = [v + (1,) for v in STEEP_SIMPLEX]
    opens = [point for point, _ in pp.box_points(lifted, "open")]
    assert opens == [(1, 1, 1, 1, 1, 2), (2, 2, 2, 2, 2, 4)]
    assert tr.box_poly(STEEP_SIMPLEX) == (0, 0, 1, 0, 1)  # t^2 + t^4
    p = pt.from_points(STEEP_SIMPLEX)
    assert pt.count_lattice_points(p, 1) == 6  # empty simplex
    assert pt.is_integrally_closed(p) is False
    _under(start, 5)


# 5 ---------------------------------------------------------------------------


def test_seven_point_polytope_triangulation_flip():
    start = time.monotonic()
    p = pt.from_points(SEVEN_POINTS)
    config = tr.config_from_points(SEVEN_POINTS)

    two_cells = tr.make_triangulation(config, [(0, 1, 2, 3, 4, 5), (1, 2, 3, 4, 5, 6)])
    assert tr.validate(two_cells, p)
    first_cell = [SEVEN_POINTS[i] for i in (0, 1, 2, 3, 4, 5)]
    assert tr.box_poly(first_cell) == (0, 0, 1, 0, 1)  # t^2 + t^4
    assert tr.is_box_unimodal(two_cells).box_unimodal is False

    five_cells = tr.make_triangulation(
        config,
        [
            (0, 1, 2, 3, 4, 6),
            (0, 1, 2, 3, 5, 6),
            (0, 1, 2, 4, 5, 6),
            (0, 1, 3, 4, 5, 6),
            (0, 2, 3, 4, 5, 6),
        ],
    )
    assert tr.validate(five_cells, p)
    assert all(tr.cell_volume(config, c) == 1 for c in five_cells.cells)
    assert tr.is_box_unimodal(five_cells).box_unimodal is True
    _under(start, 10)


# 6 ---------------------------------------------------------------------------


def test_ten_vertex_polytope_simplex_census():
    start = time.monotonic()
    p = pt.from_points(TEN_VERTICES)
    # the census could range over vertices or over all lattice points; here
    # they coincide, so there is exactly one reading and it is the one below
    assert sorted(pt.lattice_points(p, 1)) == sorted(p.vertices), (
        "census interpretations diverge: lattice points != vertices"
    )
    census = tr.simplex_census(p)
    assert len(census.nonunimodular) == 65
    volumes = dict(census.by_volume)
    assert volumes[2] == 60
    assert volumes[3] == 5
    vol3_boxes = {box for _, vol, box in census.nonunimodular if vol == 3}
    assert vol3_boxes == {(0, 0, 0, 2)}  # every volume-3 box polynomial is 2t^3
    _under(start, 300)


# 7 ---------------------------------------------------------------------------


def test_face_sum_identity_on_reflexive_corpus():
    start = time.monotonic()
    reflexive = [(name, p) for name, p in corpus_polytopes() if pt.is_reflexive(p)]
    names = {name for name, _ in reflexive}
    for family in (
        "cross-polytope-2",
        "cross-polytope-3",
        "cross-polytope-4",
        "cross-polytope-5",
        "reflexive-simplex-2",
        "reflexive-simplex-3",
        "reflexive-simplex-4",
        "cube-2",
        "cube-3",
    ):
        assert family in names
    assert len(reflexive) >= 10
    for name, p in reflexive:
        tri = boundary_pulling(name, p)
        assert tr.mp_delta(p, tri) == eh.delta_vector(p).window

    # a deliberately coarse triangulation whose boxes are all nonzero
    square = pt.hypercube(2, -1, 1)
    coarse = tr.make_triangulation(
        tr.config_from_points([(-1, -1), (1, -1), (-1, 1), (1, 1)]),
        [(0, 1), (0, 2), (1, 3), (2, 3)],
        "boundary",
    )
    assert all(
        tr.box_poly([coarse.config.points[i] for i in cell]) == (0, 1)
        for cell in coarse.cells
    )
    assert tr.mp_delta(square, coarse) == (1, 6, 1)
    assert eh.delta_vector(square).window == (1, 6, 1)
    _under(start, 120)


# 8 ---------------------------------------------------------------------------


def test_random_parallelepipeds_unimodal_and_alternating():
    start = time.monotonic()
    rng = random.Random(2026)
    full_box_cases = 0
    for _ in range(500):
        while True:
            k = rng.randint(2, 6)
            m = k if rng.random() < 0.8 else k + 1
            vecs = [tuple(rng.randint(-3, 3) for _ in range(m)) for _ in range(k)]
            if xm.rank(vecs) == k:
                break
        spec = pp.spec_from_vectors(vecs)
        report = pp.parallelepiped_delta(spec)
        assert report.unimodal, (vecs, report.window)
        census = pp.box_census(spec)
        if census.b[tuple(range(k))] >= 1:
            full_box_cases += 1
            assert report.alternatingly_increasing, (vecs, report.window)
    assert full_box_cases > 0  # the sweep exercised the implication
    _under(start, 300)


def test_building_block_invariants_through_dim8():
    start = time.monotonic()
    for i in range(0, 9):
        for j in range(-1, i + 1):
            coeffs = eh.a_poly(i, j).coeffs
            assert eh.is_unimodal(coeffs)
            if 0 <= j <= i - 1:
                # t divides A(i, j) and the degree stays at most i
                assert coeffs[0] == 0
                assert len(coeffs) - 1 <= i
                # mirror: t^{i+1} A(i, j, 1/t) = A(i, i-1-j, t)
                assert xm.poly_mirror(coeffs, i + 1) == eh.a_poly(i, i - 1 - j).coeffs
            if j >= 0 and 2 * j + 1 >= i > j:
                # A(i, j) = 2^{i-j} t delta(triangle^{i-j} x segment^{2j+1-i})
                window = eh.delta_simplex_product(i - j, 2 * j + 1 - i)
                scaled = xm.poly_trim(xm.poly_scale((0,) + tuple(window), 2 ** (i - j)))
                assert coeffs == scaled
    for d in range(0, 9):
        for k in range(2, 11):
            c_k = sum(
                (-1) ** m * math.comb(d + 2, m) * math.comb(d + k - m, k - m)
                for m in range(k + 1)
            )
            b_k = sum(
                (-1) ** m * m * math.comb(d + 2, m) * math.comb(d + k - m, k - m)
                for m in range(k + 1)
            )
            assert c_k == 0 and b_k == 0
    _under(start, 60)


def test_segment_product_transform_matches_counting():
    start = time.monotonic()
    seg = pt.hypercube(1, 0, 1)
    cases = [pt.standard_simplex(d) for d in (1, 2, 3, 4)]
    cases += [
        pt.cross_polytope(2),
        pt.cross_polytope(3),
        pt.hypercube(2, 0, 1),
        pt.hypercube(3, 0, 1),
        pt.hypercube(2, -1, 1),
        pt.from_points([(0, 0), (4, 0), (0, 4), (1, 1)]),
    ]
    rng = random.Random(2027)
    while len(cases) < 50:
        d = rng.randint(1, 3)
        pts = [tuple(rng.randint(0, 3) for _ in range(d)) for _ in range(rng.randint(d + 1, d + 4))]
        p = pt.from_points(pts)
        if p.dim == d:
            cases.append(p)
    for p in cases:
        product = pt.cartesian_product(p, seg)
        transformed = eh.product_with_segment(eh.delta_vector(p).window, p.dim)
        assert transformed == eh.delta_vector(product).window
    _under(start, 180)


def test_integrally_closed_random_polytopes_unimodal():
    start = time.monotonic()
    rng = random.Random(2028)
    zero_delta1 = with_interior = 0
    for d, wanted in ((2, 50), (3, 35), (4, 15)):
        accepted = 0
        while accepted < wanted:
            pts = [
                tuple(rng.randint(0, 2) for _ in range(d))
                for _ in range(rng.randint(d + 1, d + 4))
            ]
            p = pt.from_points(pts)
            if p.dim != d or not pt.is_integrally_closed(p):
                continue  # rejection sampling over integrally closed polytopes
            accepted += 1
            report = eh.delta_vector(p)
            assert report.unimodal, (pts, report.window)
            if report.window[1] == 0:
                zero_delta1 += 1
                assert report.normalized_volume == 1
                assert len(p.vertices) == d + 1  # a unimodular simplex
            if pt.interior_count(p, 1) > 0:
                with_interior += 1
                assert eh.check_interior_chain(report), (pts, report.window)
    assert zero_delta1 > 0 and with_interior > 0  # both implications exercised
    _under(start, 600)


def test_pulling_triangulations_regular_box_unimodal():
    start = time.monotonic()
    small = [(name, p) for name, p in corpus_polytopes() if p.dim <= 4]
    assert len(small) >= 9
    for name, p in small:
        config = tr.config_from_points(pt.lattice_points(p, 1))
        tri = tr.pulling_triangulation(config, "full")
        assert tr.uses_all_points(tri)
        assert tr.all_cells_empty(tri)  # fine: every lattice point is a vertex
        report = tr.is_box_unimodal(tri)
        assert report.regular, name
        assert report.box_unimodal, name
    for name, p in corpus_polytopes():
        if p.dim > 5 or not pt.is_reflexive(p):
            continue
        assert tr.is_box_unimodal(boundary_pulling(name, p)).box_unimodal, name
        assert eh.delta_vector(p).unimodal, name
    _under(start, 300)


# 9 ---------------------------------------------------------------------------


def test_enumeration_oracles_agree():
    start = time.monotonic()
    rng = random.Random(2029)
    for _ in range(200):
        while True:
            m = rng.randint(2, 5)
            k = rng.randint(1, m)
            vecs = [tuple(rng.randint(-3, 3) for _ in range(m)) for _ in range(k)]
            if xm.rank(vecs) == k:
                break
        spec = pp.spec_from_vectors(vecs)
        for mode in ("halfopen", "open"):
            assert pp.box_points(spec, mode) == pp.box_points_scan(spec, mode), vecs
    for _ in range(100):
        while True:
            m = rng.randint(2, 4)
            k = rng.randint(1, m)
            vecs = [tuple(rng.randint(-3, 3) for _ in range(m)) for _ in range(k)]
            if xm.rank(vecs) == k:
                break
        spec = pp.spec_from_vectors(vecs)
        for n in range(4):
            assert pp.closed_count(spec, n) == pp.count_closed_scan(spec, n), (vecs, n)
    _under(start, 180)
