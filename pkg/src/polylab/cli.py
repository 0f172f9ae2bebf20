"""Command-line front end: JSON file I/O and the bundled example corpus.

Subcommands
-----------
count FILE --dilation N          lattice points of the N-th dilate
delta FILE                       delta vector plus headline facts
ppd delta FILE                   parallelepiped delta via the A-family formula
ppd census FILE                  open-box counts b(G) per generator subset
ppd reflexive FILE               is the parallelepiped a reflexive translate?
apoly I J                        the building-block polynomial A(i, j)
eulerian N                       Eulerian polynomial Eul(N)
box FILE                         box polynomial of a lattice simplex
check FILE [--unimodal ...]      delta predicates; exit 1 if any fails
triangulate FILE [--scope S] [--order I,J,...]   pulling triangulation
tri check TRIFILE --against FILE [--regular] [--box-unimodal]
mp-delta FILE TRIFILE            delta of a reflexive polytope from a
                                 boundary triangulation's boxes and links
corpus verify [--filter NAME]    re-check every bundled example

Numeric output is a single JSON line ``{"result": ..., "meta": {...}}``.
Exit codes: 0 success, 1 a requested check returned false, 2 malformed input.

File schemas (integers must stay below 2**53 in magnitude):
  polytope       {"vertices": [[int, ...], ...]} with an optional "points"
                 key listing extra lattice points to feed triangulations
  generators     {"generators": [[int, ...], ...]}
  triangulation  {"points": [[int, ...], ...], "cells": [[index, ...], ...]}
                 (0-based indices; the envelope emitted by ``triangulate``
                 is accepted back as-is)
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import ehrhart as eh
from . import parallelepiped as pp
from . import polytope as pt
from . import triangulation as tr

_MAX_FILE_INT = 2**53


class SchemaError(ValueError):
    """An input file violates its schema; the message carries a JSON pointer."""


# ---------------------------------------------------------------------------
# Loaders


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc


def _int_matrix(value, pointer: str, width: int | None = None):
    """Validate a nonempty rectangular array of bounded integers."""
    if not isinstance(value, list) or not value:
        raise SchemaError(f"{pointer}: expected a nonempty array of integer arrays")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or not row:
            raise SchemaError(f"{pointer}/{i}: expected a nonempty integer array")
        if width is None:
            width = len(row)
        if len(row) != width:
            raise SchemaError(f"{pointer}/{i}: expected {width} entries, got {len(row)}")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise SchemaError(f"{pointer}/{i}/{j}: expected an integer")
            if abs(x) >= _MAX_FILE_INT:
                raise SchemaError(f"{pointer}/{i}/{j}: magnitude exceeds 2**53")
        rows.append(tuple(row))
    return rows, width


def load_polytope(path: str) -> pt.LatticePolytope:
    data = _load_json(path)
    if not isinstance(data, dict) or "vertices" not in data:
        raise SchemaError(f"{path}: /vertices: missing key")
    rows, width = _int_matrix(data["vertices"], "/vertices")
    if "points" in data:
        extra, _ = _int_matrix(data["points"], "/points", width)
        rows = rows + extra
    return pt.from_points(rows)


def load_generators(path: str) -> pp.ParallelepipedSpec:
    data = _load_json(path)
    if not isinstance(data, dict) or "generators" not in data:
        raise SchemaError(f"{path}: /generators: missing key")
    rows, _ = _int_matrix(data["generators"], "/generators")
    try:
        return pp.spec_from_vectors(rows)
    except ValueError as exc:
        raise SchemaError(f"/generators: {exc}") from exc


def load_triangulation(path: str):
    """Parse a triangulation file into (points, cells) index tuples."""
    data = _load_json(path)
    if isinstance(data, dict) and isinstance(data.get("result"), dict):
        data = data["result"]  # the envelope emitted by `triangulate`
    if not isinstance(data, dict) or "points" not in data or "cells" not in data:
        raise SchemaError(f"{path}: expected keys /points and /cells")
    points, _ = _int_matrix(data["points"], "/points")
    raw_cells = data["cells"]
    if not isinstance(raw_cells, list) or not raw_cells:
        raise SchemaError("/cells: expected a nonempty array of index arrays")
    cells = []
    for i, cell in enumerate(raw_cells):
        if not isinstance(cell, list) or not cell:
            raise SchemaError(f"/cells/{i}: expected a nonempty index array")
        for j, x in enumerate(cell):
            if not isinstance(x, int) or isinstance(x, bool):
                raise SchemaError(f"/cells/{i}/{j}: expected an integer index")
            if not 0 <= x < len(points):
                raise SchemaError(
                    f"/cells/{i}: index {x} out of range for {len(points)} points"
                )
        cells.append(tuple(cell))
    return tuple(points), tuple(cells)


def _build_triangulation(points, cells, target: pt.LatticePolytope) -> tr.Triangulation:
    """Assemble a Triangulation, inferring scope from cell size vs dim."""
    size = len(cells[0])
    if size == target.dim + 1:
        scope = "full"
    elif size == target.dim:
        scope = "boundary"
    else:
        raise SchemaError(
            f"/cells: cell size {size} matches neither full ({target.dim + 1}) "
            f"nor boundary ({target.dim}) scope"
        )
    try:
        return tr.make_triangulation(tr.config_from_points(points), cells, scope)
    except ValueError as exc:
        raise SchemaError(f"/cells: {exc}") from exc


# ---------------------------------------------------------------------------
# Output helpers


def _emit(result, meta) -> None:
    print(json.dumps({"result": result, "meta": meta}, separators=(",", ":")))


def _report_meta(report: eh.DeltaReport) -> dict:
    return {
        "dim": report.dim,
        "degree": report.degree,
        "codegree": report.codegree,
        "normalized_volume": report.normalized_volume,
        "unimodal": report.unimodal,
        "symmetric": report.symmetric,
        "alternatingly_increasing": report.alternatingly_increasing,
    }


def _subset_key(subset) -> str:
    return ",".join(str(i) for i in subset)


# ---------------------------------------------------------------------------
# Commands


def _cmd_count(args) -> int:
    if args.dilation < 0:
        raise SchemaError("--dilation must be nonnegative")
    p = load_polytope(args.file)
    count = pt.count_lattice_points(p, args.dilation)
    _emit(count, {"dilation": args.dilation, "dim": p.dim, "ambient_dim": p.ambient_dim})
    return 0


def _cmd_delta(args) -> int:
    report = eh.delta_vector(load_polytope(args.file))
    _emit(list(report.window), _report_meta(report))
    return 0


def _cmd_ppd(args) -> int:
    spec = load_generators(args.file)
    if args.action == "delta":
        report = pp.parallelepiped_delta(spec)
        _emit(list(report.window), _report_meta(report))
        return 0
    census = pp.box_census(spec)
    if args.action == "census":
        b = {
            _subset_key(g): v
            for g, v in sorted(census.b.items(), key=lambda kv: (len(kv[0]), kv[0]))
            if v
        }
        open_points = [list(q) for q, _ in pp.box_points(spec, "open")]
        _emit(
            {"b": b, "open": open_points},
            {"generators": spec.count, "halfopen_total": sum(census.b.values())},
        )
        return 0
    ok = pp.parallelepiped_is_reflexive_translate(spec)
    full = tuple(range(spec.count))
    _emit(ok, {"b_full": census.b[full], "b_max": max(census.b.values())})
    return 0 if ok else 1


def _cmd_apoly(args) -> int:
    poly = eh.a_poly(args.i, args.j)
    _emit(list(poly.coeffs), {"i": poly.i, "j": poly.j})
    return 0


def _cmd_eulerian(args) -> int:
    coeffs = eh.eulerian(args.n)
    result = coeffs if isinstance(coeffs, str) else list(coeffs)
    _emit(result, {"n": args.n})
    return 0


def _cmd_box(args) -> int:
    p = load_polytope(args.file)
    points = p.vertices + p.extra_points
    if len(points) != p.dim + 1:
        raise SchemaError(
            f"box polynomial needs a simplex; got {len(points)} points of dimension {p.dim}"
        )
    _emit(list(tr.box_poly(points)), {"dim": p.dim})
    return 0


_CHECK_FLAGS = (
    ("unimodal", "unimodal"),
    ("symmetric", "symmetric"),
    ("altinc", "altinc"),
    ("reflexive", "reflexive"),
    ("integrally-closed", "integrally_closed"),
    ("interior-chain", "interior_chain"),
)


def _cmd_check(args) -> int:
    p = load_polytope(args.file)
    report = eh.delta_vector(p)
    wanted = [name for name, dest in _CHECK_FLAGS if getattr(args, dest)]
    if not wanted:
        wanted = [name for name, _ in _CHECK_FLAGS]
    results = {}
    for name in wanted:
        if name == "unimodal":
            results[name] = report.unimodal
        elif name == "symmetric":
            results[name] = report.symmetric
        elif name == "altinc":
            results[name] = report.alternatingly_increasing
        elif name == "reflexive":
            results[name] = pt.is_reflexive(p)
        elif name == "integrally-closed":
            results[name] = pt.is_integrally_closed(p)
        else:
            results[name] = eh.check_interior_chain(report)
    _emit(results, _report_meta(report))
    return 0 if all(results.values()) else 1


def _cmd_triangulate(args) -> int:
    p = load_polytope(args.file)
    if p.extra_points:
        points = sorted(p.vertices + p.extra_points)
    else:
        points = pt.lattice_points(p, 1)
    config = tr.config_from_points(points)
    order = None
    if args.order is not None:
        try:
            order = [int(token) for token in args.order.split(",")]
        except ValueError:
            raise SchemaError("--order: expected comma-separated integers") from None
    try:
        tri = tr.pulling_triangulation(config, args.scope, order)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    _emit(
        {
            "points": [list(q) for q in tri.config.points],
            "cells": [list(c) for c in tri.cells],
        },
        {"scope": tri.scope, "cell_count": len(tri.cells), "fine": tr.uses_all_points(tri)},
    )
    return 0


def _cmd_tri_check(args) -> int:
    target = load_polytope(args.against)
    points, cells = load_triangulation(args.trifile)
    tri = _build_triangulation(points, cells, target)
    reason = tr.invalidity(tri, target)
    results = {"valid": reason is None}
    meta = {"scope": tri.scope, "cell_count": len(tri.cells)}
    if reason is not None:
        meta["reason"] = reason
    if args.regular:
        results["regular"] = tr.is_regular(tri).regular
    if args.box_unimodal:
        box_report = tr.is_box_unimodal(tri)
        results["box-unimodal"] = box_report.box_unimodal
        if box_report.failing_faces:
            meta["failing_faces"] = [list(f) for f in box_report.failing_faces]
    _emit(results, meta)
    return 0 if all(results.values()) else 1


def _cmd_mp_delta(args) -> int:
    target = load_polytope(args.file)
    points, cells = load_triangulation(args.trifile)
    tri = _build_triangulation(points, cells, target)
    try:
        window = tr.mp_delta(target, tri)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    _emit(list(window), {"dim": target.dim, "cell_count": len(tri.cells)})
    return 0


# ---------------------------------------------------------------------------
# Corpus


class _EntryContext:
    """Lazily built domain objects shared by the checks of one entry."""

    def __init__(self, entry: dict):
        self.input = entry.get("input", {})
        self._cache: dict = {}

    def _get(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def spec(self) -> pp.ParallelepipedSpec:
        return self._get(
            "spec",
            lambda: pp.spec_from_vectors([tuple(v) for v in self.input["generators"]]),
        )

    def census(self) -> pp.BoxCensus:
        return self._get("census", lambda: pp.box_census(self.spec()))

    def polytope(self) -> pt.LatticePolytope:
        def build():
            rows = [tuple(v) for v in self.input["vertices"]]
            rows += [tuple(v) for v in self.input.get("points", [])]
            return pt.from_points(rows)

        return self._get("polytope", build)

    def report(self) -> eh.DeltaReport:
        def build():
            if "generators" in self.input:
                return pp.parallelepiped_delta(self.spec())
            return eh.delta_vector(self.polytope())

        return self._get("report", build)

    def triangulation(self) -> tr.Triangulation:
        def build():
            data = self.input["triangulation"]
            points = tuple(tuple(q) for q in data["points"])
            cells = tuple(tuple(c) for c in data["cells"])
            return _build_triangulation(points, cells, self.polytope())

        return self._get("triangulation", build)

    def pulling(self) -> tr.Triangulation:
        def build():
            config = tr.config_from_points(pt.lattice_points(self.polytope(), 1))
            return tr.pulling_triangulation(config, "boundary")

        return self._get("pulling", build)

    def simplex_census(self) -> tr.SimplexCensus:
        return self._get("simplex_census", lambda: tr.simplex_census(self.polytope()))


def _eval_check(ctx: _EntryContext, check: dict):
    kind = check["kind"]
    if kind == "apoly":
        return list(eh.a_poly(check["i"], check["j"]).coeffs)
    if kind == "eulerian":
        got = eh.eulerian(check["n"])
        return got if isinstance(got, str) else list(got)
    if kind == "ppd-delta":
        return list(pp.parallelepiped_delta(ctx.spec()).window)
    if kind == "ppd-delta-by-counting":
        return list(pp.delta_by_counting(ctx.spec()).window)
    if kind == "ppd-census-b":
        items = sorted(ctx.census().b.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return {_subset_key(g): v for g, v in items if v}
    if kind == "ppd-closed-count":
        return pp.closed_count(ctx.spec(), check["n"])
    if kind == "ppd-open-points":
        return [list(q) for q, _ in pp.box_points(ctx.spec(), "open")]
    if kind == "ppd-reflexive-translate":
        return pp.parallelepiped_is_reflexive_translate(ctx.spec())
    if kind == "delta":
        return list(eh.delta_vector(ctx.polytope()).window)
    if kind == "count":
        return pt.count_lattice_points(ctx.polytope(), check["n"])
    if kind in ("unimodal", "symmetric", "altinc", "interior-chain"):
        report = ctx.report()
        return {
            "unimodal": report.unimodal,
            "symmetric": report.symmetric,
            "altinc": report.alternatingly_increasing,
            "interior-chain": eh.check_interior_chain(report),
        }[kind]
    if kind == "reflexive":
        return pt.is_reflexive(ctx.polytope())
    if kind == "integrally-closed":
        return pt.is_integrally_closed(ctx.polytope())
    if kind == "box-poly":
        if "cell" in check:
            tri_points = ctx.input["triangulation"]["points"]
            points = [tuple(tri_points[i]) for i in check["cell"]]
        else:
            p = ctx.polytope()
            points = p.vertices + p.extra_points
        return list(tr.box_poly(points))
    if kind == "tri-valid":
        return tr.validate(ctx.triangulation(), ctx.polytope())
    if kind == "tri-box-unimodal":
        return tr.is_box_unimodal(ctx.triangulation()).box_unimodal
    if kind == "tri-all-unimodular":
        tri = ctx.triangulation()
        return all(tr.cell_volume(tri.config, cell) == 1 for cell in tri.cells)
    if kind == "mp-delta":
        return list(tr.mp_delta(ctx.polytope(), ctx.triangulation()))
    if kind == "mp-delta-pulling":
        return list(tr.mp_delta(ctx.polytope(), ctx.pulling()))
    if kind == "pulling-box-unimodal":
        return tr.is_box_unimodal(ctx.pulling()).box_unimodal
    if kind == "census-nonunimodular":
        return len(ctx.simplex_census().nonunimodular)
    if kind == "census-by-volume":
        return {str(v): n for v, n in ctx.simplex_census().by_volume}
    if kind == "census-box-polys":
        volume = check["volume"]
        polys = sorted(
            {box for _, v, box in ctx.simplex_census().nonunimodular if v == volume}
        )
        return [list(box) for box in polys]
    if kind == "lattice-points-are-vertices":
        p = ctx.polytope()
        return sorted(pt.lattice_points(p, 1)) == sorted(p.vertices)
    raise SchemaError(f"unknown corpus check kind {kind!r}")


def corpus_entries() -> list[dict]:
    """All bundled corpus entries, in name order."""
    root = resources.files(__package__).joinpath("corpus")
    entries = []
    for item in sorted(root.iterdir(), key=lambda p: p.name):
        if item.name.endswith(".json"):
            entries.append(json.loads(item.read_text(encoding="utf-8")))
    return sorted(entries, key=lambda e: e["name"])


def run_corpus(filter_text: str | None = None, out=None) -> int:
    """Re-run every bundled example; print one PASS/FAIL line per entry."""
    out = out if out is not None else sys.stdout
    entries = corpus_entries()
    if filter_text:
        entries = [e for e in entries if filter_text in e["name"]]
    if not entries:
        print(f"no corpus entries match {filter_text!r}", file=out)
        return 1
    failures = 0
    for entry in entries:
        ctx = _EntryContext(entry)
        problems = []
        for check in entry.get("checks", []):
            try:
                got = _eval_check(ctx, check)
            except Exception as exc:  # surfaced per entry, not fatal to the run
                problems.append(f"{check['kind']} raised {exc!r}")
                continue
            if got != check["want"]:
                problems.append(f"{check['kind']} expected {check['want']!r} got {got!r}")
        if problems:
            failures += 1
            print(f"FAIL {entry['name']}: " + "; ".join(problems), file=out)
        else:
            print(f"PASS {entry['name']} ({len(entry.get('checks', []))} checks)", file=out)
    return 1 if failures else 0


def _cmd_corpus_verify(args) -> int:
    return run_corpus(args.filter)


# ---------------------------------------------------------------------------
# Dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polylab",
        description="Exact Ehrhart delta vectors for lattice polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("count", help="lattice points of a dilate")
    sp.add_argument("file")
    sp.add_argument("--dilation", type=int, required=True)
    sp.set_defaults(fn=_cmd_count)

    sp = sub.add_parser("delta", help="delta vector of a polytope")
    sp.add_argument("file")
    sp.set_defaults(fn=_cmd_delta)

    sp = sub.add_parser("ppd", help="lattice parallelepiped queries")
    ppd_sub = sp.add_subparsers(dest="action", required=True)
    for action, text in (
        ("delta", "delta vector via the A-family formula"),
        ("census", "open-box counts per generator subset"),
        ("reflexive", "reflexive-translate criterion (exit 1 if false)"),
    ):
        q = ppd_sub.add_parser(action, help=text)
        q.add_argument("file")
        q.set_defaults(fn=_cmd_ppd)

    sp = sub.add_parser("apoly", help="the polynomial A(i, j)")
    sp.add_argument("i", type=int)
    sp.add_argument("j", type=int)
    sp.set_defaults(fn=_cmd_apoly)

    sp = sub.add_parser("eulerian", help="Eulerian polynomial Eul(n)")
    sp.add_argument("n", type=int)
    sp.set_defaults(fn=_cmd_eulerian)

    sp = sub.add_parser("box", help="box polynomial of a lattice simplex")
    sp.add_argument("file")
    sp.set_defaults(fn=_cmd_box)

    sp = sub.add_parser("check", help="delta predicates; exit 1 if any fails")
    sp.add_argument("file")
    sp.add_argument("--unimodal", action="store_true")
    sp.add_argument("--symmetric", action="store_true")
    sp.add_argument("--altinc", action="store_true")
    sp.add_argument("--reflexive", action="store_true")
    sp.add_argument("--integrally-closed", action="store_true")
    sp.add_argument("--interior-chain", action="store_true")
    sp.set_defaults(fn=_cmd_check)

    sp = sub.add_parser("triangulate", help="pulling triangulation of the lattice points")
    sp.add_argument("file")
    sp.add_argument("--scope", choices=("full", "boundary"), default="full")
    sp.add_argument("--order", help="comma-separated pulling priority (point indices)")
    sp.set_defaults(fn=_cmd_triangulate)

    sp = sub.add_parser("tri", help="triangulation checks")
    tri_sub = sp.add_subparsers(dest="action", required=True)
    q = tri_sub.add_parser("check", help="validate against a polytope")
    q.add_argument("trifile")
    q.add_argument("--against", required=True)
    q.add_argument("--regular", action="store_true")
    q.add_argument("--box-unimodal", action="store_true")
    q.set_defaults(fn=_cmd_tri_check)

    sp = sub.add_parser("mp-delta", help="delta from a boundary triangulation")
    sp.add_argument("file")
    sp.add_argument("trifile")
    sp.set_defaults(fn=_cmd_mp_delta)

    sp = sub.add_parser("corpus", help="bundled examples")
    corpus_sub = sp.add_subparsers(dest="action", required=True)
    q = corpus_sub.add_parser("verify", help="re-check every bundled example")
    q.add_argument("--filter", help="only entries whose name contains this text")
    q.set_defaults(fn=_cmd_corpus_verify)

    return parser


def cli_dispatch(argv) -> int:
    """Run one command line; return the process exit code."""
    try:
        args = _build_parser().parse_args(list(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.fn(args)
    except (SchemaError, pt.ScaleGuardError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))
