"""Command line front end.

Every subcommand emits JSON on stdout by default; --pretty switches to an
aligned text rendering.  Exit codes: 0 success, 2 usage or parse failure,
3 resource cap exceeded, 4 a checked invariant failed (a minimal
counterexample is dumped).  All output is exhaustive and deterministic;
--threads is accepted for interface stability but never changes results.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from pathlib import Path

from .complexes import (
    homology,
    matching_complex,
    morse_complex,
    pure_morse_from_trees,
    pure_part,
)
from .corpus import corpus_names, get_entry
from .counting import (
    count_all_dmfs,
    count_perfect_dmfs,
    count_spanning_trees,
    count_via_enumeration,
)
from .complexes import connectivity_report
from .diagram import Diagram, build_diagram, build_tait, colour_graphs, is_reduced, parse_pd
from .errors import KnotmorseError, ResourceLimit
from .moves import (
    MOVE_KINDS,
    POPULATIONS,
    build_move_graph,
    click_path_avoidance,
    clock_moves,
    marked_arc_roots,
    move_graph_to_dict,
    move_graph_to_dot,
    two_click_connect,
    verify_connectivity,
)
from .reference import COLUMNS, REFERENCE_HOMOLOGY, computed_row
from .states import (
    amended_poset_acyclic,
    enumerate_matchings,
    forests_to_matching,
    induced_forests,
    is_admissible,
    is_dmf,
    jordan_resolution,
    kpw,
    matching_to_dict,
    FILTERS,
)
from .counting import spanning_trees

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_VIOLATION = 4


def _load(spec: str, swap: bool = False) -> tuple[str, Diagram]:
    """A corpus name, or a path to a file holding one PD code."""
    if spec in corpus_names():
        if not swap:
            return spec, get_entry(spec).diagram
        text = get_entry(spec).pd_text
    else:
        path = Path(spec)
        if not path.is_file():
            raise SystemExit2(
                "unknown diagram %r (not a corpus name or file)" % spec
            )
        spec, text = path.stem, path.read_text()
    try:
        return spec, build_diagram(parse_pd(text), swap_colours=swap)
    except KnotmorseError as exc:
        raise SystemExit2("cannot build diagram from %s: %s" % (spec, exc))


class SystemExit2(Exception):
    """Usage-level failure, reported on stderr with exit code 2."""


def _emit(payload: dict, pretty: bool, lines=None) -> None:
    if pretty and lines is not None:
        for line in lines:
            print(line)
    elif pretty:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(json.dumps(payload, sort_keys=True))


def _ranks_str(ranks: dict) -> str:
    if not ranks:
        return "0"
    return " ".join("%d@deg%d" % (r, k) for k, r in sorted(ranks.items()))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_parse(args) -> int:
    name, d = _load(args.diagram, args.swap_colours)
    payload = {
        "name": name,
        "crossings": d.n_crossings,
        "arcs": 2 * d.n_crossings,
        "reduced": is_reduced(d),
        "faces": [
            {"id": f.index, "colour": f.colour, "degree": f.degree}
            for f in d.faces
        ],
    }
    lines = [
        "%s: %d crossings, %d faces, reduced=%s"
        % (name, d.n_crossings, len(d.faces), payload["reduced"])
    ] + [
        "  face %d: colour %d, degree %d" % (f["id"], f["colour"], f["degree"])
        for f in payload["faces"]
    ]
    _emit(payload, args.pretty, lines)
    return EXIT_OK


def cmd_info(args) -> int:
    name, d = _load(args.diagram, args.swap_colours)
    black, white = colour_graphs(d)
    perfect_enum, all_enum = count_via_enumeration(d)
    perfect_formula = count_perfect_dmfs(d)
    all_formula = count_all_dmfs(d)
    payload = {
        "name": name,
        "crossings": d.n_crossings,
        "black_vertices": black.n_vertices,
        "white_vertices": white.n_vertices,
        "spanning_trees": count_spanning_trees(black),
        "counts": {
            "perfect": {
                "formula": perfect_formula,
                "enumeration": perfect_enum,
                "agree": perfect_formula == perfect_enum,
            },
            "all": {
                "formula": all_formula,
                "enumeration": all_enum,
                "agree": all_formula == all_enum,
            },
        },
        "connectivity": connectivity_report(d),
    }
    lines = [
        "%s: %d crossings, %d black + %d white regions, %d spanning trees"
        % (name, d.n_crossings, black.n_vertices, white.n_vertices,
           payload["spanning_trees"]),
        "perfect Morse matchings: %d (formula) / %d (enumeration)"
        % (perfect_formula, perfect_enum),
        "loop-free matchings: %d (formula) / %d (enumeration)"
        % (all_formula, all_enum),
        "connectivity bound: %d" % payload["connectivity"]["bound"],
    ]
    _emit(payload, args.pretty, lines)
    return EXIT_OK


def cmd_states(args) -> int:
    name, d = _load(args.diagram, args.swap_colours)
    t = build_tait(d)
    stream = enumerate_matchings(t, args.filter)
    matchings = []
    total = 0
    for x in stream:
        total += 1
        if not args.count_only and (args.limit is None or len(matchings) < args.limit):
            matchings.append(matching_to_dict(t, x))
    payload = {"name": name, "filter": args.filter, "count": total}
    if not args.count_only:
        payload["matchings"] = matchings
    lines = ["%s: %d matchings under filter %s" % (name, total, args.filter)] + [
        "  %s" % m["edges"] for m in matchings
    ]
    _emit(payload, args.pretty, lines)
    return EXIT_OK


def _is_path_graph(nodes, edges) -> bool:
    if len(nodes) <= 1:
        return True
    if len(edges) != len(nodes) - 1:
        return False
    degree = {n: 0 for n in nodes}
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    ends = sorted(degree.values())
    return ends[:2] == [1, 1] and all(v == 2 for v in ends[2:])


def cmd_moves(args) -> int:
    name, d = _load(args.diagram, args.swap_colours)
    t = build_tait(d)
    v_b = v_w = None
    if args.population == "kauffman":
        if args.mark is None:
            raise SystemExit2("--population kauffman needs --mark <arc id>")
        if not 0 <= args.mark < 2 * d.n_crossings:
            raise SystemExit2("arc id %d out of range" % args.mark)
        v_b, v_w = marked_arc_roots(t, args.mark)
    kinds = tuple(args.kinds.split(",")) if args.kinds else MOVE_KINDS
    mg = build_move_graph(t, args.population, kinds, v_b=v_b, v_w=v_w)
    payload = move_graph_to_dict(mg)
    payload["name"] = name
    if args.connectivity:
        connected, components = verify_connectivity(mg)
        payload["connected"] = connected
        payload["components"] = components
        payload["path_graph"] = _is_path_graph(
            range(len(mg.nodes)), [(a, b) for a, b, _ in mg.edges]
        )
    if args.population == "perfect_admissible":
        payload["click_path_avoidance"] = click_path_avoidance(t)
    if args.dot:
        Path(args.dot).write_text(move_graph_to_dot(mg))
    lines = ["%s: %d nodes, %d edges" % (name, len(mg.nodes), len(mg.edges))]
    if args.connectivity:
        lines.append(
            "connected=%s components=%d path_graph=%s"
            % (payload["connected"], payload["components"], payload["path_graph"])
        )
    _emit(payload, args.pretty, lines)
    return EXIT_OK


def cmd_count(args) -> int:
    name, d = _load(args.diagram, args.swap_colours)
    perfect_enum, all_enum = count_via_enumeration(d)
    perfect_formula = count_perfect_dmfs(d)
    all_formula = count_all_dmfs(d)
    payload = {
        "name": name,
        "perfect": {
            "formula": perfect_formula,
            "enumeration": perfect_enum,
            "agree": perfect_formula == perfect_enum,
        },
        "all": {
            "formula": all_formula,
            "enumeration": all_enum,
            "agree": all_formula == all_enum,
        },
    }
    if args.perfect:
        payload = {"name": name, "perfect": payload["perfect"]}
        lines = ["%d" % perfect_formula]
    else:
        lines = [
            "perfect: %d (agree=%s)" % (perfect_formula, payload["perfect"]["agree"]),
            "all: %d (agree=%s)" % (all_formula, payload["all"]["agree"]),
        ]
    if not payload_agrees(payload):
        _emit(payload, args.pretty, None)
        return EXIT_VIOLATION
    _emit(payload, args.pretty, lines)
    return EXIT_OK


def payload_agrees(payload: dict) -> bool:
    return all(
        block["agree"]
        for block in payload.values()
        if isinstance(block, dict) and "agree" in block
    )


def cmd_complex(args) -> int:
    name, d = _load(args.diagram, args.swap_colours)
    t = build_tait(d)
    c = matching_complex(t) if args.kind == "matching" else morse_complex(t)
    if args.pure:
        c = pure_part(c)
    payload = {
        "name": name,
        "kind": args.kind,
        "pure": args.pure,
        "dimension": c.dimension,
        "n_facets": len(c.facets),
        "face_counts": list(c.face_counts()),
        "euler_characteristic": c.euler_characteristic(),
    }
    if args.facets:
        payload["facets"] = [list(f) for f in c.facets]
    lines = [
        "%s %s%s: dimension %d, %d facets, euler %d"
        % (name, args.kind, " pure" if args.pure else "", c.dimension,
           len(c.facets), payload["euler_characteristic"])
    ]
    if args.homology:
        h = homology(c)
        payload["homology"] = h.to_dict()
        lines.append("reduced homology: %s" % _ranks_str(h.ranks()))
        if not h.is_torsion_free():
            lines.append("torsion: %s" % h.torsion_by_degree())
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["name", "kind", "pure", "degree", "rank"])
            if args.homology:
                for k, r in sorted(homology(c).ranks().items()):
                    writer.writerow([name, args.kind, args.pure, k, r])
    _emit(payload, args.pretty, lines)
    return EXIT_OK


def cmd_table1(args) -> int:
    names = args.names.split(",") if args.names else [
        n for n in corpus_names() if n in REFERENCE_HOMOLOGY
    ]
    unknown = [n for n in names if n not in REFERENCE_HOMOLOGY]
    if unknown:
        raise SystemExit2("no reference values for: %s" % ", ".join(unknown))
    def one_row(name):
        try:
            return name, computed_row(get_entry(name).diagram)
        except ResourceLimit as exc:
            return name, exc

    # worker count never changes the output: results merge in name order
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        computed = list(pool.map(one_row, names))

    rows = []
    mismatches = []
    for name, row in computed:
        if isinstance(row, ResourceLimit):
            rows.append({"name": name, "skipped": str(row)})
            continue
        cells = {}
        for column in COLUMNS:
            got = row[column].ranks()
            want = REFERENCE_HOMOLOGY[name][column]
            cells[column] = {
                "computed": {str(k): v for k, v in got.items()},
                "reference": {str(k): v for k, v in want.items()},
                "agree": got == want,
                "torsion_free": row[column].is_torsion_free(),
            }
            if not cells[column]["agree"] or not cells[column]["torsion_free"]:
                mismatches.append({"name": name, "column": column, **cells[column]})
        rows.append({"name": name, "columns": cells})
    payload = {"rows": rows, "all_agree": not mismatches}
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["name", "column", "degree", "rank"])
            for row in rows:
                for column, cell in row.get("columns", {}).items():
                    for k, r in sorted(cell["computed"].items()):
                        writer.writerow([row["name"], column, k, r])
    lines = []
    for row in rows:
        if "skipped" in row:
            lines.append("%-4s skipped: %s" % (row["name"], row["skipped"]))
            continue
        cells = row["columns"]
        lines.append(
            "%-4s %s" % (
                row["name"],
                "  ".join(
                    "%s=%s%s" % (
                        column,
                        _ranks_str({int(k): v for k, v in cells[column]["computed"].items()}),
                        "" if cells[column]["agree"] else "!",
                    )
                    for column in COLUMNS
                ),
            )
        )
    if mismatches:
        payload["counterexample"] = mismatches[0]
        _emit(payload, args.pretty, None)
        return EXIT_VIOLATION
    _emit(payload, args.pretty, lines)
    return EXIT_OK


def _selftest_checks(cap: int):
    smalls = [n for n in corpus_names() if get_entry(n).diagram.n_crossings <= cap]

    def check_counting(report):
        for name in smalls:
            d = get_entry(name).diagram
            perfect_enum, all_enum = count_via_enumeration(d)
            if count_perfect_dmfs(d) != perfect_enum:
                return {"diagram": name, "field": "perfect"}
            if count_all_dmfs(d) != all_enum:
                return {"diagram": name, "field": "all"}
        report["diagrams"] = len(smalls)
        return None

    def check_loop_criterion(report):
        seen = 0
        for name in smalls:
            d = get_entry(name).diagram
            t = build_tait(d)
            for x in enumerate_matchings(t, "all"):
                seen += 1
                if is_dmf(t, x) != amended_poset_acyclic(t, x):
                    return {"diagram": name, "matching": list(x.edges)}
        report["matchings"] = seen
        return None

    def check_forest_roundtrip(report):
        seen = 0
        for name in smalls:
            t = build_tait(get_entry(name).diagram)
            for x in enumerate_matchings(t, "dmf"):
                seen += 1
                if forests_to_matching(t, induced_forests(t, x)) != x:
                    return {"diagram": name, "matching": list(x.edges)}
        report["matchings"] = seen
        return None

    def check_jordan(report):
        for name in smalls:
            d = get_entry(name).diagram
            t = build_tait(d)
            n = d.n_crossings
            for x in enumerate_matchings(t, "all"):
                j = jordan_resolution(d, x)
                if is_dmf(t, x) != (is_admissible(t, x) and j.count == 1):
                    return {"diagram": name, "matching": list(x.edges)}
                if len(x.edges) == n:
                    if is_admissible(t, x) != (j.count % 2 == 1):
                        return {"diagram": name, "matching": list(x.edges)}
        return None

    def check_clock(report):
        seen = 0
        for name in smalls:
            d = get_entry(name).diagram
            t = build_tait(d)
            for x in enumerate_matchings(t, "perfect_admissible"):
                before = jordan_resolution(d, x).count
                dmf = is_dmf(t, x)
                for move, y in clock_moves(t, x):
                    seen += 1
                    delta = jordan_resolution(d, y).count - before
                    if delta not in (-2, 0, 2) or delta != move.delta_j:
                        return {"diagram": name, "matching": list(x.edges),
                                "site": list(move.site)}
                    if dmf and move.clock_type == "II":
                        return {"diagram": name, "matching": list(x.edges),
                                "site": list(move.site), "type": "II"}
        report["moves"] = seen
        return None

    def check_kpw(report):
        for name in smalls:
            d = get_entry(name).diagram
            t = build_tait(d)
            black = colour_graphs(d)[0]
            image = set()
            for tree in spanning_trees(black):
                for v_b in t.black_faces:
                    for v_w in t.white_faces:
                        image.add(kpw(t, tree, v_b, v_w).edges)
            direct = {x.edges for x in enumerate_matchings(t, "perfect_dmf")}
            if image != direct:
                return {"diagram": name}
        return None

    def check_click_pairs(report):
        seen = 0
        for name in smalls:
            t = build_tait(get_entry(name).diagram)
            groups = {}
            for x in enumerate_matchings(t, "perfect_dmf"):
                f = induced_forests(t, x)
                groups.setdefault((f.black_edges, f.white_edges), []).append((x, f))
            for members in groups.values():
                for (x, _), (y, fy) in combinations(members, 2):
                    seen += 1
                    steps = two_click_connect(
                        t, x, fy.black_roots[0], fy.white_roots[0]
                    )
                    if len(steps) > 2 or (steps[-1][1] if steps else x) != y:
                        return {"diagram": name, "source": list(x.edges),
                                "target": list(y.edges)}
        report["pairs"] = seen
        return None

    def check_pure_facets(report):
        for name in smalls:
            d = get_entry(name).diagram
            t = build_tait(d)
            if set(pure_morse_from_trees(d).facets) != set(
                pure_part(morse_complex(t)).facets
            ):
                return {"diagram": name}
        return None

    def check_homology(report):
        for name in smalls:
            d = get_entry(name).diagram
            t = build_tait(d)
            bound = connectivity_report(d)["bound"]
            if name == "4_1" and bound != 1:
                return {"diagram": name, "reason": "figure-eight bound"}
            for c in (matching_complex(t), morse_complex(t)):
                h = homology(c)
                chi = sum((-1) ** k * b for k, b in enumerate(h.betti))
                if chi != c.euler_characteristic() - 1:
                    return {"diagram": name, "reason": "euler"}
                if any(h.ranks().get(k, 0) for k in range(bound + 1)):
                    return {"diagram": name, "reason": "connectivity bound"}
        return None

    return (
        ("counting", check_counting),
        ("loop_criterion", check_loop_criterion),
        ("forest_roundtrip", check_forest_roundtrip),
        ("jordan_parity", check_jordan),
        ("clock_shift", check_clock),
        ("kpw_image", check_kpw),
        ("click_pairs", check_click_pairs),
        ("pure_facets", check_pure_facets),
        ("homology_consistency", check_homology),
    )


def cmd_selftest(args) -> int:
    checks = _selftest_checks(args.max_crossings)
    reports = [{"name": name, "status": "pass"} for name, _ in checks]

    # checks are independent; reported in fixed order whatever the pool does
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        outcomes = list(
            pool.map(lambda pair: pair[0][1](pair[1]), zip(checks, reports))
        )

    for report, counterexample in zip(reports, outcomes):
        if counterexample is not None:
            payload = {"check": report["name"], "counterexample": counterexample}
            _emit(payload, args.pretty, None)
            return EXIT_VIOLATION
    payload = {"checks": reports, "all_passed": True}
    _emit(payload, args.pretty, ["%s: pass" % r["name"] for r in reports])
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knotmorse",
        description="Exact combinatorics of chequerboard knot projections.",
    )
    parser.add_argument("--pretty", action="store_true", help="aligned text output")
    parser.add_argument(
        "--threads", type=int, default=1,
        help="reserved; results never depend on it",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and validate a diagram")
    p.add_argument("diagram")
    p.add_argument("--swap-colours", action="store_true",
                   help="flip the chequerboard colouring")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("info", help="summary report with oracle agreement")
    p.add_argument("diagram")
    p.add_argument("--swap-colours", action="store_true",
                   help="flip the chequerboard colouring")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("states", help="enumerate matchings")
    p.add_argument("diagram")
    p.add_argument("--swap-colours", action="store_true",
                   help="flip the chequerboard colouring")
    p.add_argument("--filter", choices=FILTERS, default="all")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_states)

    p = sub.add_parser("moves", help="build a move graph")
    p.add_argument("diagram")
    p.add_argument("--swap-colours", action="store_true",
                   help="flip the chequerboard colouring")
    p.add_argument("--population", choices=POPULATIONS, default="perfect_dmfs")
    p.add_argument("--mark", type=int, default=None, help="marked arc id")
    p.add_argument("--kinds", default=None, help="comma separated move kinds")
    p.add_argument("--connectivity", action="store_true")
    p.add_argument("--dot", default=None, help="write the graph in dot format")
    p.set_defaults(func=cmd_moves)

    p = sub.add_parser("count", help="count Morse matchings, formula vs enumeration")
    p.add_argument("diagram")
    p.add_argument("--swap-colours", action="store_true",
                   help="flip the chequerboard colouring")
    p.add_argument("--perfect", action="store_true", help="perfect matchings only")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("complex", help="build a complex, optionally its homology")
    p.add_argument("diagram")
    p.add_argument("--swap-colours", action="store_true",
                   help="flip the chequerboard colouring")
    p.add_argument("--kind", choices=("matching", "morse"), required=True)
    p.add_argument("--pure", action="store_true")
    p.add_argument("--homology", action="store_true")
    p.add_argument("--facets", action="store_true")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("table1", help="homology of all four complexes vs references")
    p.add_argument("--names", default=None, help="comma separated corpus names")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("selftest", help="run the property checks")
    p.add_argument("--max-crossings", type=int, default=5)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except KnotmorseError as exc:
        if isinstance(exc, ResourceLimit):
            print("resource limit: %s" % exc, file=sys.stderr)
            return EXIT_RESOURCE
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
