"""Command line front end.

Exit codes: 0 success, 1 usage, 2 bad input or failed validation, 3 a clean
negative answer (no percolation, or bounds that do not meet), 4 resource
limits (search budget, stuck construction).  Outputs are byte stable so they
can be diffed and golden-tested.
"""

from __future__ import annotations

import argparse
import sys

from .band import (
    BandDiagram,
    band_diagram_from_provenance,
    build_band,
    load_band_spec,
    provenance_to_json,
)
from .bounds import format_report, report, report_to_json
from .cmap import (
    CombinatorialMap,
    faces,
    format_cmap,
    load_cmap,
    strands,
    validate,
)
from .errors import BandlinkError, BandSpecError, ConstructionStuck
from .hull import hull_constructive_band, hull_exact
from .percolation import (
    close,
    coloring_from_trace,
    format_trace,
    parse_trace,
    trace_to_json,
)
from .render import render_svg


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load(path: str, provenance: str | None = None):
    """Resolve a map argument to (map, band context or None).

    A .json path is a band spec, built on the spot; anything else is a .cmap
    file, optionally paired with a provenance sidecar.
    """
    if path.endswith(".json"):
        bd = build_band(load_band_spec(path))
        return bd.diagram, bd
    m = load_cmap(path)
    if provenance:
        with open(provenance, "r", encoding="utf-8") as fh:
            return m, band_diagram_from_provenance(m, fh.read())
    return m, None


def _parse_ints(values) -> list[int]:
    out = []
    for chunk in values or ():
        for tok in chunk.replace(",", " ").split():
            try:
                out.append(int(tok))
            except ValueError:
                raise BandSpecError(f"vertex id {tok!r} is not an integer")
    return out


def _cmd_validate(args) -> int:
    m, bd = _load(args.path)
    genera = _parse_ints(args.genera) if args.genera else None
    rep = validate(m, genera)
    line = f"V={rep.vertex_count} E={rep.edge_count} F={rep.face_count} g={rep.genus}"
    if rep.component_count > 1:
        line += f" components={rep.component_count}"
    if bd is not None:
        line += f" n={bd.n}"
    print(line)
    return 0


def _cmd_faces(args) -> int:
    m, bd = _load(args.path, args.provenance)
    for f in faces(m):
        line = (
            f"face {f.id}: darts "
            + " ".join(str(d) for d in f.boundary)
            + " vertices "
            + " ".join(str(v) for v in f.vertex_list)
        )
        if bd is not None and bd.face_provenance[f.id - 1] is not None:
            line += f" origin={bd.face_provenance[f.id - 1]}"
        print(line)
    return 0


def _cmd_strands(args) -> int:
    m, _ = _load(args.path)
    for s in strands(m):
        print(f"strand {s.id}: " + " ".join(str(d) for d in s.darts))
    return 0


def _cmd_build_band(args) -> int:
    bd = build_band(load_band_spec(args.path))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_cmap(bd.diagram))
    if args.provenance:
        with open(args.provenance, "w", encoding="utf-8") as fh:
            fh.write(provenance_to_json(bd))
    print(f"n={bd.n} crossings={bd.diagram.vertex_count}")
    return 0


def _cmd_percolate(args) -> int:
    m, _ = _load(args.path)
    manual = _parse_ints(args.manual)
    faces_list = faces(m)
    coloring, trace = close(m, faces_list, manual)
    if args.trace:
        text = (
            trace_to_json(trace)
            if args.trace.endswith(".json")
            else format_trace(trace)
        )
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(text)
    full = coloring.complete
    print(
        f"percolates={'true' if full else 'false'} "
        f"colored={len(coloring.colored)}/{m.vertex_count}"
    )
    return 0 if full else 3


def _run_hull(method, args, m: CombinatorialMap, bd: BandDiagram | None):
    if method == "constructive":
        if bd is None:
            raise BandSpecError(
                "the constructive method needs a band spec or --provenance"
            )
        return hull_constructive_band(bd)
    return hull_exact(m, budget=args.budget, start_size=args.start_size)


def _cmd_hull(args) -> int:
    m, bd = _load(args.path, args.provenance)
    method = "constructive" if args.constructive else "exact"
    result = _run_hull(method, args, m, bd)
    witness = " ".join(str(v) for v in result.witness) if result.witness else "-"
    print(f"h={result.size} method={result.method} witness={witness}")
    return 0


def _cmd_report(args) -> int:
    m, bd = _load(args.path, args.provenance)
    method = "exact" if args.exact or bd is None else "constructive"
    result = _run_hull(method, args, m, bd)
    rep = report(bd if bd is not None else m, result)
    sys.stdout.write(report_to_json(rep) if args.json else format_report(rep))
    return 0 if rep.conclusive else 3


def _cmd_render(args) -> int:
    m, bd = _load(args.path, args.provenance)
    coloring = None
    if args.trace:
        with open(args.trace, "r", encoding="utf-8") as fh:
            coloring = coloring_from_trace(parse_trace(fh.read()), m.vertex_count)
    elif args.manual is not None:
        coloring, _ = close(m, faces(m), _parse_ints(args.manual))
    svg = render_svg(m, coloring=coloring, band=bd)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bandlink", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a map or band spec and print counts")
    p.add_argument("path")
    p.add_argument(
        "--genera",
        action="append",
        help="expected per-component genera for disconnected maps",
    )
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("faces", help="list faces as dart and vertex walks")
    p.add_argument("path")
    p.add_argument("--provenance", help="sidecar JSON to annotate base faces")
    p.set_defaults(func=_cmd_faces)

    p = sub.add_parser("strands", help="list straight-ahead strands")
    p.add_argument("path")
    p.set_defaults(func=_cmd_strands)

    p = sub.add_parser("build-band", help="build a band diagram from a spec")
    p.add_argument("path")
    p.add_argument("-o", "--out", help="write the diagram as a .cmap file")
    p.add_argument("--provenance", help="write the provenance sidecar JSON")
    p.set_defaults(func=_cmd_build_band)

    p = sub.add_parser("percolate", help="close a coloring and report coverage")
    p.add_argument("path")
    p.add_argument("--manual", action="append", help="starting vertices, e.g. '1,4'")
    p.add_argument("--trace", help="write the coloring trace (.json for JSON)")
    p.set_defaults(func=_cmd_percolate)

    def add_hull_options(p):
        p.add_argument("path")
        p.add_argument("--provenance", help="sidecar JSON giving band context")
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("--start-size", type=int, default=0)

    p = sub.add_parser("hull", help="find a minimum percolating set")
    add_hull_options(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exhaustive search (default)")
    mode.add_argument("--constructive", action="store_true", help="band chain walk")
    p.set_defaults(func=_cmd_hull)

    p = sub.add_parser("report", help="bounds and conclusions from a hull")
    add_hull_options(p)
    p.add_argument(
        "--exact",
        action="store_true",
        help="force the exhaustive search (default when no band context)",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("render", help="draw a genus zero map as SVG")
    p.add_argument("path")
    p.add_argument("--provenance", help="sidecar JSON to mark crossing kinds")
    p.add_argument("--trace", help="tint vertices from a saved trace")
    p.add_argument("--manual", action="append", help="tint a fresh percolation run")
    p.add_argument("-o", "--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 1
    try:
        return args.func(args)
    except ConstructionStuck as exc:
        print(f"error: {exc}", file=sys.stderr)
        for line in exc.log:
            print(f"  {line}", file=sys.stderr)
        return exc.exit_code
    except BandlinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
