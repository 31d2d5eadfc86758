"""Graph and drawing file formats, SVG rendering and the command line."""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Sequence, TextIO

from .analysis import perimeter_descent_audit
from .decomposition import Chain, chain_decompose
from .errors import InfeasiblePlacement, InvalidInput, NotNestedFamily, OuterdrawError
from .generators import (
    EmbeddedGraph,
    gen_fan_pendant,
    gen_nested_family,
    gen_random_bipartite_outerplanar,
    gen_random_maximal_outerplanar,
)
from .graph_core import Edge, OuterplanarGraph, as_maximal, norm_edge, recognize_outerplanar
from .layout import ChainFragment, Drawing, LayoutParams, Strip, draw, naive_nested_draw
from .validation import edge_length_ratio, find_crossings, validate_drawing

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CLASS = 2
EXIT_INVALID = 3
EXIT_INFEASIBLE = 4

SVG_MARGIN = 0.05


# ---------------------------------------------------------------------------
# graphs


def parse_graph_text(text: str) -> dict[str, Any]:
    """Parse either the JSON graph format or the ``n m`` / ``u v`` text format."""
    stripped = text.lstrip()
    if not stripped:
        raise InvalidInput("empty graph input")
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"bad graph JSON: {exc}") from None
        if not isinstance(data, dict) or "n" not in data or "edges" not in data:
            raise InvalidInput("graph JSON needs the keys 'n' and 'edges'")
        return data
    rows = [ln.split() for ln in stripped.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [[int(r[0]), int(r[1])] for r in rows[1 : 1 + m]]
    except (IndexError, ValueError):
        raise InvalidInput("text graph format is 'n m' followed by m lines 'u v'") from None
    if len(edges) != m:
        raise InvalidInput(f"expected {m} edge lines, found {len(edges)}")
    return {"n": n, "edges": edges}


def graph_from_data(data: dict[str, Any]) -> OuterplanarGraph:
    try:
        n = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
        cycle = data.get("outer_cycle")
        cycle = None if cycle is None else [int(v) for v in cycle]
    except (TypeError, ValueError, KeyError):
        raise InvalidInput("malformed graph data") from None
    return recognize_outerplanar(n, edges, cycle)


def nested_from_data(data: dict[str, Any], g: OuterplanarGraph) -> EmbeddedGraph | None:
    if "face_assignment" not in data:
        return None
    try:
        fa = {int(v): tuple(int(x) for x in f) for v, f in data["face_assignment"].items()}
        parent = {int(v): norm_edge(*map(int, e)) for v, e in data.get("parent_edge", {}).items()}
        level = tuple(int(x) for x in data.get("level", []))
        dist_edges = frozenset(norm_edge(*map(int, e)) for e in data.get("distinguished_edges", []))
        levels = int(data.get("levels", max(level, default=0)))
    except (TypeError, ValueError, AttributeError):
        raise InvalidInput("malformed face assignment") from None
    return EmbeddedGraph(g, levels, fa, parent, level, dist_edges)


def graph_to_data(g: OuterplanarGraph, nested: EmbeddedGraph | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "n": g.vertex_count,
        "edges": [list(e) for e in sorted(g.edges)],
        "outer_cycle": list(g.outer_cycle),
    }
    if nested is not None:
        out["levels"] = nested.levels
        out["face_assignment"] = {str(v): list(f) for v, f in sorted(nested.face_assignment.items())}
        out["parent_edge"] = {str(v): list(e) for v, e in sorted(nested.parent_edge.items())}
        out["level"] = list(nested.level)
        out["distinguished_edges"] = [list(e) for e in sorted(nested.distinguished_edges)]
    return out


# ---------------------------------------------------------------------------
# drawings


def _edge_key(e: Edge) -> str:
    return f"{e[0]}-{e[1]}"


def drawing_to_data(d: Drawing) -> dict[str, Any]:
    """Drawing JSON; floats use the shortest repr that reads back bit for bit."""
    return {
        "vertices": [{"id": i, "x": float(x), "y": float(y)} for i, (x, y) in enumerate(d.positions)],
        "edges": [list(e) for e in d.edges],
        "edge_class": {_edge_key(e): c for e, c in sorted(d.edge_class.items())},
        "meta": d.meta,
    }


def drawing_from_data(data: dict[str, Any]) -> Drawing:
    try:
        verts = sorted(data["vertices"], key=lambda r: int(r["id"]))
        if [int(r["id"]) for r in verts] != list(range(len(verts))):
            raise InvalidInput("vertex ids must be 0..n-1")
        pos = tuple((float(r["x"]), float(r["y"])) for r in verts)
        edges = tuple(norm_edge(int(u), int(v)) for u, v in data["edges"])
        ec: dict[Edge, str] = {}
        for k, c in data.get("edge_class", {}).items():
            u, v = k.split("-")
            ec[norm_edge(int(u), int(v))] = str(c)
    except (KeyError, TypeError, ValueError):
        raise InvalidInput("malformed drawing JSON") from None
    if any(not (math.isfinite(x) and math.isfinite(y)) for x, y in pos):
        raise InvalidInput("drawing has non-finite coordinates")
    if any(not (0 <= u < len(pos) and 0 <= v < len(pos)) for u, v in edges):
        raise InvalidInput("edge refers to an unknown vertex")
    return Drawing(positions=pos, edges=edges, edge_class=ec, meta=dict(data.get("meta", {})))


def fragment_from_data(data: dict[str, Any]) -> ChainFragment:
    """Rebuild a chain fragment written by ``ChainFragment.to_json``."""
    try:
        plus = tuple(int(v) for v in data["plus"])
        minus = tuple(int(v) for v in data["minus"])
        root = tuple(int(v) for v in data["root_edge"])
        tris = tuple((i, -1) for i in range(len(plus) + len(minus)))
        chain = Chain(int(data["chain"]), root, plus, minus, tris if plus else (), {})  # type: ignore[arg-type]
        st = data["strip"]
        strip = Strip((tuple(st["base"][0]), tuple(st["base"][1])), tuple(st["dir"]))  # type: ignore[arg-type]
        pos = {int(v): (float(p[0]), float(p[1])) for v, p in data["positions"].items()}
        ext = {
            tuple(int(v) for v in r["edge"]): (tuple(r["segment"][0]), tuple(r["segment"][1]))
            for r in data["external_edges"]
        }
    except (KeyError, TypeError, ValueError, IndexError):
        raise InvalidInput("malformed strip certificate") from None
    return ChainFragment(
        chain, strip, pos, ext, float(data["ray_rotation"]), float(data["short_min"]), str(data["case"])  # type: ignore[arg-type]
    )


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


# ---------------------------------------------------------------------------
# SVG


def _num(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(d: Drawing, scale: float = 100.0) -> str:
    """Deterministic SVG: L and unit edges thick, S edges thin, labelled vertices.

    The y axis is flipped so the picture has the usual mathematical orientation.
    """
    if not d.positions:
        raise InvalidInput("cannot render an empty drawing")
    pts = [(x * scale, -y * scale) for x, y in d.positions]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    w, h = max(xs) - min(xs), max(ys) - min(ys)
    m = SVG_MARGIN * max(w, h, scale)
    vb = (min(xs) - m, min(ys) - m, w + 2 * m, h + 2 * m)
    r = 0.04 * scale
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{" ".join(_num(v) for v in vb)}" '
        f'width="{_num(vb[2])}" height="{_num(vb[3])}">',
        "<style>line{stroke:#222;stroke-linecap:round}"
        f"line.L,line.unit{{stroke-width:{_num(0.03 * scale)}}}"
        f"line.S{{stroke-width:{_num(0.012 * scale)};stroke:#666}}"
        "circle{fill:#fff;stroke:#000}"
        f"text{{font-family:sans-serif;font-size:{_num(0.05 * scale)}px;text-anchor:middle;dominant-baseline:central}}"
        "</style>",
    ]
    for e in d.edges:
        cls = d.edge_class.get(e, "S")
        (x1, y1), (x2, y2) = pts[e[0]], pts[e[1]]
        out.append(f'<line class="{cls}" x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}"/>')
    for i, (x, y) in enumerate(pts):
        out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{_num(r)}" stroke-width="{_num(r / 5)}"/>')
        out.append(f'<text x="{_num(x)}" y="{_num(y)}">{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# command line


def _read(path: str | None, stdin: TextIO) -> str:
    if path is None or path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str | None, stdin: TextIO) -> Any:
    try:
        return json.loads(_read(path, stdin))
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"bad JSON in {path or 'stdin'}: {exc}") from None


def _write(path: str | None, text: str, stdout: TextIO) -> None:
    if path is None or path == "-":
        stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _params(args: argparse.Namespace) -> LayoutParams:
    kw: dict[str, Any] = {}
    if args.leg_length is not None:
        kw["leg_length"] = args.leg_length
    if args.short_margin is not None:
        kw["short_margin"] = args.short_margin
    if args.ray_rotation is not None:
        kw["ray_rotation"] = math.radians(args.ray_rotation)
    if args.eps is not None:
        kw["eps_num"] = args.eps
    return LayoutParams(**kw)


def _root(args: argparse.Namespace) -> tuple[int, int] | None:
    return None if args.root is None else (args.root[0], args.root[1])


def _cmd_generate(args: argparse.Namespace, stdin: TextIO, stdout: TextIO, stderr: TextIO) -> int:
    nested = None
    if args.family == "fan-pendant":
        g = gen_fan_pendant(args.k).graph
    elif args.family == "nested":
        nested = gen_nested_family(args.n)
        g = nested.graph
    elif args.family == "random":
        g = gen_random_maximal_outerplanar(args.n, args.seed).graph
    else:
        g = gen_random_bipartite_outerplanar(args.n, args.seed)
    _write(args.output, dumps(graph_to_data(g, nested)), stdout)
    return EXIT_OK


def _cmd_draw(args: argparse.Namespace, stdin: TextIO, stdout: TextIO, stderr: TextIO) -> int:
    data = parse_graph_text(_read(args.graph, stdin))
    g = graph_from_data(data)
    p = _params(args)
    if args.nested:
        eg = nested_from_data(data, g)
        if eg is None:
            raise InvalidInput("--nested needs a graph file with a face assignment")
        d = naive_nested_draw(eg, p)
    else:
        try:
            d = draw(g, p, _root(args))
        except InfeasiblePlacement as exc:
            if args.fragments:
                frs = [f.to_json() for f in exc.fragments or []]
                _write(args.fragments, dumps(frs), stdout)
            raise
    if args.fragments:
        _write(args.fragments, dumps([f.to_json() for f in d.fragments]), stdout)
    text = render_svg(d, args.scale) if args.format == "svg" else dumps(drawing_to_data(d))
    _write(args.output, text, stdout)
    if args.no_check:
        return EXIT_OK
    rr = edge_length_ratio(d)
    cr = find_crossings(d)
    stderr.write(f"vertices {d.vertex_count}, edges {len(d.edges)}, ratio {rr.ratio:.12g}, crossings {len(cr)}\n")
    return EXIT_OK if not cr else EXIT_INVALID


def _cmd_validate(args: argparse.Namespace, stdin: TextIO, stdout: TextIO, stderr: TextIO) -> int:
    d = drawing_from_data(_read_json(args.drawing, stdin))
    frs = [] if args.strip_cert is None else [fragment_from_data(x) for x in _read_json(args.strip_cert, stdin)]
    emb = None
    if args.embedding is not None:
        raw = _read_json(args.embedding, stdin)
        raw = raw.get("face_assignment", raw)
        emb = {int(v): tuple(int(x) for x in f) for v, f in raw.items()}
    rep = validate_drawing(d, frs, emb)
    stdout.write(dumps(rep.to_json()))
    stderr.write(f"ratio {rep.ratio:.12g}, crossings {len(rep.crossings)}, failures {len(rep.condition_failures)}\n")
    return EXIT_OK if rep.ok else EXIT_INVALID


def _cmd_ratio(args: argparse.Namespace, stdin: TextIO, stdout: TextIO, stderr: TextIO) -> int:
    d = drawing_from_data(_read_json(args.drawing, stdin))
    rr = edge_length_ratio(d)
    stdout.write(f"{rr.ratio!r}\n")
    cr = find_crossings(d)
    for c in cr:
        stderr.write(f"crossing: edges {c.e1} and {c.e2}\n")
    return EXIT_OK if not cr else EXIT_INVALID


def _cmd_decompose(args: argparse.Namespace, stdin: TextIO, stdout: TextIO, stderr: TextIO) -> int:
    g = graph_from_data(parse_graph_text(_read(args.graph, stdin)))
    ct = chain_decompose(as_maximal(g), _root(args), rule=args.rule)
    _write(args.output, dumps(ct.to_json()), stdout)
    return EXIT_OK


def _cmd_audit(args: argparse.Namespace, stdin: TextIO, stdout: TextIO, stderr: TextIO) -> int:
    d = drawing_from_data(_read_json(args.drawing, stdin))
    data = parse_graph_text(_read(args.graph, stdin))
    if "face_assignment" not in data:
        raise NotNestedFamily("graph file has no face assignment")
    fa = {int(v): tuple(int(x) for x in f) for v, f in data["face_assignment"].items()}
    rho = args.rho_star if args.rho_star is not None else edge_length_ratio(d).ratio
    rep = perimeter_descent_audit(d, fa, rho)
    _write(args.output, dumps(rep.to_json()), stdout)
    stderr.write(rep.summary() + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="outerdraw", description="Outerplanar drawings with small edge-length ratio.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_params(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--leg-length", type=float, help="leg length of lone isosceles triangles (default 0.75)")
        sp.add_argument("--short-margin", type=float, help="margin mu: short edges exceed 1/2 + mu (default 0.05)")
        sp.add_argument("--ray-rotation", type=float, help="cap on the rail rotation, in degrees")
        sp.add_argument("--eps", type=float, help="numeric tolerance (default 1e-9)")
        sp.add_argument("--root", type=int, nargs=2, metavar=("U", "V"), help="root edge (an outer edge)")

    sp = sub.add_parser("generate", help="write a graph of a named family as JSON")
    sp.add_argument("--family", required=True, choices=["fan-pendant", "nested", "random", "bipartite"])
    sp.add_argument("--k", type=int, default=8, help="fan size for fan-pendant")
    sp.add_argument("--n", type=int, default=10, help="vertex count (random, bipartite) or level (nested)")
    sp.add_argument("--seed", type=int, default=0, help="seed for random families")
    sp.add_argument("-o", "--output", help="output file (default stdout)")
    sp.set_defaults(func=_cmd_generate)

    sp = sub.add_parser("draw", help="draw a graph given as JSON or text")
    sp.add_argument("graph", nargs="?", help="graph file (default stdin)")
    sp.add_argument("--format", choices=["json", "svg"], default="json")
    sp.add_argument("--scale", type=float, default=100.0, help="SVG units per unit length")
    sp.add_argument("--nested", action="store_true", help="embedding preserving drawing of a nested family file")
    sp.add_argument("--fragments", help="write the chain fragments (strip certificates) to this file")
    sp.add_argument("--no-check", action="store_true", help="skip the ratio and crossing report")
    sp.add_argument("-o", "--output", help="output file (default stdout)")
    add_params(sp)
    sp.set_defaults(func=_cmd_draw)

    sp = sub.add_parser("validate", help="check a drawing and print a report")
    sp.add_argument("--drawing", help="drawing JSON (default stdin)")
    sp.add_argument("--strip-cert", help="chain fragments written by draw --fragments")
    sp.add_argument("--embedding", help="face assignment JSON, or a nested family graph file")
    sp.set_defaults(func=_cmd_validate)

    sp = sub.add_parser("ratio", help="print the edge-length ratio of a drawing")
    sp.add_argument("--drawing", help="drawing JSON (default stdin)")
    sp.set_defaults(func=_cmd_ratio)

    sp = sub.add_parser("decompose", help="print the chain decomposition as JSON")
    sp.add_argument("graph", nargs="?", help="graph file (default stdin)")
    sp.add_argument("--root", type=int, nargs=2, metavar=("U", "V"), help="root edge (an outer edge)")
    sp.add_argument("--rule", choices=["strip", "balanced", "min-id"], default="strip", help="plus-side rule")
    sp.add_argument("-o", "--output", help="output file (default stdout)")
    sp.set_defaults(func=_cmd_decompose)

    sp = sub.add_parser("audit", help="perimeter descent audit of a nested family drawing")
    sp.add_argument("--drawing", required=True, help="drawing JSON")
    sp.add_argument("--graph", required=True, help="nested family graph JSON")
    sp.add_argument("--rho-star", type=float, help="assumed ratio bound (default: the measured ratio)")
    sp.add_argument("-o", "--output", help="output file (default stdout)")
    sp.set_defaults(func=_cmd_audit)
    return ap


def cli_main(
    argv: Sequence[str] | None = None,
    stdin: TextIO | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, stdin, stdout, stderr)
    except OuterdrawError as exc:
        stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except ValueError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(cli_main())


__all__ = [
    "parse_graph_text",
    "graph_from_data",
    "graph_to_data",
    "nested_from_data",
    "drawing_to_data",
    "drawing_from_data",
    "fragment_from_data",
    "render_svg",
    "build_parser",
    "cli_main",
    "main",
]
