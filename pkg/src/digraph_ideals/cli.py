"""Command line front end: ``digraph-ideals <command> <graph file>``.

Graphs are read from JSON (``{"vertices": [...], "edges": [{"id", "from",
"to"}]}``) or from a small DOT subset.  Exit codes: 0 success, 1 usage,
2 parse or validation error, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import analysis as an
from .graphs import (
    DEFAULT_CYCLE_CAP,
    CapExceeded,
    Digraph,
    Edge,
    GraphError,
    UEdge,
    UGraph,
    build_h_graph,
    build_k_graph,
    h_matching,
    is_bipartite,
    is_perfect_matching,
    orient,
    twin_names,
)
from .poly import TermOrder

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

COMMANDS = ("ideal", "cycles", "cycle-basis", "is-dag", "is-upd", "covers", "bipartite", "hgraph", "analyze")

Graph = Union[Digraph, UGraph]


class InputError(ValueError):
    """Malformed or invalid graph input; ``line`` is 1-based when known."""

    def __init__(self, msg: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line else msg)


class UsageError(ValueError):
    pass


# -- parsing -------------------------------------------------------------------


def _assemble(directed: bool, vertices: List[str], raw: List[Tuple[Optional[str], str, str, Optional[int]]]) -> Graph:
    """Validate (label, from, to, line) records and build the graph.

    Unlabelled edges get e<k>, k being the edge's position in the file.
    """
    labels = [lab if lab is not None else f"e{k}" for k, (lab, *_rest) in enumerate(raw, 1)]
    vset = set(vertices)
    seen_labels: Dict[str, int] = {}
    pairs: Dict[frozenset, Tuple[str, str]] = {}
    for lab, (_, a, b, line) in zip(labels, raw):
        for v in (a, b):
            if v not in vset:
                raise InputError(f"edge {lab} uses unknown vertex {v!r}", line)
        if lab in seen_labels:
            raise InputError(f"duplicate edge id {lab!r}", line)
        if lab in vset:
            raise InputError(f"edge id {lab!r} is also a vertex name", line)
        seen_labels[lab] = line or 0
        if a == b:
            raise InputError(f"loop at {a} ({lab})", line)
        key = frozenset((a, b))
        if key in pairs:
            prev = pairs[key]
            kind = "duplicate" if (prev == (a, b) or not directed) else "antiparallel"
            raise InputError(f"{kind} edge between {a} and {b} ({lab})", line)
        pairs[key] = (a, b)
    try:
        if directed:
            return Digraph(tuple(vertices), tuple(Edge(l, a, b) for l, (_, a, b, _) in zip(labels, raw)))
        return UGraph(tuple(vertices), tuple(UEdge(l, a, b) for l, (_, a, b, _) in zip(labels, raw)))
    except GraphError as exc:
        raise InputError(str(exc)) from exc


def _line_of(text: str, pattern: str, k: int) -> Optional[int]:
    ms = list(re.finditer(pattern, text))
    if k < len(ms):
        return text.count("\n", 0, ms[k].start()) + 1
    return None


def parse_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, exc.lineno) from exc
    if not isinstance(doc, dict):
        raise InputError("top level must be an object", 1)
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise InputError("'edges' must be a list", _line_of(text, r'"edges"', 0))
    directed = doc.get("directed", True)
    if not isinstance(directed, bool):
        raise InputError("'directed' must be true or false", _line_of(text, r'"directed"', 0))
    raw = []
    for k, e in enumerate(edges):
        line = _line_of(text, r'"from"\s*:', k)
        if not isinstance(e, dict) or not isinstance(e.get("from"), str) or not isinstance(e.get("to"), str):
            raise InputError(f"edge #{k + 1} needs string 'from' and 'to'", line)
        lab = e.get("id")
        if lab is not None and not isinstance(lab, str):
            raise InputError(f"edge #{k + 1} has a non-string id", line)
        raw.append((lab, e["from"], e["to"], line))
    if "vertices" in doc:
        vertices = doc["vertices"]
        if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
            raise InputError("'vertices' must be a list of strings", _line_of(text, r'"vertices"', 0))
        if len(set(vertices)) != len(vertices):
            raise InputError("duplicate vertex name", _line_of(text, r'"vertices"', 0))
    else:
        vertices = []
        for _, a, b, _ in raw:
            for v in (a, b):
                if v not in vertices:
                    vertices.append(v)
    return _assemble(directed, vertices, raw)


_DOT_TOKEN = re.compile(
    r'(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>//[^\n]*|#[^\n]*|/\*.*?\*/)'
    r'|(?P<arrow>->|--)|(?P<punct>[{}\[\];,=])'
    r'|(?P<id>[A-Za-z_\x80-\uffff][A-Za-z0-9_\x80-\uffff]*|-?(?:\d+\.?\d*|\.\d+))'
    r'|(?P<str>"(?:[^"\\]|\\.)*")',
    re.S,
)


def _dot_tokens(text: str) -> List[Tuple[str, str, int]]:
    out, pos, line = [], 0, 1
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if not m:
            raise InputError(f"unexpected character {text[pos]!r}", line)
        kind = m.lastgroup
        val = m.group()
        if kind == "str":
            out.append(("id", re.sub(r'\\(.)', r"\1", val[1:-1]), line))
        elif kind in ("id", "arrow", "punct"):
            out.append((kind if kind != "punct" else val, val, line))
        line += val.count("\n")
        pos = m.end()
    out.append(("eof", "", line))
    return out


def parse_dot(text: str) -> Graph:
    toks = _dot_tokens(text)
    i = 0

    def peek(k: int = 0):
        return toks[min(i + k, len(toks) - 1)]

    def expect(kind: str) -> Tuple[str, str, int]:
        nonlocal i
        t = peek()
        if t[0] != kind:
            raise InputError(f"expected {kind!r}, found {t[1] or 'end of input'!r}", t[2])
        i += 1
        return t

    t = peek()
    if t[0] == "id" and t[1].lower() == "strict":
        raise InputError("'strict' graphs are not supported", t[2])
    if t[0] != "id" or t[1].lower() not in ("digraph", "graph"):
        raise InputError("input must start with 'digraph' or 'graph'", t[2])
    directed = t[1].lower() == "digraph"
    i += 1
    if peek()[0] == "id":
        i += 1
    expect("{")
    vertices: List[str] = []
    raw = []

    def vertex(name: str) -> None:
        if name not in vertices:
            vertices.append(name)

    def attrs() -> Dict[str, str]:
        nonlocal i
        out: Dict[str, str] = {}
        while peek()[0] == "[":
            i += 1
            while peek()[0] != "]":
                key = expect("id")
                if peek()[0] == "=":
                    i += 1
                    out[key[1]] = expect("id")[1]
                else:
                    out[key[1]] = "true"
                if peek()[0] in (",", ";"):
                    i += 1
            expect("]")
        return out

    while peek()[0] != "}":
        t = peek()
        if t[0] == ";":
            i += 1
            continue
        if t[0] == "eof":
            raise InputError("missing closing '}'", t[2])
        if t[0] != "id":
            raise InputError(f"unexpected {t[1]!r}", t[2])
        if t[1].lower() in ("node", "edge", "graph") and peek(1)[0] == "[":
            i += 1
            attrs()
            continue
        if peek(1)[0] == "=":
            i += 3
            continue
        i += 1
        a = t[1]
        if peek()[0] == "arrow":
            op = peek()
            if (op[1] == "->") != directed:
                raise InputError(f"'{op[1]}' used in a {'digraph' if directed else 'graph'}", op[2])
            i += 1
            b = expect("id")[1]
            if peek()[0] == "arrow":
                raise InputError("edge chains are not supported; write one edge per statement", peek()[2])
            at = attrs()
            vertex(a)
            vertex(b)
            raw.append((at.get("label", at.get("id")), a, b, t[2]))
        else:
            attrs()
            vertex(a)
    i += 1
    if peek()[0] != "eof":
        raise InputError("content after the closing '}'", peek()[2])
    return _assemble(directed, vertices, raw)


def parse_graph(text: str, fmt: str) -> Graph:
    if fmt == "json":
        return parse_json(text)
    if fmt == "dot":
        return parse_dot(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def guess_format(path: str, text: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    if ext in (".json",):
        return "json"
    if ext in (".dot", ".gv"):
        return "dot"
    return "json" if text.lstrip().startswith("{") else "dot"


# -- rendering -----------------------------------------------------------------


def _dot_id(s: str) -> str:
    if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", s) and s.lower() not in ("graph", "digraph", "node", "edge", "strict", "subgraph"):
        return s
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_graph(G: Graph, fmt: str) -> str:
    directed = isinstance(G, Digraph)
    if fmt == "json":
        if directed:
            edges = [{"id": e.label, "from": e.tail, "to": e.head} for e in G.edges]
            doc = {"vertices": list(G.vertices), "edges": edges}
        else:
            edges = [{"id": e.label, "from": e.a, "to": e.b} for e in G.edges]
            doc = {"directed": False, "vertices": list(G.vertices), "edges": edges}
        return json.dumps(doc, separators=(",", ":"))
    if fmt == "dot":
        head, op = ("digraph", "->") if directed else ("graph", "--")
        lines = [head + " {"]
        lines += [f"  {_dot_id(v)};" for v in G.vertices]
        for e in G.edges:
            a, b = (e.tail, e.head) if directed else (e.a, e.b)
            lines.append(f"  {_dot_id(a)} {op} {_dot_id(b)} [label={_dot_id(e.label)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown graph format {fmt!r}")


# -- requests and reports ------------------------------------------------------


@dataclass(frozen=True)
class AnalysisRequest:
    command: str
    graph: Graph
    order: str = "grevlex"
    vars: Optional[Tuple[str, ...]] = None
    method: str = "toric"
    route: str = "elimination"
    seed: int = 0
    cap: int = DEFAULT_CYCLE_CAP
    k_graph: bool = False
    plot_dir: Optional[str] = None


def _term_order(req: AnalysisRequest, D: Digraph) -> Optional[TermOrder]:
    ev = an.edge_vars(D)
    if req.vars is not None:
        if sorted(req.vars) != sorted(D.edge_labels) or len(set(req.vars)) != len(req.vars):
            raise UsageError("--vars must list every edge label exactly once")
    if req.order == "grevlex" and req.vars is None:
        return None
    build = TermOrder.lex if req.order == "lex" else TermOrder.grevlex
    return build(ev, list(req.vars) if req.vars is not None else list(D.edge_labels))


def _cycles_json(rep: an.CycleReport) -> List[dict]:
    return [c.as_dict() for c in rep.cycles]


def _sorted_cover(cover, order: Sequence[str]) -> List[str]:
    pos = {v: i for i, v in enumerate(order)}
    return sorted(cover, key=pos.__getitem__)


def run_command(req: AnalysisRequest) -> Dict:
    """Run one command and return its report as an ordered dict."""
    G = req.graph
    if req.command not in COMMANDS:
        raise UsageError(f"unknown command {req.command!r}")
    if isinstance(G, UGraph):
        if req.command != "cycles":
            raise InputError(f"'{req.command}' needs a directed graph; undirected input only supports 'cycles'")
        D = orient(G, req.seed)
        rep = an.classify_generators(an.diedge_ideal(D, _term_order(req, D), req.route), D, cap=req.cap)
        out = {"cycles": _cycles_json(rep), "orientation": [[e.label, e.tail, e.head] for e in D.edges]}
        _plots(req, D, out, rep)
        return out
    D = G
    order = _term_order(req, D)
    out: Dict = {}
    cmd = req.command
    everything = cmd == "analyze"
    gb = None
    if cmd in ("ideal", "is-dag", "is-upd") or everything or (cmd == "cycles" and req.method == "toric"):
        gb = an.diedge_ideal(D, order, req.route)
    if cmd == "ideal" or everything:
        out["ideal"] = list(gb.rendered())
    rep = None
    if cmd == "cycles" or everything:
        if req.method == "linear":
            rep = an.linear_cycle_report(D, order)
        else:
            rep = an.classify_generators(gb, D, cap=req.cap)
        out["cycles"] = _cycles_json(rep)
    if cmd == "cycle-basis" or everything:
        basis = an.linear_edge_ideal(D, order)
        ro = order or an.default_order(an.edge_vars(D))
        out["cycle_basis"] = [p.render(ro) for p in basis]
        out["dimension"] = an.cycle_space_dimension(D)
    if cmd == "is-dag" or everything:
        r = an.is_dag(D, gb=gb)
        out["dag"] = r.dag
        out["witness"] = list(r.witness) if r.witness else None
    if cmd == "is-upd" or everything:
        r = an.is_upd(D, gb=gb)
        out["upd"] = r.upd
        out["upd_reason"] = r.reason
    if cmd == "covers" or everything:
        cr = an.source_sink_covers(D, cap=req.cap)
        out["covers"] = {
            "source": [_sorted_cover(c, D.vertices) for c in cr.source_covers],
            "sink": [_sorted_cover(c, D.vertices) for c in cr.sink_covers],
        }
    if cmd == "bipartite" or everything:
        br = an.is_directly_bipartite(D)
        out["directly_bipartite"] = br.directly_bipartite
        out["sources"] = list(br.sources) if br.directly_bipartite else []
        out["sinks"] = list(br.sinks) if br.directly_bipartite else []
        out["divertex_ideal"] = list(br.ideal.rendered()) if br.ideal is not None else []
    if cmd == "hgraph":
        H = build_k_graph(D) if req.k_graph else build_h_graph(D)
        M = sorted(h_matching(D)) if not req.k_graph else []
        out["graph"] = "K_D" if req.k_graph else "H_D"
        out["bipartite"] = is_bipartite(H) is not None
        out["matching"] = M
        out["perfect_matching"] = bool(M) and is_perfect_matching(H, M)
        out["dot"] = render_graph(H, "dot")
        _hplot(req, D, H, M, out)
    _plots(req, D, out, rep)
    return out


def _plots(req: AnalysisRequest, D: Digraph, out: Dict, rep: Optional[an.CycleReport]) -> None:
    if not req.plot_dir or req.command == "hgraph":
        return
    from .plotting import draw_digraph

    files = [draw_digraph(D, os.path.join(req.plot_dir, "graph.png"))]
    if rep is not None:
        for k, c in enumerate(rep.cycles, 1):
            path = os.path.join(req.plot_dir, f"cycle_{k}.png")
            files.append(draw_digraph(D, path, c.edges, f"{c.cls} cycle {','.join(c.edges)}"))
    out["plots"] = files


def _hplot(req: AnalysisRequest, D: Digraph, H: UGraph, M: Sequence[str], out: Dict) -> None:
    if not req.plot_dir:
        return
    from .plotting import draw_bipartite

    z = twin_names(D)
    path = os.path.join(req.plot_dir, "hgraph.png")
    out["plots"] = [draw_bipartite(H, [z[v] for v in D.vertices], list(D.vertices), path, M, out["graph"])]


def _yes(b: bool) -> str:
    return "true" if b else "false"


def emit_report(report: Dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, separators=(",", ":"), ensure_ascii=False)
    lines: List[str] = []
    many = sum(k in report for k in ("ideal", "cycles", "cycle_basis", "dag", "upd", "covers", "directly_bipartite")) > 1

    def section(title: str) -> None:
        if many:
            lines.append(f"[{title}]")

    if "ideal" in report:
        section("ideal")
        lines += report["ideal"] or ["(0)"]
    if "cycles" in report:
        section("cycles")
        if "orientation" in report:
            lines.append("orientation: " + ", ".join(f"{l}={a}->{b}" for l, a, b in report["orientation"]))
        if not report["cycles"]:
            lines.append("no cycles")
        for c in report["cycles"]:
            lines.append(f"{c['class']} {','.join(c['edges'])} (length {c['length']})")
    if "cycle_basis" in report:
        section("cycle basis")
        lines += report["cycle_basis"] or ["(0)"]
        lines.append(f"dimension {report['dimension']}")
    if "dag" in report:
        section("dag")
        lines.append(_yes(report["dag"]))
        if report["witness"]:
            lines.append("directed cycle " + ",".join(report["witness"]))
    if "upd" in report:
        section("upd")
        lines.append(_yes(report["upd"]))
        lines.append(report["upd_reason"])
    if "covers" in report:
        section("covers")
        for kind in ("source", "sink"):
            for c in report["covers"][kind]:
                lines.append(f"{kind} {{{','.join(c)}}}")
    if "directly_bipartite" in report:
        section("bipartite")
        lines.append(_yes(report["directly_bipartite"]))
        if report["directly_bipartite"]:
            lines.append(f"sources {{{','.join(report['sources'])}}}")
            lines.append(f"sinks {{{','.join(report['sinks'])}}}")
        lines += [f"divertex ideal: {g}" for g in report["divertex_ideal"]]
    if "dot" in report:
        lines.append(f"// {report['graph']} bipartite: {_yes(report['bipartite'])}")
        if report["matching"]:
            lines.append(f"// perfect matching {{{','.join(report['matching'])}}}: {_yes(report['perfect_matching'])}")
        lines.append(report["dot"].rstrip("\n"))
    if "plots" in report:
        lines += [f"wrote {p}" for p in report["plots"]]
    return "\n".join(lines)


# -- entry point ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="digraph-ideals", description="Cycle and cover analysis of digraphs through binomial ideals.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("graph", help="graph file (.json or .dot); '-' reads standard input")
    p.add_argument("--input-format", choices=("json", "dot"), help="override detection by extension")
    p.add_argument("--format", choices=("text", "json"), default="text", dest="out_format")
    p.add_argument("--order", choices=("lex", "grevlex"), default="grevlex")
    p.add_argument("--vars", help="comma-separated edge variable priority, highest first")
    p.add_argument("--method", choices=("toric", "linear"), default="toric", help="ideal used by 'cycles'")
    p.add_argument("--route", choices=("elimination", "saturation"), default="elimination",
                   help="how the toric ideal is computed")
    p.add_argument("--seed", type=int, default=0, help="orientation seed for undirected input")
    p.add_argument("--cap", type=int, default=DEFAULT_CYCLE_CAP, help="limit on enumerated cycles or covers")
    p.add_argument("--k-graph", action="store_true", help="'hgraph' exports K_D instead of H_D")
    p.add_argument("--plot-dir", help="also write PNG drawings into this directory")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.graph == "-":
            text = sys.stdin.read()
        else:
            with open(args.graph, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.graph}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    try:
        fmt = args.input_format or guess_format(args.graph, text)
        G = parse_graph(text, fmt)
        if args.cap < 1:
            raise UsageError("--cap must be positive")
        req = AnalysisRequest(
            command=args.command,
            graph=G,
            order=args.order,
            vars=tuple(s.strip() for s in args.vars.split(",")) if args.vars else None,
            method=args.method,
            route=args.route,
            seed=args.seed,
            cap=args.cap,
            k_graph=args.k_graph,
            plot_dir=args.plot_dir,
        )
        report = run_command(req)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"{args.graph}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    print(emit_report(report, args.out_format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
