"""``laperm`` command-line front end.

Exit status: 0 on success, 1 when a verification is refuted, 2 on usage or
input errors.  ``--json`` switches every subcommand to the versioned report
schema, with all numbers written as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Sequence, TextIO

from . import closed_forms as cf
from . import families as fam
from . import transforms as tf
from .enumeration import ClassKind, ClassQuery, enumerate_class, rank_by_permanent, recognize
from .errors import LapermError, ParseError
from .graph import Graph, format_edge_list, format_graph6, parse_edge_list, parse_graph6
from .permanent import char_poly, dominance_compare, laplacian_permanent
from .verify import SCHEMA, THEOREMS, Status, verify_theorem

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


def report_schema() -> dict:
    """The JSON Schema every ``--json`` document conforms to."""
    return json.loads(resources.files(__package__).joinpath("report.schema.json").read_text(encoding="utf-8"))


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits 2 already; keep prog prefix
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_graph(path: str | None, fmt: str, stdin: TextIO) -> Graph:
    if path in (None, "-"):
        text = stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph6(text) if fmt == "graph6" else parse_edge_list(text)


def _emit_graph(g: Graph, fmt: str) -> str:
    return format_graph6(g) + "\n" if fmt == "graph6" else format_edge_list(g)


def _marker(a: int, b: int) -> str:
    return "==" if a == b else "!="


class _Out:
    def __init__(self, args: argparse.Namespace, stdout: TextIO):
        self.json = args.json
        self.command = args.command
        self.stdout = stdout

    def report(self, payload: dict, text: str) -> None:
        if self.json:
            body = {"schema": SCHEMA, "command": self.command, **payload}
            self.stdout.write(json.dumps(body, indent=2) + "\n")
        else:
            self.stdout.write(text if text.endswith("\n") else text + "\n")


# -- subcommands ------------------------------------------------------------------


def _cmd_perm(args, out: _Out, stdin: TextIO) -> int:
    g = _read_graph(args.input, args.format, stdin)
    value = laplacian_permanent(g)
    names = [str(s) for s in recognize(g)] if g.n <= 16 else []
    out.report(
        {"n": str(g.n), "m": str(g.m), "permanent": str(value), "families": names},
        str(value),
    )
    return EXIT_OK


def _family_values(spec: fam.FamilySpec, g: Graph) -> tuple[int, list[tuple[str, int]]]:
    engine = laplacian_permanent(g)
    forms = [(str(fid), cf.evaluate(fid)) for fid in cf.formulas_for(spec, g.n)]
    return engine, forms


def _cmd_family(args, out: _Out, stdin: TextIO) -> int:
    spec = fam.parse_spec(args.spec)
    g = fam.build(spec)
    if args.emit == "graph":
        if out.json:
            out.report({"family": str(spec), "n": str(g.n), "graph6": format_graph6(g),
                        "edges": [[str(u), str(v)] for u, v in g.sorted_edges()]}, "")
        else:
            out.stdout.write(_emit_graph(g, args.format))
        return EXIT_OK
    if args.emit == "coeffs":
        poly = char_poly(g)
        out.report({"family": str(spec), "n": str(g.n), "coefficients": [str(c) for c in poly.coeffs]},
                   " ".join(str(c) for c in poly.coeffs))
        return EXIT_OK
    engine, forms = _family_values(spec, g)
    lines = [f"{spec}: engine {engine}"]
    lines += [f"  {name} = {value} {_marker(value, engine)} engine" for name, value in forms]
    out.report(
        {
            "family": str(spec),
            "n": str(g.n),
            "engine": str(engine),
            "closed_forms": [{"formula": name, "value": str(v), "equal": v == engine} for name, v in forms],
        },
        "\n".join(lines),
    )
    return EXIT_OK


def _parse_move(text: str) -> tf.GraftMove:
    name, _, rest = text.partition(":")
    nums = [int(x) for x in rest.split(",") if x.strip()] if rest else []
    name = name.strip().lower()
    try:
        if name in ("op1", "i"):
            return tf.OpI(*nums)
        if name in ("op2", "ii"):
            return tf.OpII(*nums)
        if name in ("op3", "iii"):
            return tf.OpIII(tuple(nums) if nums else None)
        if name in ("lemma35", "l35"):
            return tf.Lemma35(*nums)
    except TypeError:
        raise ParseError(f"move {text!r} has the wrong number of vertices") from None
    raise ParseError(f"unknown move {name!r}; expected op1:u,v,w  op2:u,v,w  op3[:v1,...]  lemma35:v,u")


def _cmd_transform(args, out: _Out, stdin: TextIO) -> int:
    g = _read_graph(args.input, args.format, stdin)
    try:
        move = _parse_move(args.move)
    except ValueError:
        raise ParseError(f"move {args.move!r}: vertices must be integers") from None
    h = tf.apply_move(g, move)
    before, after = laplacian_permanent(g), laplacian_permanent(h)
    if args.emit == "graph" and not out.json:
        out.stdout.write(_emit_graph(h, args.format))
        return EXIT_OK
    out.report(
        {
            "move": args.move,
            "before": str(before),
            "after": str(after),
            "decreased": after < before,
            "graph6": format_graph6(h),
            "edges": [[str(u), str(v)] for u, v in h.sorted_edges()],
        },
        f"per L before {before}\nper L after  {after} ({'decreased' if after < before else 'NOT decreased'})",
    )
    return EXIT_OK


def _query(args) -> ClassQuery:
    kind = ClassKind.TREES if args.cls == "trees" else ClassKind.BIPARTITE_UNICYCLIC
    pq = None
    if args.p is not None:
        if args.p > args.n - args.p:
            raise ParseError("--p must be the smaller class size (p <= n - p)")
        pq = (args.p, args.n - args.p)
    return ClassQuery(kind, args.n, bipartition=pq, diameter_at_least=args.diameter_at_least, matching_number=args.matching)


def _cmd_enumerate(args, out: _Out, stdin: TextIO) -> int:
    q = _query(args)
    if args.rank is None:
        graphs = list(enumerate_class(q))
        text = [f"{q.describe()}: {len(graphs)} graphs"]
        if args.list:
            text += [format_graph6(g) for g in graphs]
        payload = {"query": q.describe(), "class_size": str(len(graphs))}
        if args.list:
            payload["graphs"] = [format_graph6(g) for g in graphs]
        out.report(payload, "\n".join(text))
        return EXIT_OK
    result = rank_by_permanent(q, args.rank, threads=args.threads)
    lines = [f"{q.describe()}: {result.class_size} graphs, bottom {len(result.entries)} by per L"]
    for i, e in enumerate(result.entries, 1):
        lines.append(f"{i:>3}  {e.value:>12}  {e.label():<34} {format_graph6(e.graph)}")
    out.report(
        {
            "query": q.describe(),
            "class_size": str(result.class_size),
            "ranked": [
                {"rank": str(i), "value": str(e.value), "family": str(e.family) if e.family else None,
                 "aliases": [str(s) for s in e.families[1:]], "graph6": format_graph6(e.graph)}
                for i, e in enumerate(result.entries, 1)
            ],
        },
        "\n".join(lines),
    )
    return EXIT_OK


def _cmd_verify(args, out: _Out, stdin: TextIO) -> int:
    report = verify_theorem(args.theorem, args.n, p=args.p, d=args.d, part=args.part)
    if out.json:
        out.stdout.write(json.dumps({"command": "verify", **report.to_json()}, indent=2) + "\n")
    else:
        params = ", ".join(f"{k}={v}" for k, v in report.params.items())
        lines = [f"{report.theorem} ({params}): {report.status.value}, class size {report.class_size}"]
        for m in report.minimizers:
            formula = "" if m.formula is None else f"  closed form {m.formula} {_marker(m.formula, m.value)} engine"
            lines.append(f"  {m.scope} #{m.rank}: {m.family} = {m.value}{formula}")
        for x in report.mismatches:
            graph = f"  [{format_graph6(x.graph)}]" if x.graph is not None else ""
            lines.append(f"  MISMATCH {x.scope} {x.check}: expected {x.expected}; found {x.found}{graph}")
        for o in report.observations:
            lines.append("  note " + ", ".join(f"{k}={v}" for k, v in o.items()))
        out.stdout.write("\n".join(lines) + "\n")
    return EXIT_REFUTED if report.status is Status.REFUTED else EXIT_OK


def _cmd_coeffs(args, out: _Out, stdin: TextIO) -> int:
    g = _read_graph(args.input, args.format, stdin)
    poly = char_poly(g)
    out.report({"n": str(g.n), "coefficients": [str(c) for c in poly.coeffs]}, " ".join(str(c) for c in poly.coeffs))
    return EXIT_OK


def _load_operand(text: str, fmt: str, stdin: TextIO) -> Graph:
    # a family spec or a file path
    if "(" in text:
        return fam.build(fam.parse_spec(text))
    return _read_graph(text, fmt, stdin)


def _cmd_compare(args, out: _Out, stdin: TextIO) -> int:
    a = _load_operand(args.a, args.format, stdin)
    b = _load_operand(args.b, args.format, stdin)
    if args.mode == "perm":
        pa, pb = laplacian_permanent(a), laplacian_permanent(b)
        rel = "<" if pa < pb else ">" if pa > pb else "="
        out.report({"mode": "perm", "a": str(pa), "b": str(pb), "relation": rel}, f"{pa} {rel} {pb}")
    else:
        rel = dominance_compare(char_poly(a), char_poly(b))
        out.report({"mode": "dominance", "relation": rel.value}, rel.value)
    return EXIT_OK


def _cmd_formula(args, out: _Out, stdin: TextIO) -> int:
    fid = cf.parse_formula(args.id)
    value = cf.evaluate(fid)
    spec = cf.family_of(fid)
    payload: dict = {"formula": str(fid), "value": str(value)}
    lines = [f"{fid} = {value}"]
    if spec is not None:
        engine = laplacian_permanent(fam.build(spec))
        payload.update({"family": str(spec), "engine": str(engine), "equal": engine == value})
        lines.append(f"  {spec}: engine {engine} {_marker(value, engine)} closed form")
    out.report(payload, "\n".join(lines))
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a laperm.report/1 JSON document")
    common.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist", help="graph input/output format")
    common.add_argument("--threads", type=int, default=1, metavar="K", help="worker processes for enumeration")

    parser = _Parser(prog="laperm", description="Exact Laplacian permanents of trees and bipartite unicyclic graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("perm", parents=[common], help="per L of an input graph")
    p.add_argument("input", nargs="?", help="graph file (default: stdin)")

    p = sub.add_parser("family", parents=[common], help="build a named family graph")
    p.add_argument("spec", help='family spec such as "D(3,5)" or "C4(1^2 0, 1^0 0, 1^1 0, 1^0 0)"')
    p.add_argument("--emit", choices=("graph", "perm", "coeffs"), default="perm")

    p = sub.add_parser("transform", parents=[common], help="apply a grafting move")
    p.add_argument("input", nargs="?", help="graph file (default: stdin)")
    p.add_argument("--move", required=True, help="op1:u,v,w | op2:u,v,w | op3[:v1,...,v2k] | lemma35:v,u")
    p.add_argument("--emit", choices=("graph", "perm"), default="perm")

    p = sub.add_parser("enumerate", parents=[common], help="enumerate or rank a graph class")
    p.add_argument("--class", dest="cls", choices=("trees", "unicyclic"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, help="smaller bipartition class size")
    p.add_argument("--diameter-at-least", type=int)
    p.add_argument("--matching", type=int, help="exact matching number")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--rank", type=int, metavar="K", help="list the K smallest by per L")
    group.add_argument("--list", action="store_true", help="list every member in graph6")

    p = sub.add_parser("verify", parents=[common], help="exhaustively check an extremal result")
    p.add_argument("theorem", choices=THEOREMS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--part", choices=("i", "ii", "iii"))

    p = sub.add_parser("coeffs", parents=[common], help="Laplacian coefficients c_0..c_n")
    p.add_argument("input", nargs="?", help="graph file (default: stdin)")

    p = sub.add_parser("compare", parents=[common], help="compare two graphs")
    p.add_argument("a", help="graph file or family spec")
    p.add_argument("b", help="graph file or family spec")
    p.add_argument("--mode", choices=("perm", "dominance"), default="perm")

    p = sub.add_parser("formula", parents=[common], help="evaluate a closed form")
    p.add_argument("id", help='formula id such as "Broom(5,3)" or "lemma34(15,2,5)"')
    return parser


_COMMANDS = {
    "perm": _cmd_perm,
    "family": _cmd_family,
    "transform": _cmd_transform,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
    "coeffs": _cmd_coeffs,
    "compare": _cmd_compare,
    "formula": _cmd_formula,
}


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    out = _Out(args, stdout)
    try:
        return _COMMANDS[args.command](args, out, stdin)
    except LapermError as exc:
        kind = type(exc).__name__
        if args.json:
            err = {"type": kind, "message": str(exc)}
            if isinstance(exc, ParseError) and exc.line is not None:
                err["line"] = str(exc.line)
            stdout.write(json.dumps({"schema": SCHEMA, "command": args.command, "error": err}, indent=2) + "\n")
        print(f"laperm: {kind}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
