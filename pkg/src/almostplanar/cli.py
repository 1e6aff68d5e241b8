"""Command-line entry point: ``almost-planar`` or ``python -m almostplanar``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Iterable, Iterator, TextIO

from . import suites
from .core.canon import enumerate_graphs
from .core.connectivity import is_k_connected
from .core.graph import Graph
from .core.graph6 import Graph6Error, decode, encode
from .families import REGISTRY_KEYS, RegistryError, named_graph
from .minors import MinorModel, PatternError, check_model, has_minor
from .planarity import PlanarityCertificate, certify, check_certificate, planar
from .recognition import (
    EdgeRecord,
    Kind,
    Verdict,
    check_verdict,
    cross_check,
    decide_by_definition,
    decide_by_obstructions,
    explain_decomposition,
    structural_witness_3conn,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _graph_from_token(token: str) -> Graph:
    try:
        return named_graph(token)
    except RegistryError:
        pass
    try:
        return decode(token)
    except Graph6Error as exc:
        raise UsageError(f"{token!r} is neither a registry key nor graph6: {exc}") from exc


def _read_lines(stream: TextIO, where: str) -> Iterator[Graph]:
    for no, line in enumerate(stream, 1):
        line = line.strip()
        if not line:
            continue
        try:
            yield decode(line)
        except Graph6Error as exc:
            raise UsageError(f"{where} line {no}: {exc}") from exc


def _inputs(args: argparse.Namespace) -> Iterator[Graph]:
    if args.name:
        for key in args.name:
            try:
                yield named_graph(key)
            except RegistryError as exc:
                raise UsageError(str(exc)) from exc
    elif args.file:
        with open(args.file) as fh:
            yield from _read_lines(fh, args.file)
    else:
        yield from _read_lines(sys.stdin, "stdin")


def _emit(obj: Any, out: TextIO) -> None:
    out.write(json.dumps(obj, sort_keys=False) + "\n")


def _structural(g: Graph, bound: int | None) -> dict[str, Any]:
    if planar(g):
        return {"class": Kind.PLANAR.value}
    if is_k_connected(g, 3):
        w = structural_witness_3conn(g, bound)
        return {"class": (Kind.ALMOST_PLANAR if w else Kind.NEITHER).value, "witness": w.to_json() if w else None}
    d, reason = explain_decomposition(g)
    cls = Kind.ALMOST_PLANAR if d else Kind.NEITHER
    return {"class": cls.value, "witness": d.to_json() if d else None, "reason": reason}


def cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    status = EXIT_OK
    for g in _inputs(args):
        g6 = encode(g)
        if args.method == "definition":
            rec: dict[str, Any] = {"g6": g6, **decide_by_definition(g, certificates=args.json).to_json()}
        elif args.method == "obstructions":
            which = "auto" if args.set == "auto" else args.set
            try:
                v = decide_by_obstructions(g, which=which, certificates=args.json)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            rec = {"g6": g6, **v.to_json()}
        elif args.method == "structural":
            rec = {"g6": g6, **_structural(g, args.bound)}
        else:
            rep = cross_check(g, bound=args.bound)
            rec = rep.to_json()
            rec["class"] = rep.definition.kind.value
            if not rep.agree:
                status = EXIT_FAIL
        if rec["class"] == Kind.NEITHER.value:
            status = EXIT_FAIL
        if args.json:
            _emit(rec, out)
        else:
            tail = "" if args.method != "all" else (" agree" if rec["agree"] else " DISAGREE")
            out.write(f"{g6} {rec['class']}{tail}\n")
    return status


def cmd_certify(args: argparse.Namespace, out: TextIO) -> int:
    if args.check:
        return _check_certificates(args.check, out)
    for g in _inputs(args):
        v = decide_by_definition(g)
        _emit({"g6": encode(g), "planarity": certify(g).to_json(), "verdict": v.to_json()}, out)
    return EXIT_OK


def _check_certificates(path: str, out: TextIO) -> int:
    """Re-audit JSON lines produced by ``certify``."""
    status = EXIT_OK
    stream = sys.stdin if path == "-" else open(path)
    with stream:
        for no, line in enumerate(stream, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                g = decode(rec["g6"])
                cert = PlanarityCertificate.from_json(rec["planarity"])
            except (ValueError, KeyError, Graph6Error) as exc:
                raise UsageError(f"line {no}: {exc}") from exc
            reason = check_certificate(g, cert)
            if reason is None and "verdict" in rec:
                reason = _audit_verdict_json(g, rec["verdict"])
            if reason:
                status = EXIT_FAIL
            _emit({"g6": rec["g6"], "valid": reason is None, "reason": reason}, out)
    return status


def _audit_verdict_json(g: Graph, data: dict[str, Any]) -> str | None:
    def pc(d: dict[str, Any] | None) -> PlanarityCertificate | None:
        return None if d is None else PlanarityCertificate.from_json(d)

    table = None
    if "edges" in data:
        table = tuple(
            EdgeRecord(tuple(r["edge"]), r["deletion_planar"], r["contraction_planar"], pc(r.get("certificate")))
            for r in data["edges"]
        )
    obstruction = None
    if "obstruction" in data:
        obstruction = (data["obstruction"]["name"], MinorModel.from_json(data["obstruction"]["model"]))
    v = Verdict(
        Kind(data["class"]),
        data["method"],
        planarity=pc(data.get("planarity")),
        edge_table=table,
        failing_edge=tuple(data["failing_edge"]) if "failing_edge" in data else None,
        deletion_certificate=pc(data.get("deletion_certificate")),
        contraction_certificate=pc(data.get("contraction_certificate")),
        obstruction=obstruction,
    )
    return check_verdict(g, v)


def cmd_gen(args: argparse.Namespace, out: TextIO) -> int:
    for key in args.names:
        try:
            out.write(encode(named_graph(key)) + "\n")
        except RegistryError as exc:
            raise UsageError(str(exc)) from exc
    return EXIT_OK


def cmd_minor(args: argparse.Namespace, out: TextIO) -> int:
    host, pattern = _graph_from_token(args.host), _graph_from_token(args.pattern)
    try:
        model = has_minor(host, pattern, limit=max(10, args.limit))
    except PatternError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        _emit({"host": encode(host), "pattern": encode(pattern), "model": model.to_json() if model else None}, out)
    else:
        out.write("present\n" if model else "absent\n")
    if model is not None:
        assert check_model(host, pattern, model) is None
    return EXIT_OK if model else EXIT_FAIL


_FILTERS = {
    "connected": Graph.is_connected,
    "nonplanar": lambda g: not planar(g),
    "3-connected": lambda g: is_k_connected(g, 3),
    "almost-planar": lambda g: decide_by_definition(g, certificates=False).kind is Kind.ALMOST_PLANAR,
}


def cmd_enumerate(args: argparse.Namespace, out: TextIO) -> int:
    preds = [_FILTERS[f] for f in args.filter]
    try:
        for g in enumerate_graphs(args.n, lambda g: all(p(g) for p in preds), max_order=args.max_n):
            out.write(encode(g) + "\n")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    if args.suite not in suites.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(suites.SUITES)}")
    total = failed = 0
    for rec in suites.run(args.suite, max_n=args.max_n):
        total += 1
        failed += not rec["ok"]
        _emit(rec, out)
    _emit({"suite": args.suite, "summary": True, "records": total, "violations": failed, "ok": failed == 0}, out)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def _add_inputs(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--file", "-f", help="graph6 file, one graph per line (default: stdin)")
    src.add_argument("--name", "-n", action="append", help="registry key, e.g. K5, DW:4, Wclass:4,0;4,1;3,none")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="almost-planar", description="Planar / almost-planar / neither, with certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="classify graphs")
    _add_inputs(c)
    c.add_argument("--method", choices=("definition", "obstructions", "structural", "all"), default="all")
    c.add_argument("--set", choices=("F", "F'", "auto"), default="auto", help="obstruction set (with --method obstructions)")
    c.add_argument("--bound", type=int, default=None, help="largest double wheel / Möbius ladder to search")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("certify", help="emit certificates, or audit them with --check")
    _add_inputs(c)
    c.add_argument("--check", metavar="FILE", help="audit a certify output file ('-' for stdin)")
    c.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON lines")
    c.set_defaults(func=cmd_certify)

    c = sub.add_parser("gen", help="print graph6 of named graphs")
    c.add_argument("names", nargs="+", metavar="KEY", help="one of: " + ", ".join(REGISTRY_KEYS))
    c.set_defaults(func=cmd_gen)

    c = sub.add_parser("minor", help="test whether PATTERN is a minor of HOST")
    c.add_argument("host", help="registry key or graph6")
    c.add_argument("pattern", help="registry key or graph6")
    c.add_argument("--limit", type=int, default=10, help="largest pattern order to accept")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_minor)

    c = sub.add_parser("enumerate", help="all graphs on n vertices up to isomorphism")
    c.add_argument("n", type=int)
    c.add_argument("--filter", action="append", default=[], choices=sorted(_FILTERS))
    c.add_argument("--max-n", type=int, default=10, help="refuse n above this")
    c.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("verify", help="run a verification suite: " + ", ".join(suites.SUITES))
    c.add_argument("suite")
    c.add_argument("--max-n", type=int, default=None, help="largest vertex count (thm1, thm4), k (lemma-mobius) or rim (figures)")
    c.set_defaults(func=cmd_verify)
    return p


def main(argv: Iterable[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"almost-planar: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"almost-planar: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
