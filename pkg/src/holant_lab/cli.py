"""Command-line front end: ``holant <command> [flags]``.

Exit codes: 0 success, 1 usage, 2 parse error, 3 domain error, 4 anomaly.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .cyclo import CycError, cyc
from .dichotomy import NotHard, classify, hardness_witness, real_disjunction_scan
from .gadgets import InvalidRegion, UnknownGadget, builtin_matrix, finisher_set, verify_identity_suite
from .grid import (
    SLOT,
    ArityMismatch,
    DanglingPort,
    EdgeLabeledGraph,
    GridError,
    MalformedDocument,
    NonBipartiteWiring,
    NotSymmetric,
    SignatureGrid,
    SymSignature,
    fgate_signature,
    load_instance,
    symmetric_project,
    transfer_matrix,
)
from .holant import Mod3ViolationAnomaly, auto_eval, holant_eval_grid, symmetrize
from .interp import InterpolationError, IterationFamily, run_reduction
from .linalg import fmt_matrix, matvec

log = logging.getLogger("holant_lab")

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_DOMAIN, EXIT_ANOMALY = range(5)

_PARSE_ERRORS = (MalformedDocument, DanglingPort, ArityMismatch, NonBipartiteWiring, CycError, json.JSONDecodeError)


class UsageError(Exception):
    pass


class Anomaly(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--graph", metavar="PATH", help="edge-labeled 3-regular graph (JSON)")
    common.add_argument("--grid", metavar="PATH", help="bipartite signature grid or F-gate (JSON)")
    common.add_argument("--signature", metavar="[x,y,z]", help="binary edge signature")
    common.add_argument("--a", metavar="LIT", help="scalar a of [a,1,b]")
    common.add_argument("--b", metavar="LIT", help="scalar b of [a,1,b]")
    common.add_argument("--planar", action="store_true", help="restrict to planar instances")
    common.add_argument("--gadget", metavar="ID", help="gadget id (4..16, F, s, abEqual)")
    common.add_argument("--target", metavar="[x,y]", help="unary signature to simulate")
    common.add_argument("--range", metavar="LO,HI[,LO,HI]", default="-10,10", help="scan range for X (and Y)")
    common.add_argument("--step", metavar="RAT", default="1/10", help="scan step")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="holant", description="Exact Holant evaluation and the Hol(a,b) dichotomy.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True
    for name, help_text in (
        ("eval", "evaluate a Holant instance exactly"),
        ("symmetrize", "integer polynomial P(X,Y) of a 3-regular graph"),
        ("classify", "complexity verdict for Hol(a,b)"),
        ("witness", "hardness witness (JSON) for a Hard point"),
        ("verify-identities", "replay the symbolic identity suite"),
        ("interpolate-demo", "run the unary interpolation reduction on a grid"),
        ("scan-real", "real-plane disjunction scan"),
        ("gadget-signature", "signature / transfer matrix of an F-gate or stored gadget"),
    ):
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return p


def _need(args, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} requires {', '.join(missing)}")


def _ab(args):
    _need(args, "a", "b")
    return cyc(args.a), cyc(args.b)


def _signature(args) -> SymSignature:
    if args.signature is not None:
        return SymSignature.parse(args.signature)
    a, b = _ab(args)
    return SymSignature([a, 1, b])


def _vector(text: str) -> list:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise MalformedDocument(f"expected a bracketed vector, got {text!r}")
    return [cyc(p) for p in body[1:-1].split(",")]


def _load(path: str, want: type):
    try:
        inst = load_instance(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    if not isinstance(inst, want):
        raise MalformedDocument(f"{path} is not a {'graph' if want is EdgeLabeledGraph else 'grid'} document")
    return inst


def _gadget_id(text: str):
    return int(text) if text.lstrip("-").isdigit() else text


# -- commands ----------------------------------------------------------------------------


def cmd_eval(args):
    if args.grid:
        grid = _load(args.grid, SignatureGrid)
        value = holant_eval_grid(grid)
        return {"value": str(value), "method": "tensor contraction"}, str(value)
    _need(args, "graph")
    g = _load(args.graph, EdgeLabeledGraph)
    value, method = auto_eval(g, _signature(args), jobs=args.jobs)
    return {"value": str(value), "method": method}, str(value)


def cmd_symmetrize(args):
    _need(args, "graph")
    g = _load(args.graph, EdgeLabeledGraph)
    sp = symmetrize(g, jobs=args.jobs)
    return {"P": str(sp), "edges": sp.source_edge_count, "vertices": sp.source_vertex_count}, str(sp)


def cmd_classify(args):
    a, b = _ab(args)
    cls = classify(a, b, planar=args.planar)
    return cls.to_json(), str(cls)


def cmd_witness(args):
    a, b = _ab(args)
    w = hardness_witness(a, b)
    ok = w.verify()
    doc = w.to_json()
    doc["reverified"] = ok
    if w.is_anomaly or not ok:
        raise Anomaly(json.dumps(doc, indent=2))
    text = json.dumps(doc, indent=2)
    return doc, text


def cmd_verify_identities(args):
    records = verify_identity_suite()
    lines = [r.report_line() for r in records]
    failed = [r.name for r in records if not r.passed]
    lines.append(f"{len(records) - len(failed)}/{len(records)} identities pass")
    doc = {
        "records": [
            {"name": r.name, "anchor": r.anchor, "statement": r.statement, "status": "PASS" if r.passed else "FAIL",
             **({} if r.passed else {"lhs": r.lhs, "rhs": r.rhs})}
            for r in records
        ],
        "failed": failed,
    }
    return doc, "\n".join(lines), (EXIT_ANOMALY if failed else EXIT_OK)


def _demo_grid() -> SignatureGrid:
    # theta graph with one edge cut into two SLOT halves
    edge = SymSignature([2, 1, 3])
    eq3 = SymSignature([1, 0, 0, 1])
    return SignatureGrid(
        (edge, edge, SLOT, SLOT),
        (eq3, eq3),
        (((0, 0), (0, 0)), ((0, 1), (1, 0)), ((1, 0), (0, 1)), ((1, 1), (1, 1)), ((2, 0), (0, 2)), ((3, 0), (1, 2))),
        (),
    )


def _family(args) -> IterationFamily:
    a = cyc(args.a) if args.a is not None else cyc(2)
    b = cyc(args.b) if args.b is not None else cyc(3)
    gid = _gadget_id(args.gadget) if args.gadget is not None else 4
    entry = builtin_matrix(gid)
    s = [a, cyc(1), b]
    if entry.kind == "binary-recursive":
        fin = finisher_set(a, b)
        return IterationFamily(entry.at(a, b), s, fin.matrices)
    if entry.kind in ("unary-recursive", "special"):
        start = [a, cyc(1)] if entry.kind == "special" else matvec(builtin_matrix("F").at(a, b), s)
        return IterationFamily(entry.at(a, b) if entry.kind != "special" else entry.at(a), start)
    raise UsageError(f"gadget {gid} is not a recursive gadget")


def cmd_interpolate_demo(args):
    grid = _load(args.grid, SignatureGrid) if args.grid else _demo_grid()
    target = _vector(args.target) if args.target else [cyc(7), cyc(11)]
    if len(target) != 2:
        raise MalformedDocument("--target must be a unary signature [x,y]")
    fam = _family(args)
    rec = run_reduction(grid, target, fam, extra_checks=2, compare_direct=True)
    doc = rec.to_json()
    doc["slots"] = len(grid.slots())
    doc["target"] = [str(v) for v in target]
    plan = rec.plan
    lines = [
        f"slots: {len(grid.slots())}",
        f"finisher: {plan.finisher if plan else '-'}",
        f"selected k: {plan.ks if plan else []}",
        "coefficients: [" + ", ".join(str(c) for c in rec.coefficients) + "]",
        f"interpolated: {rec.result}",
        f"direct: {rec.direct}",
        f"residual: {'zero' if rec.residual_ok else 'NONZERO'}",
        "EQUAL" if rec.equal else "DIFFER",
    ]
    code = EXIT_OK if rec.equal and rec.residual_ok else EXIT_ANOMALY
    return doc, "\n".join(lines), code


def _parse_range(text: str):
    parts = [Fraction(p.strip()) for p in text.split(",")]
    if len(parts) == 2:
        return (parts[0], parts[1]), (parts[0], parts[1])
    if len(parts) == 4:
        return (parts[0], parts[1]), (parts[2], parts[3])
    raise UsageError("--range takes LO,HI or XLO,XHI,YLO,YHI")


def cmd_scan_real(args):
    try:
        xr, yr = _parse_range(args.range)
        step = Fraction(args.step)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --range/--step: {exc}") from exc
    if step <= 0:
        raise UsageError("--step must be positive")
    rep = real_disjunction_scan(xr, yr, step, jobs=args.jobs)
    doc = rep.to_json()
    lines = [
        f"points: {rep.total}  checked: {rep.checked}",
        "excluded: " + ", ".join(f"{k}: {v}" for k, v in rep.excluded.items()),
        "first success by gadget: " + ", ".join(f"{k}: {v}" for k, v in rep.winners.items()),
        "(0,-1): citation (known #P-hard)" if rep.excluded["(X,Y)=(0,-1)"] else "",
        f"counterexamples: {len(rep.counterexamples)}",
    ]
    lines += [f"  ({x}, {y})" for x, y in rep.counterexamples]
    return doc, "\n".join(line for line in lines if line), (EXIT_ANOMALY if rep.counterexamples else EXIT_OK)


def cmd_gadget_signature(args):
    if args.gadget is not None:
        entry = builtin_matrix(_gadget_id(args.gadget))
        doc = {"id": entry.id, "kind": entry.kind, "matrix": [[str(p) for p in r] for r in entry.matrix.rows]}
        lines = [f"gadget {entry.id} ({entry.kind})"] + ["  [" + ", ".join(str(p) for p in r) + "]" for r in entry.matrix.rows]
        if args.a is not None:
            a = cyc(args.a)
            b = cyc(args.b) if args.b is not None else None
            num = entry.at(a, b)
            doc["at"] = {"a": str(a), "b": None if b is None else str(b), "matrix": [[str(v) for v in r] for r in num]}
            lines.append(f"at a={a}" + ("" if b is None else f", b={b}") + f": {fmt_matrix(num)}")
        return doc, "\n".join(lines)
    _need(args, "grid")
    gate = _load(args.grid, SignatureGrid)
    if gate.slots():
        raise GridError("F-gate has unfilled SLOTs")
    tensor = fgate_signature(gate)
    doc = {"arity": tensor.arity, "tensor": [str(v) for v in tensor.values]}
    lines = ["tensor: [" + ", ".join(str(v) for v in tensor.values) + "]"]
    try:
        sym = symmetric_project(tensor)
        doc["symmetric"] = str(sym)
        lines.append(f"symmetric: {sym}")
    except NotSymmetric as exc:
        doc["symmetric"] = None
        lines.append(f"not symmetric: {exc}")
    if gate.inputs() and gate.outputs():
        try:
            tm = transfer_matrix(gate)
            doc["transfer_matrix"] = [[str(v) for v in r] for r in tm]
            lines.append(f"transfer matrix: {fmt_matrix(tm)}")
        except NotSymmetric as exc:
            doc["transfer_matrix"] = None
            lines.append(f"no transfer matrix: {exc}")
    return doc, "\n".join(lines)


COMMANDS = {
    "eval": cmd_eval,
    "symmetrize": cmd_symmetrize,
    "classify": cmd_classify,
    "witness": cmd_witness,
    "verify-identities": cmd_verify_identities,
    "interpolate-demo": cmd_interpolate_demo,
    "scan-real": cmd_scan_real,
    "gadget-signature": cmd_gadget_signature,
}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except UsageError as exc:
        print(f"holant: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if args.jobs < 1:
        print("holant: usage error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = COMMANDS[args.command](args)
        doc, text = result[0], result[1]
        code = result[2] if len(result) > 2 else EXIT_OK
        _emit(json.dumps(doc, indent=2) if args.format == "json" else text, args.out)
        return code
    except UsageError as exc:
        print(f"holant: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _PARSE_ERRORS as exc:
        print(f"holant: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (Mod3ViolationAnomaly, Anomaly) as exc:
        print(f"holant: anomaly: {exc}", file=sys.stderr)
        return EXIT_ANOMALY
    except (NotHard, InvalidRegion, UnknownGadget, GridError, InterpolationError, ArithmeticError, ValueError) as exc:
        print(f"holant: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NotImplementedError as exc:
        print(f"holant: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
