"""Command-line front end: ``blchang <command> ...``.

Element syntax per chain (also used in all output):

  LukStd, GodStd, MV(k), G(k), Canc   rationals such as 0, 1, 3/5
  ProdStd                             rationals; 0 is the bottom, 1 the top
  C                                   a<n> and b<n>, e.g. a3, b0
  V, Rot(Canc)                        'pos 1/8', 'neg 1/8'
  sums, omega*V                       c<i>:<payload>, e.g. c1:2/5, and 1

Exit codes: 0 when the result holds (or an embedding is found, or every
suite expectation is met), 1 when it fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import formula as fm
from .algebra import CATALOGUE, make_chain
from .checker.search import Budget, check_equation, find_counterexample
from .checker.suite import Config, format_human, format_machine, suite_ok, verify_claims_suite
from .checker.terms import equation
from .embedding import (
    DEFAULT_EMBED_DENOM,
    DEFAULT_EMBED_INDEX,
    chang_fragment,
    chang_into_rotation,
    check_embedding,
    closure,
    find_embedding,
    parse_carrier,
    partial_subalgebra,
)
from .errors import ArgumentError, BLError
from .algebra.elements import parse_rational
from .valuation import (
    DEFAULT_CHANG_BOUND,
    DEFAULT_DENOM,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    ChangIndices,
    Exhaustive,
    Grid,
    Points,
    Random,
    default_source,
    render_valuation,
    render_value,
)

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _int(text: str) -> int:
    return int(text, 0)


def _config_flags(parser, defaults: bool):
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--seed", type=_int, default=d(DEFAULT_SEED), help="random seed (default 0xB1C)")
    parser.add_argument("--samples", type=int, default=d(DEFAULT_SAMPLES), help="random valuations per check")
    parser.add_argument("--denom-bound", type=int, default=d(DEFAULT_DENOM), dest="denom",
                        help="grid denominator bound for rational chains")
    parser.add_argument("--chang-bound", type=int, default=d(DEFAULT_CHANG_BOUND), dest="chang_bound",
                        help="index bound for Chang elements")
    parser.add_argument("--machine", action="store_true", default=d(False),
                        help="emit JSON lines instead of text")
    parser.add_argument("--timing", action="store_true", default=d(False),
                        help="report elapsed_ms (makes output run-dependent)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blchang", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    _config_flags(parser, defaults=True)
    common = argparse.ArgumentParser(add_help=False)
    _config_flags(common, defaults=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula under a valuation")
    p.add_argument("algebra")
    p.add_argument("formula")
    p.add_argument("bindings", nargs="*", metavar="var=element")

    for name, text in (("check", "check an equation or schema over a valuation source"),
                       ("counterexample", "search for a violating valuation by iterative deepening")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("algebra")
        p.add_argument("equation", help="named equation (cha, p0, ...), schema (A1..A7, INV, CHA, P0) "
                                        "or inline 'lhs = rhs'")
        if name == "check":
            p.add_argument("--source", choices=("default", "exhaustive", "grid", "chang", "random"),
                           default="default")
            p.add_argument("--at", action="append", default=[], metavar="x=element[,y=element]",
                           help="check only at this valuation (repeatable)")

    sub.add_parser("suite", parents=[common], help="run the claims suite")

    p = sub.add_parser("embed", parents=[common], help="search a partial embedding")
    p.add_argument("source")
    p.add_argument("carrier", help="comma list, ranges like a0..a5 allowed")
    p.add_argument("target")
    p.add_argument("--grid", type=int, default=DEFAULT_EMBED_DENOM, help="candidate denominator bound")
    p.add_argument("--index", type=int, default=DEFAULT_EMBED_INDEX, help="candidate Chang index bound")
    p.add_argument("--closure", action="store_true", help="close the carrier under * and => first")
    p.add_argument("--ratio", help="for C into V: use a_n -> pos(ratio^n) instead of searching")

    p = sub.add_parser("algebra", parents=[common], help="list or describe chain descriptors")
    asub = p.add_subparsers(dest="action", required=True)
    asub.add_parser("list", parents=[common])
    d = asub.add_parser("describe", parents=[common])
    d.add_argument("descriptor")
    return parser


class _Out:
    def __init__(self, machine: bool, stream):
        self.machine = machine
        self.stream = stream

    def emit(self, record: dict, text: str):
        if self.machine:
            print(json.dumps(record, sort_keys=True, ensure_ascii=False), file=self.stream)
        else:
            print(text, file=self.stream)


def _bindings(chain, items):
    val = {}
    for item in items:
        if "=" not in item:
            raise ArgumentError(f"binding {item!r} is not of the form var=element")
        k, v = item.split("=", 1)
        val[k.strip()] = chain.parse_element(v)
    return val


def cmd_eval(args, out) -> int:
    chain = make_chain(args.algebra)
    f = fm.parse(args.formula)
    value = fm.evaluate(f, chain, _bindings(chain, args.bindings))
    text = chain.render(value)
    out.emit({"algebra": chain.descriptor, "formula": fm.render(f), "value": text}, text)
    return EXIT_OK


def _source(args, chain, arity):
    if args.at:
        vals = []
        for spec in args.at:
            vals.append(_bindings(chain, [s for s in spec.split(",") if s.strip()]))
        return Points.of(*vals)
    kind = args.source
    if kind == "exhaustive":
        return Exhaustive()
    if kind == "grid":
        return Grid(args.denom)
    if kind == "chang":
        return ChangIndices(args.chang_bound)
    if kind == "random":
        return Random(args.samples, args.seed, args.denom)
    return default_source(chain, arity, seed=args.seed, samples=args.samples, denom=args.denom,
                          chang_bound=args.chang_bound)


def _verdict_record(name, chain, source, v, ms):
    rec = {"claim": name, "algebra": chain.descriptor, "source": source, "elapsed_ms": ms}
    if v:
        rec.update(verdict="Holds", witness=None, lhs=None, rhs=None, count=v.count, decided=v.decided)
        scope = "decided" if v.decided else "up to source"
        text = f"Holds on {chain.descriptor}: {v.count} valuations, {scope} ({source})"
    else:
        w = render_valuation(chain, v.valuation)
        lhs, rhs = render_value(chain, v.lhs), render_value(chain, v.rhs)
        rec.update(verdict="Fails", witness=w, lhs=lhs, rhs=rhs, count=None, decided=True)
        text = f"Fails on {chain.descriptor}: {w} gives lhs={lhs}, rhs={rhs} ({source})"
    if ms is not None:
        text += f" [{ms} ms]"
    return rec, text


def _timed(args, fn):
    t0 = time.perf_counter()
    v = fn()
    return v, (round((time.perf_counter() - t0) * 1000, 1) if args.timing else None)


def cmd_check(args, out) -> int:
    chain = make_chain(args.algebra)
    e = equation(args.equation)
    src = _source(args, chain, len(e.variables))
    v, ms = _timed(args, lambda: check_equation(e, chain, src))
    rec, text = _verdict_record(e.name, chain, src.describe(chain), v, ms)
    out.emit(rec, text)
    return EXIT_OK if v else EXIT_FAIL


def cmd_counterexample(args, out) -> int:
    chain = make_chain(args.algebra)
    e = equation(args.equation)
    budget = Budget(args.denom, args.chang_bound, args.samples, args.seed)
    v, ms = _timed(args, lambda: find_counterexample(e, chain, budget))
    desc = "Exhaustive" if chain.finite else budget.describe()
    rec, text = _verdict_record(e.name, chain, desc, v, ms)
    out.emit(rec, text)
    return EXIT_OK if v else EXIT_FAIL


def cmd_suite(args, out) -> int:
    config = Config(args.seed, args.samples, args.denom, args.chang_bound, args.machine, args.timing)
    results = verify_claims_suite(config)
    print(format_machine(results) if args.machine else format_human(results), file=out.stream)
    return EXIT_OK if suite_ok(results) else EXIT_FAIL


def cmd_embed(args, out) -> int:
    src = make_chain(args.source)
    tgt = make_chain(args.target)
    elements = parse_carrier(src, args.carrier)
    if args.closure:
        elements = closure(src, elements)
    p = partial_subalgebra(src, elements)
    if args.ratio is not None:
        if src.descriptor != "C" or tgt.descriptor != "V":
            raise ArgumentError("--ratio only applies to embeddings of C into V")
        n = max(x.index for x in p.carrier)
        if p.carrier != chang_fragment(n).carrier:
            raise ArgumentError("--ratio needs a carrier of the form a0..aN,b0..bN")
        m = chang_into_rotation(n, parse_rational(args.ratio))
        budget = f"constructive, ratio={args.ratio}"
    else:
        m = find_embedding(p, tgt, denom=args.grid, index=args.index)
        budget = "whole carrier" if tgt.finite else f"denom<={args.grid}, index<={args.index}"
    rec = {"source": src.descriptor, "target": tgt.descriptor, "carrier": [src.render(x) for x in p.carrier],
           "budget": budget}
    if not m:
        rec.update(found=False, map=None, decided=m.decided)
        out.emit(rec, m.describe())
        return EXIT_FAIL
    check = check_embedding(m, p)
    rec.update(found=True, map=[list(pair) for pair in m.render_pairs()], valid=check.ok)
    text = "\n".join(f"{s} -> {t}" for s, t in m.render_pairs())
    if not check:
        text += "\ninvalid: " + "; ".join(check.violations)
    out.emit(rec, text)
    return EXIT_OK if check else EXIT_FAIL


def cmd_algebra(args, out) -> int:
    if args.action == "list":
        for name, text in CATALOGUE.items():
            out.emit({"descriptor": name, "description": text}, f"{name:<16} {text}")
        return EXIT_OK
    chain = make_chain(args.descriptor)
    rec = {
        "descriptor": chain.descriptor,
        "class": type(chain).__name__,
        "bounded": chain.bounded,
        "finite": chain.finite,
        "mv": chain.mv,
        "cancellative": chain.cancellative,
        "top": chain.render(chain.top),
        "bottom": chain.render(chain.bottom) if chain.bounded else None,
        "size": len(chain.elements()) if chain.finite else None,
        "components": [c.descriptor for c in getattr(chain, "components", ())] or None,
    }
    def show(v):
        if v is None:
            return "-"
        return " ++ ".join(v) if isinstance(v, list) else str(v)

    text = "\n".join(f"{k:<13} {show(v)}" for k, v in rec.items())
    out.emit(rec, text)
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "check": cmd_check,
    "counterexample": cmd_counterexample,
    "suite": cmd_suite,
    "embed": cmd_embed,
    "algebra": cmd_algebra,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    out = _Out(args.machine, stdout)
    try:
        return COMMANDS[args.command](args, out)
    except (BLError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        if args.machine:
            print(json.dumps({"error": type(exc).__name__, "message": msg}, sort_keys=True), file=stdout)
        else:
            print(f"error: {msg}", file=stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
