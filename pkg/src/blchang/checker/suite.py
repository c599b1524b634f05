"""The regression suite of checkable claims about BL-chains.

Each check produces one :class:`ClaimResult` per chain. The suite encodes
expected verdicts, so a check whose expected verdict is ``Fails`` passes
exactly when a violation is found (with the stated witness, if one is
pinned).
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .. import formula as fm
from ..algebra.chains import Chain, FiniteMV, OrdinalSum
from ..algebra.descriptors import make_chain
from ..algebra.elements import SumElement
from ..embedding import (
    chang_fragment,
    chang_into_rotation,
    check_embedding,
    closure,
    find_embedding,
    partial_subalgebra,
)
from ..valuation import (
    DEFAULT_CHANG_BOUND,
    DEFAULT_DENOM,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    ChangIndices,
    CrossComponents,
    Exhaustive,
    Grid,
    Mixed,
    Points,
    Random,
    ValuationSource,
    default_source,
    render_valuation,
    render_value,
)
from .search import Budget, check_equation, find_counterexample
from .terms import EQUATIONS, Equation, EVar, Join, Uplus

x, y = EVar("x"), EVar("y")
UPLUS_JOIN = Equation(Uplus(x, y), Join(x, y), "uplus-join")

# bounded chains on which the axioms are checked
AXIOM_CHAINS = ("G(2)", "G(3)", "G(5)", "MV(3)", "MV(5)", "LukStd", "GodStd", "ProdStd",
                "C", "V", "C ++ LukStd", "omega*V")


@dataclass(frozen=True)
class Config:
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    denom: int = DEFAULT_DENOM
    chang_bound: int = DEFAULT_CHANG_BOUND
    machine: bool = False
    timing: bool = False


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    algebra: str
    source: str
    expected: str
    verdict: str
    witness: str | None = None
    lhs: str | None = None
    rhs: str | None = None
    count: int | None = None
    elapsed_ms: float | None = None
    ok: bool = False

    def record(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# finite ordinal sums


def _compositions(total: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def enumerate_finite_sums(max_size: int) -> list[Chain]:
    """Every ordinal sum of finite MV-chains with at most ``max_size`` elements.

    A sum of ``MV(k_1), ..., MV(k_m)`` has ``sum(k_i - 1) + 1`` elements
    since the summands share their top. Ordered by size, then number of
    summands, then the sizes left to right.
    """
    if max_size < 2:
        return []
    found = []
    for steps in range(1, max_size):
        for comp in _compositions(steps):
            ks = tuple(c + 1 for c in comp)
            found.append((steps + 1, len(ks), ks))
    found.sort()
    out = []
    for _, m, ks in found:
        parts = [FiniteMV(k) for k in ks]
        out.append(parts[0] if m == 1 else OrdinalSum(parts))
    return out


# ---------------------------------------------------------------------------
# individual checks


def _verdict_fields(chain, v):
    if v:
        return "Holds", None, None, None, v.count
    return ("Fails", render_valuation(chain, v.valuation), render_value(chain, v.lhs),
            render_value(chain, v.rhs), None)


def _tautology_equation(f: fm.Formula) -> Callable:
    def run(chain, source):
        return fm.is_tautology(f, chain, source)
    return run


def check_predicate(chain: Chain, source: ValuationSource, pred: Callable, show: Callable):
    """Pointwise predicate over a one-variable source, in verdict form."""
    from ..valuation import Fails, Holds

    count = 0
    for val in source.valuations(chain, ["x"]):
        if not pred(val["x"]):
            lhs, rhs = show(val["x"])
            return Fails(val, lhs, rhs, source.describe(chain))
        count += 1
    return Holds(count, source.describe(chain), decided=source.decides(chain))


class _Runner:
    def __init__(self, config: Config):
        self.config = config
        self.results: list[ClaimResult] = []

    def timed(self, fn):
        if not self.config.timing:
            return fn(), None
        t0 = time.perf_counter()
        out = fn()
        return out, round((time.perf_counter() - t0) * 1000, 1)

    def verdict(self, claim, chain, source, expected, run, pin=None):
        """Record ``run()``; ``pin`` optionally demands exact witness fields."""
        v, ms = self.timed(run)
        verdict, witness, lhs, rhs, count = _verdict_fields(chain, v)
        ok = verdict == expected
        if ok and pin is not None:
            ok = pin(v, witness, lhs, rhs)
        self.results.append(ClaimResult(claim, chain.descriptor, source, expected, verdict, witness,
                                        lhs, rhs, count, ms, ok))

    def equation(self, claim, chain, e, source, expected, pin=None):
        self.verdict(claim, chain, source.describe(chain), expected,
                     lambda: check_equation(e, chain, source), pin)

    def compare(self, claim, chain, source, expected):
        """Do ``cha`` and ``cha-mv`` get the same verdict from ``source``?"""
        def run():
            v1 = check_equation(EQUATIONS["cha"], chain, source)
            v2 = check_equation(EQUATIONS["cha-mv"], chain, source)
            return v1, v2

        (v1, v2), ms = self.timed(run)
        label = lambda v: "Holds" if v else "Fails"  # noqa: E731
        verdict = "Agree" if bool(v1) == bool(v2) else "Differ"
        self.results.append(ClaimResult(claim, chain.descriptor, source.describe(chain), expected, verdict,
                                        None, f"cha: {label(v1)}", f"cha-mv: {label(v2)}", None, ms,
                                        verdict == expected))

    def embedding(self, claim, algebra, source, expected, run):
        (outcome, witness), ms = self.timed(run)
        self.results.append(ClaimResult(claim, algebra, source, expected, outcome, witness,
                                        None, None, None, ms, outcome == expected))


def _mixed(c: Config, chain: Chain) -> ValuationSource:
    return default_source(chain, 1, seed=c.seed, samples=c.samples, denom=c.denom, chang_bound=c.chang_bound)


def verify_claims_suite(config: Config | None = None) -> list[ClaimResult]:
    """Run every claim check and return the results in a fixed order."""
    c = config or Config()
    r = _Runner(c)
    rnd = Random(c.samples, c.seed, c.denom)
    uo = EQUATIONS["uplus-oplus"]
    cha = EQUATIONS["cha"]

    # uplus agrees with oplus on MV-chains
    for k in range(2, 9):
        r.equation("uplus-eq-oplus", FiniteMV(k), uo, Exhaustive(), "Holds")
    r.equation("uplus-eq-oplus", make_chain("LukStd"), uo, Mixed(Grid(c.denom), rnd), "Holds")
    r.equation("uplus-eq-oplus", make_chain("C"), uo, ChangIndices(25), "Holds")
    r.equation("uplus-eq-oplus", make_chain("V"), uo, rnd, "Holds")

    # uplus is constantly top on a cancellative hoop
    r.equation("uplus-one-canc", make_chain("Canc"), EQUATIONS["uplus-one"], rnd, "Holds")

    # across summands uplus is the join
    cross = CrossComponents(c.samples, c.seed, c.denom)
    for d in ("C ++ LukStd", "ProdStd", "omega*V"):
        r.equation("uplus-cross-join", make_chain(d), UPLUS_JOIN, cross, "Holds")

    # cha holds on perfect, Goedel and product chains
    r.equation("cha-holds", make_chain("C"), cha, ChangIndices(c.chang_bound), "Holds")
    r.equation("cha-holds", make_chain("V"), cha, rnd, "Holds")
    r.equation("cha-holds", make_chain("omega*V"), cha, rnd, "Holds")
    r.equation("cha-holds", make_chain("GodStd"), cha, Grid(c.denom), "Holds")
    r.equation("cha-holds", make_chain("ProdStd"), cha, Grid(c.denom), "Holds")

    # cha fails on MV-chains other than the two-element one
    luk = make_chain("LukStd")
    two_fifths = Fraction(2, 5)
    r.equation("cha-fails-stdMV", luk, cha, Points.of({"x": two_fifths}), "Fails",
               pin=lambda v, w, lhs, rhs: (w, lhs, rhs) == ("x=2/5", "3/5", "0"))
    r.equation("cha-fails-stdMV", luk, cha, Grid(c.denom), "Fails")
    for k in range(3, 9):
        r.equation("cha-fails-finite-mv", FiniteMV(k), cha, Exhaustive(), "Fails")

    # C ++ LukStd satisfies p0 but not cha
    cl = make_chain("C ++ LukStd")
    r.equation("p0-holds-sum", cl, EQUATIONS["p0"], _mixed(c, cl), "Holds")
    budget = Budget(c.denom, c.chang_bound, c.samples, c.seed)
    r.verdict("cha-fails-sum", cl, budget.describe(), "Fails", lambda: find_counterexample(cha, cl, budget),
              pin=lambda v, *_: isinstance(v.valuation["x"], SumElement) and v.valuation["x"].component == 1)
    r.equation("cha-fails-sum", cl, cha, Points.of({"x": SumElement(1, two_fifths)}), "Fails",
               pin=lambda v, w, lhs, rhs: (w, lhs, rhs) == ("x=c1:2/5", "c1:3/5", "c1:0"))

    # over MV-chains cha and its oplus form agree; over the sum they differ
    for k in range(2, 9):
        r.compare("cha-mv-agree", FiniteMV(k), Exhaustive(), "Agree")
    r.compare("cha-mv-agree", luk, Mixed(Grid(c.denom), rnd), "Agree")
    r.compare("cha-mv-agree", make_chain("C"), ChangIndices(c.chang_bound), "Agree")
    r.compare("cha-mv-agree", make_chain("V"), rnd, "Agree")
    r.compare("cha-mv-differ-sum", cl, _mixed(c, cl), "Differ")

    # finite chains: cha iff Goedel
    for chain in enumerate_finite_sums(6):
        parts = chain.components if isinstance(chain, OrdinalSum) else (chain,)
        godel = all(p.descriptor == "MV(2)" for p in parts)
        r.equation("finite-blchang-is-godel", chain, cha, Exhaustive(), "Holds" if godel else "Fails")

    # axioms of BL on every bounded chain
    axioms = [_single_vars(fm.schema(n)) for n in fm.BL_AXIOMS]
    for d in AXIOM_CHAINS:
        chain = make_chain(d)
        for name, f in axioms:
            src = default_source(chain, len(f.variables()), seed=c.seed, samples=c.samples,
                                 denom=c.denom, chang_bound=c.chang_bound)
            r.verdict(f"axiom-{name}", chain, src.describe(chain), "Holds",
                      lambda f=f, chain=chain, src=src: fm.is_tautology(f, chain, src))
    _, inv = _single_vars(fm.schema("INV"))
    g3 = make_chain("G(3)")
    r.verdict("inv-fails-godel", g3, "Exhaustive", "Fails", lambda: fm.is_tautology(inv, g3, Exhaustive()),
              pin=lambda v, w, lhs, rhs: w == "p=1/2")

    # perfectness
    for d, src in (("C", ChangIndices(c.chang_bound)), ("V", rnd)):
        chain = make_chain(d)
        r.verdict("perfect-rotations", chain, src.describe(chain), "Holds",
                  lambda chain=chain, src=src: _perfect_check(chain, src))
    r.verdict("not-perfect-stdMV", luk, "Points(x=3/5)", "Fails",
              lambda: _perfect_check(luk, Points.of({"x": Fraction(3, 5)})),
              pin=lambda v, w, lhs, rhs: (w, lhs, rhs) == ("x=3/5", "ord(x)=Finite(3)", "ord(!x)=Finite(2)"))

    # embeddings
    for ratio in (Fraction(1, 2), Fraction(2, 3)):
        r.embedding("chang-into-rotation", "C -> V", f"n_max=5, ratio={ratio}", "Embeds",
                    lambda ratio=ratio: _chang_map(ratio))
    r.embedding("find-embedding-chang", "C -> V", "a0..a5,b0..b5; denom<=16", "Embeds", _find_chang)
    for d in AXIOM_CHAINS:
        r.embedding("godel2-embeds", f"G(2) -> {d}", "0,1", "Embeds", lambda d=d: _two_into(d))
    r.embedding("fragment-not-embeddable", "LukStd -> V", "closure of 0,2/5,3/5,1; denom<=16",
                "NotFound", _mv6_into_v)
    return r.results


def _single_vars(s: fm.Schema):
    names = dict(zip(("phi", "psi", "chi"), ("p", "q", "r")))
    return s.name, s.instantiate(**{m: names[m] for m in s.metavariables})


def _perfect_check(chain, src):
    return check_predicate(
        chain, src, chain.perfect_condition,
        lambda v: (f"ord(x)={chain.ord(v)}", f"ord(!x)={chain.ord(chain.neg(v))}"))


def _embedding_outcome(m, p):
    if not m:
        return "NotFound", m.describe()
    check = check_embedding(m, p)
    return ("Embeds" if check else "Invalid"), m.serialize()


def _chang_map(ratio):
    return _embedding_outcome(chang_into_rotation(5, ratio), chang_fragment(5))


def _find_chang():
    p = chang_fragment(5)
    return _embedding_outcome(find_embedding(p, "V", denom=16), p)


def _two_into(d):
    p = partial_subalgebra(make_chain("G(2)"), [0, 1])
    return _embedding_outcome(find_embedding(p, d), p)


def _mv6_into_v():
    luk = make_chain("LukStd")
    p = partial_subalgebra(luk, closure(luk, [0, Fraction(2, 5), Fraction(3, 5), 1]))
    return _embedding_outcome(find_embedding(p, "V", denom=16), p)


# ---------------------------------------------------------------------------
# reporting


def suite_ok(results: list[ClaimResult]) -> bool:
    return all(res.ok for res in results)


def format_machine(results: list[ClaimResult]) -> str:
    return "\n".join(json.dumps(res.record(), sort_keys=True, ensure_ascii=False) for res in results)


def format_human(results: list[ClaimResult]) -> str:
    rows = [("claim", "algebra", "source", "expected", "verdict", "ok", "witness")]
    for res in results:
        witness = res.witness or ""
        if res.lhs is not None:
            witness = f"{witness} (lhs={res.lhs}, rhs={res.rhs})".strip()
        ms = "" if res.elapsed_ms is None else f" [{res.elapsed_ms} ms]"
        rows.append((res.claim, res.algebra, res.source, res.expected, res.verdict,
                     "ok" if res.ok else "MISMATCH", witness + ms))
    widths = [max(len(row[i]) for row in rows) for i in range(6)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row[:6], widths)) + "  " + row[6] for row in rows]
    bad = sum(not res.ok for res in results)
    claims = len({res.claim for res in results})
    lines.append(f"{len(results)} checks over {claims} claims, {bad} mismatches")
    return "\n".join(line.rstrip() for line in lines)
