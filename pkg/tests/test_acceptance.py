"""Acceptance criteria, one test each.

A PASS/FAIL line per criterion is printed in the terminal summary (see
conftest.py). Run alone with ``python3 -m pytest tests/test_acceptance.py``.
All comparisons are exact.
"""

import subprocess
import sys
from fractions import Fraction as F

import pytest

from blchang import formula as fm
from blchang.algebra import SumElement, a, b, make_chain
from blchang.algebra.laws import check_laws
from blchang.checker import EQUATIONS, Equation, EVar, Join, Uplus, check_equation, enumerate_finite_sums
from blchang.checker.suite import AXIOM_CHAINS
from blchang.embedding import (
    chang_fragment,
    chang_into_rotation,
    check_embedding,
    find_embedding,
    partial_subalgebra,
)
from blchang.valuation import (
    ChangIndices,
    CrossComponents,
    Exhaustive,
    Grid,
    Mixed,
    Points,
    Random,
    default_source,
)

import oracles

N = 10_000
RND = Random(N)


def criterion(title):
    def mark(fn):
        fn.criterion = title
        return fn
    return mark


@criterion("01 BL laws hold on >= 10^4 sampled triples per chain (11 chains)")
def test_criterion_01_bl_laws():
    descriptors = ["C", "LukStd", "GodStd", "ProdStd", "Canc", "V", "MV(7)", "G(5)", "C ++ LukStd",
                   "omega*V", "LukStd ++ Canc"]
    for d in descriptors:
        chain = make_chain(d)
        v = check_laws(chain, RND)
        assert v, f"{d}: {v.describe(chain)}"
        assert v.count >= N


@criterion("02 uplus = oplus on MV(2..8), LukStd, C (indices <= 25) and V")
def test_criterion_02_uplus_is_oplus():
    e = EQUATIONS["uplus-oplus"]
    for k in range(2, 9):
        v = check_equation(e, make_chain(f"MV({k})"), Exhaustive())
        assert v and v.decided and v.count == k * k
    assert check_equation(e, make_chain("LukStd"), Mixed(Grid(64), RND))
    assert check_equation(e, make_chain("C"), ChangIndices(25)).count == 52 * 52
    assert check_equation(e, make_chain("V"), RND).count == N


@criterion("03 uplus = 1 on the standard cancellative hoop")
def test_criterion_03_uplus_top_cancellative():
    v = check_equation(EQUATIONS["uplus-one"], make_chain("Canc"), RND)
    assert v and v.count == N


@criterion("04 uplus = join across summands of C ++ LukStd, ProdStd, omega*V (>= 10^3 pairs)")
def test_criterion_04_cross_component_join():
    x, y = EVar("x"), EVar("y")
    e = Equation(Uplus(x, y), Join(x, y), "uplus-join")
    for d in ("C ++ LukStd", "ProdStd", "omega*V"):
        v = check_equation(e, make_chain(d), CrossComponents(N))
        assert v and v.count >= 1000


@criterion("05 cha holds on C, V, omega*V, GodStd, ProdStd; fails on LukStd at 2/5 and MV(3..8)")
def test_criterion_05_cha_verdicts():
    cha = EQUATIONS["cha"]
    assert check_equation(cha, make_chain("C"), ChangIndices(50))
    assert check_equation(cha, make_chain("V"), RND)
    assert check_equation(cha, make_chain("omega*V"), RND)
    assert check_equation(cha, make_chain("GodStd"), Grid(64))
    assert check_equation(cha, make_chain("ProdStd"), Grid(64))
    luk = make_chain("LukStd")
    v = check_equation(cha, luk, Points.of({"x": F(2, 5)}))
    assert not v and v.valuation == {"x": F(2, 5)} and (v.lhs, v.rhs) == (F(3, 5), F(0))
    # the oracle: 2(2/5) = 4/5, (4/5)^2 = 3/5, (2/5)^2 = 0
    assert oracles.luk_mul(F(4, 5), F(4, 5)) == F(3, 5) and oracles.luk_mul(F(2, 5), F(2, 5)) == 0
    assert not check_equation(cha, luk, Grid(64))
    for k in range(3, 9):
        v = check_equation(cha, make_chain(f"MV({k})"), Exhaustive())
        assert not v


@criterion("06 p0 holds but cha fails on C ++ LukStd; cha and its oplus form agree on MV chains")
def test_criterion_06_separation():
    cl = make_chain("C ++ LukStd")
    cha, cha_mv = EQUATIONS["cha"], EQUATIONS["cha-mv"]
    mixed = default_source(cl, 1)
    assert check_equation(EQUATIONS["p0"], cl, mixed)
    v = check_equation(cha, cl, mixed)
    assert not v and v.valuation["x"].component == 1
    v = check_equation(cha, cl, Points.of({"x": SumElement(1, F(2, 5))}))
    assert (v.lhs, v.rhs) == (SumElement(1, F(3, 5)), SumElement(1, F(0)))
    assert bool(check_equation(cha_mv, cl, mixed)) != bool(check_equation(cha, cl, mixed))
    sources = [(f"MV({k})", Exhaustive()) for k in range(2, 9)]
    sources += [("LukStd", Mixed(Grid(64), RND)), ("C", ChangIndices(50)), ("V", RND)]
    for d, src in sources:
        chain = make_chain(d)
        assert bool(check_equation(cha, chain, src)) == bool(check_equation(cha_mv, chain, src)), d


@criterion("07 finite sums of size <= 6: cha holds exactly on sums of 2-element chains")
def test_criterion_07_finite_chains():
    sums = enumerate_finite_sums(6)
    assert len(sums) == 31
    for chain in sums:
        parts = getattr(chain, "components", (chain,))
        boolean = all(p.descriptor == "MV(2)" for p in parts)
        v = check_equation(EQUATIONS["cha"], chain, Exhaustive())
        assert v.decided if v else True
        assert bool(v) == boolean, chain.descriptor


@criterion("08 perfect condition on all sampled C and V elements; fails at 3/5 in LukStd")
def test_criterion_08_perfectness():
    c = make_chain("C")
    assert all(c.perfect_condition(x) for x in c.points(index=50))
    v = make_chain("V")
    for val in RND.valuations(v, ["x"]):
        assert v.perfect_condition(val["x"])
    luk = make_chain("LukStd")
    assert not luk.perfect_condition(F(3, 5))
    assert (luk.ord(F(3, 5)).n, luk.ord(F(2, 5)).n) == (3, 2)
    assert oracles.power_order(oracles.luk_mul, F(3, 5), F(0), 10) == 3


@criterion("09 Chang closed-form residuum equals the residuation search for indices <= 25")
def test_criterion_09_chang_residuum():
    c = make_chain("C")
    mk = {"a": a, "b": b}
    checked = 0
    for sx in "ab":
        for sy in "ab":
            for n in range(26):
                for m in range(26):
                    got = c.imp(mk[sx](n), mk[sy](m))
                    ref = oracles.chang_residuum_search((sx, n), (sy, m), n + m + 1)
                    assert (got.side, got.index) == ref
                    checked += 1
    assert checked == 4 * 26 * 26


@criterion("10 embeddings: geometric map, search at denominator 16, G(2) into bounded chains")
def test_criterion_10_embeddings():
    frag = chang_fragment(5)
    assert len(frag) == 12
    assert check_embedding(chang_into_rotation(5, F(1, 2)), frag)
    found = find_embedding(frag, "V", denom=16)
    assert found and check_embedding(found, frag)
    two = partial_subalgebra(make_chain("G(2)"), [0, 1])
    for d in AXIOM_CHAINS:
        m = find_embedding(two, d)
        assert m and check_embedding(m, two), d


@criterion("11 axioms A1-A7 valid on every bounded chain; INV fails on G(3) at p = 1/2")
def test_criterion_11_axioms():
    for d in AXIOM_CHAINS:
        chain = make_chain(d)
        for name in fm.BL_AXIOMS:
            s = fm.schema(name)
            f = s.instantiate(**dict(zip(s.metavariables, ["p", "q", "r"])))
            v = fm.is_tautology(f, chain, default_source(chain, len(f.variables())))
            assert v, f"{name} on {d}: {v.describe(chain)}"
    v = fm.is_tautology(fm.schema("INV").instantiate(phi="p"), make_chain("G(3)"), Exhaustive())
    assert not v and v.valuation == {"p": F(1, 2)}


@criterion("12 two runs of `suite --machine` are byte-identical")
def test_criterion_12_determinism():
    cmd = [sys.executable, "-m", "blchang", "suite", "--machine"]
    procs = [subprocess.Popen(cmd, stdout=subprocess.PIPE, stderr=subprocess.PIPE) for _ in range(2)]
    outs = [p.communicate(timeout=600) for p in procs]
    assert [p.returncode for p in procs] == [0, 0], outs[0][1].decode()
    assert outs[0][0] == outs[1][0]
    assert outs[0][0].count(b"\n") > 100


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
