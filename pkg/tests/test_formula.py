from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blchang import formula as fm
from blchang.algebra import a, make_chain
from blchang.errors import EvaluationError, ParseError, StrategyError, UnsupportedOperation
from blchang.valuation import Exhaustive, Grid, Random

LUK = make_chain("LukStd")
p, q, r = fm.Var("p"), fm.Var("q"), fm.Var("r")


# ---------------------------------------------------------------------------
# parsing and printing


def test_parse_basic_shapes():
    assert fm.parse("p -> p") == fm.Impl(p, p)
    assert fm.parse("!(!p & !q)") == fm.Neg(fm.Conj(fm.Neg(p), fm.Neg(q)))
    assert fm.parse("uplus(p,q)") == fm.VeeBar(p, q)
    assert fm.parse("oplus(p, q)") == fm.StrongDisj(p, q)
    assert fm.parse("pow(p, 3)") == fm.Power(p, 3)
    assert fm.parse("nuplus(2, p)") == fm.NUplus(2, p)
    assert fm.parse("0 -> 1") == fm.Impl(fm.Bottom(), fm.Top())


def test_parse_strong_disjunction_expands_like_definition():
    parsed = fm.parse("!(!p & !q)").expand()
    assert parsed == fm.StrongDisj(p, q).expand()


def test_veebar_expansion_by_hand():
    pq = fm.Conj(p, q)
    hand = fm.Meet(fm.Impl(fm.Impl(p, pq), q), fm.Impl(fm.Impl(q, pq), p)).expand()
    assert fm.parse("uplus(p,q)").expand() == hand


def test_precedence_and_associativity():
    assert fm.parse("p -> q -> r") == fm.Impl(p, fm.Impl(q, r))
    assert fm.parse("p & q -> r") == fm.Impl(fm.Conj(p, q), r)
    assert fm.parse("p \\/ q /\\ r") == fm.Join(p, fm.Meet(q, r))
    assert fm.parse("p /\\ q & r") == fm.Meet(p, fm.Conj(q, r))
    assert fm.parse("!p & q") == fm.Conj(fm.Neg(p), q)
    assert fm.parse("p <-> q -> r") == fm.Iff(p, fm.Impl(q, r))
    assert fm.parse("p <-> q <-> r") == fm.Iff(fm.Iff(p, q), r)


@pytest.mark.parametrize("text,position", [("p ->", 4), ("(p", 2), ("p & & q", 4), ("pow(p, 0)", 7),
                                            ("P", 0), ("p q", 2)])
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ParseError) as err:
        fm.parse(text)
    assert err.value.position == position
    assert err.value.expected


def _formulas():
    leaves = st.sampled_from([p, q, r, fm.Bottom(), fm.Top()])

    def extend(children):
        n = st.integers(1, 3)
        return st.one_of(
            st.builds(fm.Neg, children),
            *[st.builds(cls, children, children)
              for cls in (fm.Conj, fm.Meet, fm.Join, fm.Impl, fm.Iff, fm.StrongDisj, fm.VeeBar)],
            st.builds(fm.Power, children, n),
            st.builds(fm.NSum, n, children),
            st.builds(fm.NUplus, n, children),
        )

    return st.recursive(leaves, extend, max_leaves=8)


@given(_formulas())
def test_render_round_trip(f):
    assert fm.parse(fm.render(f)) == f
    assert fm.parse(" ".join(fm.render(f).split(" "))) == f


@given(_formulas())
def test_expansion_is_idempotent_and_primitive(f):
    e = f.expand()
    assert e.expand() == e
    prim = (fm.Var, fm.Bottom, fm.Conj, fm.Impl)
    assert all(isinstance(node, prim) for node in e.walk())


def test_pretty_printing():
    assert fm.pretty(fm.schema("A7").template) == "⊥ → φ"


# ---------------------------------------------------------------------------
# evaluation


def test_evaluate_examples():
    assert fm.evaluate(fm.parse("uplus(p,q)"), LUK, {"p": F(1, 5), "q": F(3, 10)}) == F(1, 2)
    assert fm.evaluate(fm.Top(), make_chain("C"), {}) == a(0)
    cha = fm.schema("CHA").instantiate(phi="p")
    # sides are 3/5 and 0, so the biconditional is 1 - 3/5
    assert fm.evaluate(cha, LUK, {"p": F(2, 5)}) == F(2, 5)


def test_evaluate_errors():
    with pytest.raises(EvaluationError):
        fm.evaluate(fm.parse("p & q"), LUK, {"p": F(1, 2)})
    with pytest.raises(UnsupportedOperation):
        fm.evaluate(fm.parse("p"), make_chain("Canc"), {"p": F(1, 2)})


@pytest.mark.parametrize("descriptor", ["LukStd", "GodStd", "ProdStd", "C", "V", "C ++ LukStd"])
def test_derived_connectives_match_their_expansion(descriptor):
    chain = make_chain(descriptor)
    f = fm.parse("(p /\\ q) -> (p \\/ uplus(q, !p)) & oplus(p, q) <-> nuplus(2, pow(p, 2))")
    g = f.expand()
    for val in Random(300, seed=3, bound=12).valuations(chain, ["p", "q"]):
        assert chain.cmp(fm.evaluate(f, chain, val), fm.evaluate(g, chain, val)) == 0
        assert fm.evaluate(fm.Meet(p, q), chain, val) == chain.meet(val["p"], val["q"])
        assert fm.evaluate(fm.Join(p, q), chain, val) == chain.join(val["p"], val["q"])


@pytest.mark.parametrize("descriptor", ["LukStd", "MV(6)", "C", "V"])
def test_veebar_equals_strong_disjunction_on_mv_chains(descriptor):
    chain = make_chain(descriptor)
    src = Exhaustive() if chain.finite else Random(2000, seed=5, bound=30)
    assert fm.is_tautology(fm.parse("uplus(p,q) <-> oplus(p,q)"), chain, src)


# ---------------------------------------------------------------------------
# schemas and tautologies


def test_schema_catalogue():
    names = [s.name for s in fm.schemas()]
    assert names == ["A1", "A2", "A3", "A4", "A5a", "A5b", "A6", "A7", "INV", "CHA", "P0"]
    assert fm.schema("A7").template == fm.Impl(fm.Bottom(), fm.PHI)
    assert fm.schema("cha") is fm.schema("CHA")
    with pytest.raises(KeyError):
        fm.schema("A8")


def test_instantiate():
    a1 = fm.schema("A1").instantiate(phi="p", psi="p", chi="p")
    assert a1.variables() == ["p"]
    for chain in ("LukStd", "GodStd", "C"):
        assert fm.is_tautology(a1, make_chain(chain), Random(200, seed=1))
    with pytest.raises(ValueError):
        fm.schema("A7").instantiate(psi="p")


def test_cha_template_shape():
    cha = fm.schema("CHA").template
    assert cha == fm.Iff(fm.Power(fm.NUplus(2, fm.PHI), 2), fm.NUplus(2, fm.Power(fm.PHI, 2)))
    p0 = fm.schema("P0").template
    assert fm.render(p0) == "!pow(!pow(phi, 2), 2) <-> pow(!pow(!phi, 2), 2)"


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "A5a", "A5b", "A6", "A7"])
def test_axioms_on_finite_godel(name):
    s = fm.schema(name)
    f = s.instantiate(**dict(zip(s.metavariables, ["p", "q", "r"])))
    v = fm.is_tautology(f, make_chain("G(5)"), Exhaustive())
    assert v and v.decided and v.count == 5 ** len(f.variables())


def test_bottom_is_not_a_tautology():
    v = fm.is_tautology(fm.Bottom(), make_chain("G(2)"), Exhaustive())
    assert not v
    assert dict(v.valuation) == {} and v.lhs == 0


def test_inv_on_godel_three():
    v = fm.is_tautology(fm.schema("INV").instantiate(phi="p"), make_chain("G(3)"), Exhaustive())
    assert not v
    assert v.valuation == {"p": F(1, 2)} and v.lhs == F(1, 2)


def test_sampled_verdicts_are_not_decisions():
    v = fm.is_tautology(fm.parse("p -> p"), LUK, Grid(8))
    assert v and not v.decided
    with pytest.raises(StrategyError):
        fm.is_tautology(fm.parse("p"), LUK, Exhaustive())
