from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blchang.algebra import a, b, make_chain, neg, pos
from blchang.embedding import (
    EmbeddingMap,
    chang_fragment,
    chang_into_rotation,
    check_embedding,
    closure,
    find_embedding,
    inclusion,
    parse_carrier,
    partial_subalgebra,
)
from blchang.errors import ArgumentError, EncodingError

import oracles

C = make_chain("C")
V = make_chain("V")
LUK = make_chain("LukStd")


def test_partial_tables_follow_definedness():
    p = partial_subalgebra(C, [a(0), a(1), b(0), b(1)])
    assert p.carrier == (b(0), b(1), a(1), a(0))
    assert p.mul(a(1), a(1)) is None
    assert p.mul(b(1), b(1)) == b(0)
    assert p.imp(a(1), b(0)) == b(1)
    assert p.has_bottom and p.has_top


def test_singleton_and_closed_fragments():
    top = partial_subalgebra(LUK, [1])
    assert top.mul(1, 1) == 1 and top.imp(1, 1) == 1
    half = partial_subalgebra(LUK, [0, F(1, 2), 1])
    assert half.defined_entries() == 18


def test_partial_subalgebra_rejects_bad_input():
    with pytest.raises(ArgumentError):
        partial_subalgebra(LUK, [F(1, 2), F(1, 2)])
    with pytest.raises(EncodingError):
        partial_subalgebra(LUK, [F(3, 2)])


@given(st.sets(st.fractions(0, 1, max_denominator=12), min_size=1, max_size=5),
       st.sets(st.fractions(0, 1, max_denominator=12), max_size=3))
def test_enlarging_keeps_defined_entries(base, extra):
    small = partial_subalgebra(LUK, base)
    big = partial_subalgebra(LUK, base | extra)
    for (i, j), k in small.mul_table.items():
        x, y, z = small.carrier[i], small.carrier[j], small.carrier[k]
        assert big.mul(x, y) == z
    for (i, j), k in small.imp_table.items():
        x, y, z = small.carrier[i], small.carrier[j], small.carrier[k]
        assert big.imp(x, y) == z


def test_identity_inclusion():
    p = partial_subalgebra(make_chain("MV(3)"), [0, F(1, 2), 1])
    assert check_embedding(inclusion(p, LUK), p, LUK)


@given(st.sets(st.fractions(0, 1, max_denominator=20).filter(lambda q: q > 0), min_size=1, max_size=6))
def test_cancellative_fragments_embed_by_inclusion(elements):
    canc = make_chain("Canc")
    p = partial_subalgebra(canc, elements)
    assert check_embedding(inclusion(p, canc), p, canc)


def test_geometric_map_into_rotation():
    m = chang_into_rotation(5, F(1, 2))
    assert m[a(3)] == pos(F(1, 8)) and m[b(3)] == neg(F(1, 8))
    assert check_embedding(m, chang_fragment(5))
    assert check_embedding(chang_into_rotation(5, F(2, 3)), chang_fragment(5))
    zero = chang_into_rotation(0)
    assert zero.pairs == ((b(0), neg(1)), (a(0), pos(1)))


def test_geometric_map_values_match_rotation_oracle():
    m = chang_into_rotation(4, F(1, 3))
    for n in range(5):
        for k in range(5):
            prod = oracles.rot_mul(("pos", m[a(n)].value), ("neg", m[b(k)].value))
            want = b(max(0, k - n))
            assert prod == (m[want].sign, m[want].value)


def test_ratio_must_be_proper():
    for bad in (0, 1, F(3, 2)):
        with pytest.raises(ArgumentError):
            chang_into_rotation(3, bad)
    with pytest.raises(ArgumentError):
        chang_into_rotation(-1)


def test_violations_are_reported():
    p = chang_fragment(2)
    m = chang_into_rotation(2)
    swapped = list(m.pairs)
    swapped[1], swapped[2] = (swapped[1][0], swapped[2][1]), (swapped[2][0], swapped[1][1])
    bad = check_embedding(EmbeddingMap(C, V, tuple(swapped)), p, V)
    assert not bad
    assert any(v.startswith("order:") for v in bad.violations)
    partial = EmbeddingMap(C, V, m.pairs[:-1])
    assert "undefined on a0" in check_embedding(partial, p, V).violations


def test_find_embedding_small_chang_fragment():
    p = partial_subalgebra(C, [a(0), a(1), a(2), b(0), b(1), b(2)])
    m = find_embedding(p, "V", denom=16)
    assert m and check_embedding(m, p)
    assert m[b(1)] == neg(F(15, 16)) and m[a(2)] == pos(F(225, 256))


def test_find_embedding_twelve_elements():
    p = chang_fragment(5)
    m = find_embedding(p, V, denom=16)
    assert check_embedding(m, p)
    assert m[a(5)] == pos(F(15, 16) ** 5)


def test_two_element_chain_embeds_everywhere():
    p = partial_subalgebra(make_chain("G(2)"), [0, 1])
    for d in ("C", "V", "LukStd", "GodStd", "ProdStd", "MV(7)", "C ++ LukStd", "omega*V"):
        target = make_chain(d)
        m = find_embedding(p, target)
        assert m.pairs == ((0, target.bottom), (1, target.top))


def test_unsplittable_fragment_reports_not_found():
    cl = closure(LUK, [0, F(2, 5), F(3, 5), 1])
    assert cl == [0, F(1, 5), F(2, 5), F(3, 5), F(4, 5), 1]
    res = find_embedding(partial_subalgebra(LUK, cl), V, denom=16)
    assert not res and res.exhausted and not res.decided


def test_plain_four_point_fragment_does_embed():
    p = partial_subalgebra(LUK, [0, F(2, 5), F(3, 5), 1])
    m = find_embedding(p, V, denom=16)
    assert check_embedding(m, p)
    assert m[F(2, 5)] == neg(F(15, 16)) and m[F(3, 5)] == pos(F(15, 16))


def test_finite_target_search_is_a_decision():
    p = partial_subalgebra(LUK, [0, F(1, 3), F(2, 3), 1])
    res = find_embedding(p, "MV(5)")
    assert not res and res.decided
    assert find_embedding(p, "MV(7)")


def test_node_limit():
    p = partial_subalgebra(LUK, closure(LUK, [0, F(1, 7), 1]))
    res = find_embedding(p, V, denom=40, node_limit=5)
    assert not res and not res.exhausted


def test_parse_carrier_and_serialize():
    assert parse_carrier(C, "a0..a2, b1") == [a(0), a(1), a(2), b(1)]
    assert parse_carrier(LUK, "0,2/5,1") == [0, F(2, 5), 1]
    with pytest.raises(ArgumentError):
        parse_carrier(C, "a3..a1")
    s = chang_into_rotation(1).serialize()
    assert s == "b0 -> neg 1, b1 -> neg 1/2, a1 -> pos 1/2, a0 -> pos 1"
