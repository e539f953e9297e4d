from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import factorint

from chabauty.errors import IllDefinedScalar, NonMinimax, ParseError
from chabauty.groupdsl import (Cyclic, Element, Free, GroupDesc, OMEGA, Quasi, add, negate, parse,
                               scalar_multiply, to_text, zero)

PRIMES = [2, 3, 5, 7]


def test_parse_examples():
    assert parse("Z^2 + Z/8").blocks == ((Free(()), 2), (Cyclic(2, 3), 1))
    assert parse("Z/12").blocks == ((Cyclic(2, 2), 1), (Cyclic(3, 1), 1))
    G = parse("sum_p(Z/p)")
    assert G.families == ("cyclic",) and not G.is_minimax
    assert parse("Z[1/6] + C[5^inf]").blocks == ((Free((2, 3)), 1), (Quasi(5), 1))


def test_parse_whitespace_and_grouping():
    assert parse(" ( Z + Z/2 ) ^ 2 ") == parse("Z^2 + Z/2^2")
    assert parse("0") == parse("") == GroupDesc()
    assert to_text(GroupDesc()) == "0"
    assert parse("Z^w").blocks == ((Free(()), OMEGA),)


@pytest.mark.parametrize("text,pos", [("Z/0", 0), ("Z + Z[1/0]", 4), ("C[4^inf]", 0),
                                      ("Z + ", 4), ("Q", 0), ("Z^", 2), ("sum_p(Z/q)", 6)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.position == pos


def test_family_cannot_take_omega():
    with pytest.raises(ParseError):
        parse("sum_p(Z/p)^w")


def test_order_insensitive():
    assert parse("Z/8 + Z^2") == parse("Z^2 + Z/8")


@pytest.mark.parametrize("n", list(range(1, 10001, 37)) + [9999, 10000, 7919 * 1])
def test_crt_split(n):
    expected = GroupDesc()
    for p, k in factorint(n).items():
        expected = expected + parse("Z/%d" % p ** k)
    assert parse("Z/%d" % n) == expected


def test_crt_split_all_small():
    for n in range(1, 10001):
        G = parse("Z/%d" % n)
        assert G.order() == n


block = st.one_of(
    st.builds(lambda ps: Free(tuple(sorted(set(ps)))), st.lists(st.sampled_from(PRIMES), max_size=2)),
    st.builds(Cyclic, st.sampled_from(PRIMES), st.integers(1, 3)),
    st.builds(Quasi, st.sampled_from(PRIMES)),
)
groups = st.builds(
    GroupDesc,
    st.lists(st.tuples(block, st.one_of(st.integers(1, 3), st.just(OMEGA))), max_size=4),
    st.lists(st.sampled_from(["cyclic", "free", "quasi"]), max_size=2),
)


@given(groups)
@settings(max_examples=300)
def test_print_parse_round_trip(G):
    assert parse(to_text(G)) == G


@given(groups, groups)
def test_sum_commutes(G, H):
    assert G + H == H + G


@given(groups)
def test_normalization_idempotent(G):
    assert GroupDesc(G.blocks, G.families) == G


def test_scalar_multiply_examples():
    G = parse("Z[1/6]")
    assert scalar_multiply(G, Fraction(1, 2), Element(G, [1])).coords == (Fraction(1, 2),)
    G = parse("Z/8")
    assert add(G, Element(G, [5]), Element(G, [6])).coords == (3,)
    G = parse("C[3^inf]")
    with pytest.raises(IllDefinedScalar):
        scalar_multiply(G, Fraction(1, 3), Element(G, [Fraction(2, 9)]))


def test_scalar_multiply_rejects_leaving_block():
    G = parse("Z + Z/4")
    with pytest.raises(IllDefinedScalar) as e:
        scalar_multiply(G, Fraction(1, 2), Element(G, [1, 0]))
    assert e.value.coordinate == 0
    with pytest.raises(IllDefinedScalar):
        scalar_multiply(G, Fraction(1, 2), Element(G, [0, 1]))
    # zero coordinates never block a scalar
    assert scalar_multiply(G, Fraction(1, 3), Element(G, [0, 1])).coords == (0, 3)


def test_element_domains():
    G = parse("Z[1/2] + Z/4 + C[3^inf]")
    assert Element(G, [Fraction(3, 4), 6, Fraction(4, 3)]).coords == (Fraction(3, 4), 2, Fraction(1, 3))
    with pytest.raises(ValueError):
        Element(G, [Fraction(1, 3), 0, 0])
    with pytest.raises(ValueError):
        Element(G, [0, 0, Fraction(1, 2)])
    with pytest.raises(NonMinimax):
        zero(parse("Z^w"))


qc_vals = st.builds(lambda a, k: Fraction(a, 3 ** k), st.integers(0, 80), st.integers(0, 4))


@given(st.integers(-50, 50), st.integers(0, 15), qc_vals, st.integers(-50, 50), st.integers(0, 15), qc_vals)
def test_group_laws(a, b, c, x, y, z):
    G = parse("Z + Z/16 + C[3^inf]")
    u, v = Element(G, [a, b, c]), Element(G, [x, y, z])
    assert add(G, u, v) == add(G, v, u)
    assert add(G, u, negate(G, u)) == zero(G)
    assert add(G, add(G, u, v), negate(G, v)) == u


@given(st.integers(-20, 20), st.integers(0, 4), st.integers(0, 15))
def test_scalar_multiply_is_inverse_of_multiplication(a, k, c):
    G = parse("Z[1/6] + Z/16")
    b = 3 ** k
    x = Element(G, [a, c])
    y = scalar_multiply(G, Fraction(1, b), x)
    assert scalar_multiply(G, b, y) == x
