import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from idemkit.errors import CapExceeded, DegreeMismatch, GroupParseError
from idemkit.groups import (
    Permutation,
    builtin_group,
    element_order,
    group_from_generators,
    p_part_decomposition,
    parse_group_text,
    format_group_text,
)
from idemkit.primes import PrimeSet, prime_factors

perm = Permutation.parse


def test_closure_examples():
    assert group_from_generators([perm("(0 1)", 3), perm("(0 1 2)", 3)]).order == 6
    assert group_from_generators([], degree=1).order == 1
    assert group_from_generators([perm("(0 1 2 3 4)", 5), perm("(0 1 2)", 5)]).order == 60


def test_closure_errors():
    with pytest.raises(DegreeMismatch):
        group_from_generators([perm("(0 1)", 2), perm("(0 1 2)", 3)])
    with pytest.raises(CapExceeded):
        group_from_generators([perm("(0 1)", 5), perm("(0 1 2 3 4)", 5)], order_cap=100)


def test_closure_is_breadth_first():
    a, b = perm("(0 1)", 3), perm("(0 1 2)", 3)
    G = group_from_generators([a, b])
    assert G.elements[0].is_identity()
    assert G.elements[1:3] == (a, b)


def test_element_order_examples():
    assert element_order(Permutation.identity(4)) == 1
    assert element_order(perm("(0 1)", 2)) == 2
    assert element_order(perm("(0 1)(2 3 4)", 5)) == 6


def test_p_part_examples():
    C6 = builtin_group("C6")
    g = next(x for x in C6.elements if element_order(x) == 6)
    gP, gQ = p_part_decomposition(g, PrimeSet({2, 3}))
    assert gP == g and gQ.is_identity()
    gP, gQ = p_part_decomposition(g, PrimeSet())
    assert gP.is_identity() and gQ == g
    gP, gQ = p_part_decomposition(perm("(0 1)(2 3 4)", 5), PrimeSet({2}))
    assert gP == perm("(0 1)", 5) and gQ == perm("(2 3 4)", 5)


@st.composite
def perms(draw, max_degree=9):
    n = draw(st.integers(1, max_degree))
    return Permutation(draw(st.permutations(range(n))))


@given(perms(), st.sets(st.sampled_from([2, 3, 5, 7])))
def test_p_part_decomposition_properties(g, primes):
    P = PrimeSet(primes)
    gP, gQ = p_part_decomposition(g, P)
    assert gP * gQ == g == gQ * gP
    assert element_order(gP) * element_order(gQ) == element_order(g)
    assert all(p in P for p in prime_factors(element_order(gP)))
    assert not any(p in P for p in prime_factors(element_order(gQ)))
    powers = {g**k for k in range(element_order(g))}
    assert gP in powers and gQ in powers


@given(perms())
def test_element_order_by_repeated_composition(g):
    assert element_order(g) == oracles.order(g)


def test_class_sizes():
    assert [c.size for c in builtin_group("C1").conjugacy_classes] == [1]
    assert [c.size for c in builtin_group("S3").conjugacy_classes] == [1, 3, 2]
    assert [c.size for c in builtin_group("A5").conjugacy_classes] == [1, 15, 20, 12, 12]


@pytest.mark.parametrize("name", ["S3", "S4", "D4", "Q8", "A4", "D6", "C2xC3"])
def test_classes_match_orbits(name):
    G = builtin_group(name)
    ours = {frozenset(G.elements[i] for i in c.members) for c in G.conjugacy_classes}
    assert ours == {frozenset(c) for c in oracles.conjugacy_classes(G.elements)}
    for c in G.conjugacy_classes:
        assert c.centralizer_order * c.size == G.order


def test_class_order_sorted_by_element_order():
    G = builtin_group("S4")
    orders = [element_order(G.elements[c.representative]) for c in G.conjugacy_classes]
    assert orders == sorted(orders)


def test_builtin_orders():
    expected = {"C1": 1, "C12": 12, "S3": 6, "S4": 24, "D4": 8, "D5": 10, "Q8": 8, "A4": 12, "A5": 60, "C2xC3": 6}
    for name, n in expected.items():
        assert builtin_group(name).order == n
    assert not builtin_group("Q8").is_abelian
    assert builtin_group("C2xC3").is_abelian


def test_unknown_builtin():
    with pytest.raises(ValueError):
        builtin_group("X7")


def test_parse_round_trip():
    G = builtin_group("D5")
    H = parse_group_text(format_group_text(G))
    assert set(H.elements) == set(G.elements)


def test_parse_reports_line():
    text = "degree 4\n(0 1)\n(0 1 2\n"
    with pytest.raises(GroupParseError) as info:
        parse_group_text(text)
    assert "line 3" in str(info.value)


@settings(max_examples=50)
@given(st.text(max_size=40))
def test_parse_never_crashes(text):
    try:
        parse_group_text(text, order_cap=200)
    except (GroupParseError, CapExceeded, DegreeMismatch):
        pass
