from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from idemkit.burnside import (
    all_dress_idempotents,
    burnside_ring,
    dress_idempotent,
    element_from_json,
    element_to_json,
    gray_steps,
    is_primitive_A,
    marks_from_json,
    marks_to_json,
    norm_coinduce,
    norm_marks,
    restrict,
    split_cyc_ker,
    table_of_marks,
    transfer,
)
from idemkit.errors import NotPLocal, NotPPerfect
from idemkit.groups import builtin_group
from idemkit.lattice import class_by_label, subgroup_class_index, subgroup_classes
from idemkit.primes import PrimeSet, prime_factors, subsets

S3 = builtin_group("S3")


def sub(G, label):
    return G.subgroup(class_by_label(G, label).representative)


def test_marks_examples():
    assert table_of_marks(builtin_group("C1")).entries == ((1,),)
    assert table_of_marks(builtin_group("C2")).entries == ((2, 0), (1, 1))
    assert table_of_marks(S3).entries == ((6, 0, 0, 0), (3, 1, 0, 0), (2, 0, 2, 0), (1, 1, 1, 1))


@pytest.mark.parametrize("name", ["S3", "A4", "D4", "Q8", "S4", "D6", "C12"])
def test_marks_match_coset_count(name):
    G = builtin_group(name)
    tom = table_of_marks(G)
    classes = subgroup_classes(G)
    for K in classes:
        for H in classes:
            expected = oracles.mark(G.perms_of(K.representative), G.perms_of(H.representative), G.elements)
            assert tom[K.index, H.index] == expected


def test_from_marks_examples():
    ring = burnside_ring(S3, PrimeSet({2}))
    assert ring.from_marks([1, 1, 1, 1]).coeffs == (0, 0, 0, 1)
    e = ring.from_marks([0, 0, 1, 1])
    assert e.coeffs == (Fraction(1, 3), -1, 0, 1)
    assert e == dress_idempotent(S3, PrimeSet({2}), class_by_label(S3, "C3")).element
    # 1/2 [S3/C3] - 1/6 [S3/1] has a 3 in a denominator
    with pytest.raises(NotPLocal):
        burnside_ring(S3, PrimeSet({3})).from_marks([0, 0, 1, 0])
    assert burnside_ring(S3, PrimeSet()).from_marks([0, 0, 1, 0]).coeffs == (Fraction(-1, 6), 0, Fraction(1, 2), 0)


def test_mark_examples():
    ring = burnside_ring(S3)
    assert ring.one().marks == (1, 1, 1, 1)
    assert ring.basis(0).marks == (6, 0, 0, 0)
    e = dress_idempotent(S3, PrimeSet({2}), class_by_label(S3, "C3")).element
    assert e.mark(class_by_label(S3, "C3")) == 1


@st.composite
def elements(draw, G, primes=PrimeSet()):
    ring = burnside_ring(G, primes)
    return ring.from_coeffs([draw(st.integers(-4, 4)) for _ in range(ring.rank)])


@given(st.data())
def test_ghost_map_is_ring_hom(data):
    G = data.draw(st.sampled_from([S3, builtin_group("A4"), builtin_group("D4")]))
    x, y = data.draw(elements(G)), data.draw(elements(G))
    ring = burnside_ring(G)
    assert ring.from_marks((x * y).marks).coeffs == (x * y).coeffs
    assert ring.from_coeffs(x.coeffs) == x
    assert (x + y).marks == tuple(a + b for a, b in zip(x.marks, y.marks))
    assert x * ring.one() == x


def test_product_of_basis_sets_counts_orbits():
    # [S3/C2] x [S3/C2] = [S3/1] + [S3/C2]
    ring = burnside_ring(S3)
    x = ring.basis(1)
    assert (x * x).coeffs == (1, 1, 0, 0)


def test_dress_examples():
    C1 = builtin_group("C1")
    assert dress_idempotent(C1, PrimeSet(), 0).element == burnside_ring(C1).one()
    A4 = builtin_group("A4")
    e = dress_idempotent(A4, PrimeSet({2}), class_by_label(A4, "A4")).element
    assert e.marks == (0, 0, 0, 0, 1)
    with pytest.raises(NotPPerfect):
        dress_idempotent(S3, PrimeSet({3}), class_by_label(S3, "C3"))
    assert [r.label.label for r in all_dress_idempotents(S3, PrimeSet({2}))] == ["1", "C3"]
    assert len(all_dress_idempotents(S3, PrimeSet())) == 4
    assert [r.label.label for r in all_dress_idempotents(builtin_group("A5"), PrimeSet({2, 3, 5}))] == ["1", "A5"]


@pytest.mark.parametrize("name", ["S3", "A4", "S4", "Q8", "D6", "C12"])
def test_dress_family(name):
    G = builtin_group(name)
    for P in subsets(prime_factors(G.order)):
        family = all_dress_idempotents(G, P)
        ring = burnside_ring(G, P)
        total = ring.zero()
        for i, a in enumerate(family):
            assert a.element * a.element == a.element
            assert all(P.is_local(c) for c in a.element.coeffs)
            assert is_primitive_A(a)
            for b in family[i + 1 :]:
                assert (a.element * b.element).is_zero()
            total = total + a.element
        assert total == ring.one()


def test_merged_dress_idempotent_is_not_primitive():
    family = all_dress_idempotents(S3, PrimeSet({2}))
    merged = type(family[0])(family[0].label, family[0].element + family[1].element)
    assert not is_primitive_A(merged)


def test_gray_steps_visit_every_subset_once():
    masks = [m for _, _, m in gray_steps(5)]
    assert sorted(masks) == list(range(1, 32))


def test_restrict_examples():
    P = PrimeSet({2})
    e = dress_idempotent(S3, P, class_by_label(S3, "C3")).element
    assert restrict(e, S3) == e
    assert restrict(e, sub(S3, "C2")).is_zero()
    C3 = sub(S3, "C3")
    r = restrict(e, C3)
    assert r.marks == (0, 1)
    assert r == dress_idempotent(C3, P, 1).element


def test_transfer_examples():
    C2 = sub(S3, "C2")
    assert transfer(burnside_ring(C2).basis(0), S3) == burnside_ring(S3).basis(0)
    x = burnside_ring(S3).basis(2)
    assert transfer(x, S3) == x


def transfer_marks_by_counting(X, H):
    """phi^L(Ind X) = sum over hK in H/K with h^-1 L h <= K of phi^{h^-1 L h}(X)."""
    K = X.group
    K_in_H = H.indices_of(K.elements)
    t, inv = H.table, H.inv
    out = []
    for L in subgroup_classes(H):
        total = Fraction(0)
        seen = set()
        for h in range(H.order):
            coset = frozenset(t[h][k] for k in K_in_H)
            if coset in seen:
                continue
            seen.add(coset)
            conj = frozenset(t[t[inv[h]][l]][h] for l in L.representative)
            if conj <= K_in_H:
                kset = K.indices_of(H.perms_of(conj))
                total += X.marks[subgroup_class_index(K, kset)]
        out.append(total)
    return tuple(out)


@pytest.mark.parametrize("name", ["S3", "A4", "D4", "S4"])
def test_transfer_marks_two_ways(name):
    G = builtin_group(name)
    for Kc in subgroup_classes(G):
        K = G.subgroup(Kc.representative)
        ring = burnside_ring(K)
        for j in range(ring.rank):
            X = ring.basis(j)
            assert transfer(X, G).marks == transfer_marks_by_counting(X, G)


@given(st.data())
def test_frobenius_reciprocity(data):
    K = sub(S3, data.draw(st.sampled_from(["1", "C2", "C3", "S3"])))
    x = data.draw(elements(S3))
    y = data.draw(elements(K))
    assert transfer(restrict(x, K) * y, S3) == x * transfer(y, S3)


def test_norm_examples():
    C2 = builtin_group("C2")
    one_group = C2.subgroup([0])
    pt = burnside_ring(one_group).one()
    assert norm_coinduce(pt, C2) == burnside_ring(C2).one()
    two = burnside_ring(one_group).basis(0) * 2
    N = norm_coinduce(two, C2)
    assert N.marks == (4, 2)
    assert N.coeffs == (1, 2)
    # not additive
    assert norm_coinduce(pt + pt, C2) != norm_coinduce(pt, C2) + norm_coinduce(pt, C2)


def test_norm_of_idempotent_stays_local():
    P = PrimeSet({2})
    C3 = sub(S3, "C3")
    e = dress_idempotent(C3, P, 1).element
    N = norm_coinduce(e, S3)
    assert all(P.is_local(c) for c in N.coeffs)
    assert N.is_idempotent()


@settings(max_examples=40)
@given(st.data())
def test_norm_is_multiplicative_and_unital(data):
    G = data.draw(st.sampled_from([S3, builtin_group("D4"), builtin_group("A4")]))
    Kc = data.draw(st.sampled_from(subgroup_classes(G)))
    K = G.subgroup(Kc.representative)
    x, y = data.draw(elements(K)), data.draw(elements(K))
    assert norm_coinduce(x * y, G) == norm_coinduce(x, G) * norm_coinduce(y, G)
    assert norm_coinduce(burnside_ring(K).one(), G) == burnside_ring(G).one()


def kset_of(K, J_indices):
    return oracles.KSet(K.elements, [K.perms_of(subgroup_classes(K)[j].representative) for j in J_indices])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_norm_matches_function_set_for_combinations(data):
    H = builtin_group(data.draw(st.sampled_from(["S3", "C4", "C6", "D4", "Q8", "C2xC3", "D5"])))
    Kc = data.draw(st.sampled_from(subgroup_classes(H)))
    K = H.subgroup(Kc.representative)
    classes = subgroup_classes(K)
    Js = data.draw(st.lists(st.sampled_from(range(len(classes))), min_size=1, max_size=3))
    points = sum(K.order // classes[j].order for j in Js)
    index = H.order // K.order
    if points > 8 or points**index > 4096:
        return
    ring = burnside_ring(K)
    X = ring.zero()
    for j in Js:
        X = X + ring.basis(j)
    X_set = kset_of(K, Js)
    marks = norm_marks(X, H)
    for L in subgroup_classes(H):
        assert marks[L.index] == oracles.coinduced_fixed_points(X_set, H.elements, H.perms_of(L.representative))


def test_split_cyc_ker():
    e_cyc, e_ker = split_cyc_ker(S3, PrimeSet({2}))
    assert e_ker.is_zero() and e_cyc == burnside_ring(S3, PrimeSet({2})).one()
    A4 = builtin_group("A4")
    _, e_ker = split_cyc_ker(A4, PrimeSet({2}))
    assert e_ker == dress_idempotent(A4, PrimeSet({2}), class_by_label(A4, "A4")).element
    _, e_ker = split_cyc_ker(builtin_group("C1"), PrimeSet())
    assert e_ker.is_zero()


def test_json_round_trip():
    G = builtin_group("A4")
    tom = table_of_marks(G)
    assert marks_from_json(G, marks_to_json(tom)).entries == tom.entries
    e = dress_idempotent(G, PrimeSet({2}), class_by_label(G, "C3")).element
    assert element_from_json(G, element_to_json(e)) == e
