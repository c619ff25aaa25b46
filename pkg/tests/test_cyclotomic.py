from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from idemkit.cyclotomic import CycNumber, coords, cyclotomic_polynomial, simplify

CONDUCTOR = 12

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def cyc(draw, n=CONDUCTOR):
    terms = draw(st.lists(st.tuples(st.integers(0, n - 1), rationals), max_size=4))
    total = CycNumber.rational(0, n)
    for k, q in terms:
        total = total + CycNumber.root_of_unity(n, k) * q
    return total


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_roots_of_unity():
    z = CycNumber.root_of_unity(5)
    assert z**5 == 1
    assert z != 1
    assert sum((z**k for k in range(5)), CycNumber.rational(0, 5)) == 0
    w = CycNumber.root_of_unity(3)
    assert w + w.conjugate() == -1


def test_lift_and_simplify():
    w = CycNumber.root_of_unity(3)
    assert w.lift(12) == CycNumber.root_of_unity(12, 4)
    assert simplify(CycNumber.rational(Fraction(3, 2), 12)) == Fraction(3, 2)
    assert coords(Fraction(1, 2), 3) == (Fraction(1, 2), 0)


@given(cyc(), cyc(), cyc())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(cyc(), rationals.filter(bool))
def test_division_by_rational(a, q):
    assert (a / q) * q == a


@given(cyc(), cyc(), st.sampled_from([1, 5, 7, 11]))
def test_galois_is_ring_automorphism(a, b, k):
    assert (a + b).galois(k) == a.galois(k) + b.galois(k)
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)


@given(cyc())
def test_norm_of_conjugate_pair_is_rational(a):
    assert (a * a.conjugate()).conjugate() == a * a.conjugate()
    assert (a + a.conjugate()).conjugate() == a + a.conjugate()
