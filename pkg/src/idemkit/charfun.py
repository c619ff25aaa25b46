"""Exact class functions: linearization, restriction, tensor induction.

Values are :class:`fractions.Fraction` where rational and
:class:`~idemkit.cyclotomic.CycNumber` otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Callable

from .burnside import BurnsideElement, burnside_ring, split_cyc_ker
from .cyclotomic import Scalar, coords, simplify
from .errors import NonIntegerValues
from .groups import FiniteGroup
from .lattice import generator_orbits, left_cosets, subgroup_class_index, subgroup_classes
from .primes import PrimeSet

if TYPE_CHECKING:
    from .chartable import CharacterTable


@dataclass(frozen=True, eq=False)
class ClassFunction:
    group: FiniteGroup
    values: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.values) != len(self.group.conjugacy_classes):
            raise ValueError("one value per conjugacy class is required")
        object.__setattr__(self, "values", tuple(simplify(v) for v in self.values))

    @classmethod
    def constant(cls, G: FiniteGroup, c=1) -> "ClassFunction":
        return cls(G, (c,) * len(G.conjugacy_classes))

    @classmethod
    def indicator(cls, G: FiniteGroup, classes) -> "ClassFunction":
        classes = set(classes)
        return cls(G, tuple(1 if i in classes else 0 for i in range(len(G.conjugacy_classes))))

    @classmethod
    def from_function(cls, G: FiniteGroup, f: Callable[[int], Scalar]) -> "ClassFunction":
        """Evaluate ``f`` (on element indices) at each class representative."""
        return cls(G, tuple(f(c.representative) for c in G.conjugacy_classes))

    def __call__(self, g: int) -> Scalar:
        return self.values[self.group.class_of[g]]

    def _other(self, other) -> tuple:
        if isinstance(other, ClassFunction):
            if other.group is not self.group:
                raise ValueError("class functions on different groups")
            return other.values
        return (other,) * len(self.values)

    def __add__(self, other) -> "ClassFunction":
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, self._other(other))))

    __radd__ = __add__

    def __neg__(self) -> "ClassFunction":
        return ClassFunction(self.group, tuple(-a for a in self.values))

    def __sub__(self, other) -> "ClassFunction":
        return ClassFunction(self.group, tuple(a - b for a, b in zip(self.values, self._other(other))))

    def __rsub__(self, other) -> "ClassFunction":
        return (-self) + other

    def __mul__(self, other) -> "ClassFunction":
        return ClassFunction(self.group, tuple(a * b for a, b in zip(self.values, self._other(other))))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return other.group is self.group and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def is_rational(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values)

    def is_integral(self) -> bool:
        return all(isinstance(v, Fraction) and v.denominator == 1 for v in self.values)

    def support(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.values) if v)

    def degree(self) -> Scalar:
        return self.values[0]

    def __repr__(self) -> str:
        return f"ClassFunction({self.group.name}, [{', '.join(str(v) for v in self.values)}])"


def lin(X: BurnsideElement) -> ClassFunction:
    """Permutation character: the value at g is the mark of X at <g>."""
    G = X.group
    return ClassFunction(
        G,
        tuple(X.marks[subgroup_class_index(G, G.cyclic(c.representative))] for c in G.conjugacy_classes),
    )


def restrict_cf(chi: ClassFunction, H: FiniteGroup) -> ClassFunction:
    G = chi.group
    return ClassFunction(H, tuple(chi.values[G.class_of[G.index[H.elements[c.representative]]]] for c in H.conjugacy_classes))


def inner_product(chi: ClassFunction, psi: ClassFunction) -> Scalar:
    """(1/|G|) sum_g chi(g) psi(g^-1)."""
    G = chi.group
    if psi.group is not G:
        raise ValueError("class functions on different groups")
    inv = G.inverse_class
    total: Scalar = Fraction(0)
    for i, c in enumerate(G.conjugacy_classes):
        a, b = chi.values[i], psi.values[inv[i]]
        if a and b:
            total = total + c.size * (a * b)
    return simplify(total / G.order)


def tensor_induct(chi: ClassFunction, H: FiniteGroup, rng: random.Random | None = None) -> ClassFunction:
    """Multiplicative induction of a class function from K = chi.group to H.

    At h: the product over <h>-orbits O on H/K of chi(g^-1 h^|O| g) for a
    point gK of O.  With ``rng`` the orbit point and coset element are chosen
    at random, which must not change the result.
    """
    K = chi.group
    if not H.contains_group(K):
        raise ValueError(f"{K.name} is not a subgroup of {H.name}")
    K_in_H = H.indices_of(K.elements)
    cosets = left_cosets(H, K_in_H)
    where = {}
    for n, (_, members) in enumerate(cosets):
        for x in members:
            where[x] = n
    t, inv = H.table, H.inv
    values = []
    for c in H.conjugacy_classes:
        h = c.representative
        seen: set[int] = set()
        value: Scalar = Fraction(1)
        for n in range(len(cosets)):
            if n in seen:
                continue
            orbit = [n]
            cur = t[h][cosets[n][0]]
            while where[cur] != n:
                orbit.append(where[cur])
                cur = t[h][cur]
            seen.update(orbit)
            if rng is None:
                g = cosets[n][0]
            else:
                g = rng.choice(sorted(cosets[rng.choice(orbit)][1]))
            hk = H.power(h, len(orbit))
            k = t[t[inv[g]][hk]][g]
            value = value * chi(K.index[H.elements[k]])
            if not value:
                break
        values.append(value)
    return ClassFunction(H, tuple(values))


def in_rep_ring_P(
    chi: ClassFunction, primes: PrimeSet, tbl: "CharacterTable"
) -> tuple[bool, tuple[Scalar, ...]]:
    """Decompose chi against the irreducibles; True iff every multiplicity is in Z_(P)."""
    coeffs = tuple(inner_product(chi, row) for row in tbl.irreducibles)
    ok = all(isinstance(c, Fraction) and primes.is_local(c) for c in coeffs)
    return ok, coeffs


def mod_p_congruence(chi: ClassFunction, p: int | PrimeSet) -> bool:
    """chi(g) = chi(g_p') mod p for every g.

    With a prime set the congruence is tested modulo every p in the set,
    against the P'-part g_P' rather than the p'-parts.
    """
    primes = PrimeSet([p]) if isinstance(p, int) else PrimeSet(p)
    if not chi.is_integral():
        raise NonIntegerValues("congruences need integer character values")
    G = chi.group
    for c in G.conjugacy_classes:
        g = c.representative
        diff = chi(g) - chi(G.p_parts(g, primes)[1])
        if any(diff % q for q in primes):
            return False
    return True


def generator_constancy(chi: ClassFunction) -> bool:
    """chi(x) = chi(y) whenever x and y generate the same cyclic subgroup."""
    return all(len({chi(x) for x in orbit}) == 1 for orbit in generator_orbits(chi.group))


def lin_kernel_check(G: FiniteGroup, primes: PrimeSet) -> bool:
    """Whether ker(lin) on A_P(G) is exactly the block e_ker * A_P(G).

    e_ker * A_P(G) always lies in the kernel.  Both are saturated sublattices,
    so they agree iff their ranks agree: the kernel has rank equal to the
    number of non-cyclic subgroup classes and the block has rank |supp e_ker|.
    """
    primes = PrimeSet(primes)
    ring = burnside_ring(G, primes)
    _, e_ker = split_cyc_ker(G, primes)
    zero = ClassFunction.constant(G, 0)
    if lin(e_ker) != zero:
        return False
    if any(lin(e_ker * ring.basis(k)) != zero for k in range(ring.rank)):
        return False
    kernel_rank = sum(1 for c in subgroup_classes(G) if not c.is_cyclic)
    block_rank = sum(1 for m in e_ker.marks if m)
    return kernel_rank == block_rank


def values_key(chi: ClassFunction, conductor: int) -> tuple[tuple[Fraction, ...], ...]:
    """All values as coordinate tuples in one cyclotomic field."""
    return tuple(coords(v, conductor) for v in chi.values)
