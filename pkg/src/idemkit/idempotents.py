"""Primitive idempotents of the P-local representation ring.

They are indexed by conjugacy classes of cyclic subgroups C whose order is
prime to P.  The idempotent for C is the indicator of the elements g with
<g_P'> conjugate to C, and it is the linearization of the Dress idempotent
e_C of the Burnside ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .burnside import dress_idempotent, gray_steps
from .charfun import ClassFunction, in_rep_ring_P, lin
from .chartable import CharacterTable
from .cyclotomic import Scalar, coords, simplify
from .errors import CapExceeded, InternalError
from .groups import FiniteGroup
from .lattice import (
    SubgroupClass,
    cyclic_P_perfect_classes,
    generator_orbits,
    subgroup_class_index,
)
from .primes import PrimeSet

DEFAULT_SUBSET_CAP = 12


@dataclass(frozen=True)
class IdempotentRecordR:
    label: SubgroupClass
    primes: PrimeSet
    character: ClassFunction
    support: frozenset[int]
    coefficients: tuple[Fraction, ...] | None = None

    @property
    def group(self) -> FiniteGroup:
        return self.character.group


def support_set(G: FiniteGroup, primes: PrimeSet, C: int | SubgroupClass) -> frozenset[int]:
    """Conjugacy classes of the g with <g_P'> conjugate to C."""
    primes = PrimeSet(primes)
    c = C.index if isinstance(C, SubgroupClass) else C
    out = set()
    for cls in G.conjugacy_classes:
        g_prime = G.p_parts(cls.representative, primes)[1]
        if subgroup_class_index(G, G.cyclic(g_prime)) == c:
            out.add(cls.index)
    return frozenset(out)


def class_idempotent_coefficients(tbl: CharacterTable, k: int) -> tuple[Scalar, ...]:
    """Coefficients chi_V(x^-1) / |C_G(x)| of the class indicator of x = rep of class k."""
    G = tbl.group
    k_inv = G.inverse_class[k]
    cent = G.conjugacy_classes[k].centralizer_order
    return tuple(simplify(chi.values[k_inv] / cent) for chi in tbl.irreducibles)


def brauer_coefficients(G: FiniteGroup, primes: PrimeSet, C: int | SubgroupClass, tbl: CharacterTable) -> tuple[Fraction, ...]:
    """Multiplicities of the irreducibles in the idempotent for C.

    Sums the class-indicator coefficients over every class in the support.
    The result must be rational, P-local and reconstruct the indicator.
    """
    primes = PrimeSet(primes)
    support = sorted(support_set(G, primes, C))
    total: list[Scalar] = [Fraction(0)] * len(tbl)
    for k in support:
        total = [a + b for a, b in zip(total, class_idempotent_coefficients(tbl, k))]
    total = [simplify(t) for t in total]
    if not all(isinstance(t, Fraction) and primes.is_local(t) for t in total):
        raise InternalError(f"idempotent coefficients {total} are not P-local")
    rebuilt = ClassFunction.constant(G, 0)
    for lam, chi in zip(total, tbl.irreducibles):
        if lam:
            rebuilt = rebuilt + chi * lam
    if rebuilt != ClassFunction.indicator(G, support):
        raise InternalError("Brauer coefficients do not reconstruct the support indicator")
    return tuple(total)


def classify_idempotents_R(G: FiniteGroup, primes: PrimeSet, tbl: CharacterTable | None = None) -> list[IdempotentRecordR]:
    """One record per cyclic P-perfect class; coefficients filled in when a table is given."""
    primes = PrimeSet(primes)
    out = []
    for C in cyclic_P_perfect_classes(G, primes):
        character = lin(dress_idempotent(G, primes, C).element)
        support = support_set(G, primes, C)
        if character != ClassFunction.indicator(G, support):
            raise InternalError(f"lin(e_{C.label}) differs from the indicator of its support")
        coeffs = brauer_coefficients(G, primes, C, tbl) if tbl is not None else None
        out.append(IdempotentRecordR(C, primes, character, support, coeffs))
    return out


def indicator_in_ring(G: FiniteGroup, primes: PrimeSet, classes, tbl: CharacterTable) -> bool:
    return in_rep_ring_P(ClassFunction.indicator(G, classes), primes, tbl)[0]


def verify_primitive(rec: IdempotentRecordR, tbl: CharacterTable, cap: int = DEFAULT_SUBSET_CAP) -> bool:
    """True iff no proper nonempty subset of the support has its indicator in R_P(G).

    Walks the subsets in Gray-code order, keeping the running inner products
    with every irreducible as integer coordinate vectors (scaled by |G|).
    """
    G = rec.group
    support = sorted(rec.support)
    if len(support) > cap:
        raise CapExceeded(f"support of {len(support)} classes exceeds subset-search cap {cap}")
    if not support:
        return False
    primes = rec.primes
    e = tbl.conductor
    classes = G.conjugacy_classes
    # contributions[k][i] = |C_k| * chi_i(g_k^-1) in power-basis coordinates
    contributions = []
    for k in support:
        size = classes[k].size
        kinv = G.inverse_class[k]
        row = []
        for chi in tbl.irreducibles:
            row.append([size * c for c in coords(chi.values[kinv], e)])
        contributions.append(row)
    n_irr = len(tbl)
    width = len(contributions[0][0])
    acc = [[Fraction(0)] * width for _ in range(n_irr)]
    full = (1 << len(support)) - 1
    for bit, now_in, mask in gray_steps(len(support)):
        sign = 1 if now_in else -1
        for i in range(n_irr):
            row, add = acc[i], contributions[bit][i]
            for j in range(width):
                if add[j]:
                    row[j] += sign * add[j]
        if mask == full:
            continue
        if all(not any(acc[i][1:]) and primes.is_local(acc[i][0] / G.order) for i in range(n_irr)):
            return False
    return True


def gamma_orbits_of_classes(G: FiniteGroup, classes=None) -> list[frozenset[int]]:
    """Conjugacy classes merged when their elements generate the same cyclic subgroup."""
    parent = list(range(len(G.conjugacy_classes)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for orbit in generator_orbits(G):
        cls = sorted({G.class_of[x] for x in orbit})
        for c in cls[1:]:
            parent[find(c)] = find(cls[0])
    groups: dict[int, set[int]] = {}
    for k in range(len(parent)):
        if classes is None or k in classes:
            groups.setdefault(find(k), set()).add(k)
    return sorted((frozenset(v) for v in groups.values()), key=min)


def gamma_orbit_crosscheck(G: FiniteGroup, primes: PrimeSet) -> bool:
    """Gamma-orbits of P-prime classes match cyclic P-perfect classes via x -> <x>."""
    primes = PrimeSet(primes)
    p_prime = {c.index for c in G.conjugacy_classes if primes.is_P_prime_number(c.element_order)}
    orbits = gamma_orbits_of_classes(G, p_prime)
    targets = {}
    for orb in orbits:
        labels = {subgroup_class_index(G, G.cyclic(G.conjugacy_classes[k].representative)) for k in orb}
        if len(labels) != 1:
            return False
        targets[labels.pop()] = orb
    expected = {c.index for c in cyclic_P_perfect_classes(G, primes)}
    if set(targets) != expected or len(targets) != len(orbits):
        return False
    for c, orb in targets.items():
        derived = {
            k.index
            for k in G.conjugacy_classes
            if G.class_of[G.p_parts(k.representative, primes)[1]] in orb
        }
        if frozenset(derived) != support_set(G, primes, c):
            return False
    return True


def record_to_json(rec: IdempotentRecordR, primitive: bool | None = None) -> dict:
    G = rec.group
    return {
        "label": rec.label.label,
        "generators": [str(G.elements[g]) for g in rec.label.generators],
        "support": [str(G.elements[G.conjugacy_classes[k].representative]) for k in sorted(rec.support)],
        "character": [str(v) for v in rec.character.values],
        "coefficients": None if rec.coefficients is None else [f"{c.numerator}/{c.denominator}" for c in rec.coefficients],
        "primitive": primitive,
    }
