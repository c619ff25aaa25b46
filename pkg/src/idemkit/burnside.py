"""P-local Burnside rings, computed in ghost (mark) coordinates.

Every :class:`BurnsideElement` carries both its coefficients in the basis of
transitive G-sets ``[G/K]`` and its mark vector ``(phi^H)_H``.  Ring
operations are pointwise on marks; coefficients are recovered through the
table of marks and certify membership in ``A(G) (x) Z_(P)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import CapExceeded, InternalError, NotPLocal, NotPPerfect
from .groups import FiniteGroup
from .lattice import (
    SubgroupClass,
    P_perfect_classes,
    double_cosets,
    residual_classes,
    subgroup_class_index,
    subgroup_classes,
)
from .primes import PrimeSet


@dataclass(frozen=True)
class TableOfMarks:
    group: FiniteGroup
    classes: tuple[SubgroupClass, ...]
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, kh: tuple[int, int]) -> int:
        k, h = kh
        return self.entries[k][h]

    def __len__(self) -> int:
        return len(self.classes)

    @cached_property
    def inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        """M^-1, so that coefficients = marks . M^-1 (row vectors)."""
        n = len(self.classes)
        M = self.entries
        inv = [[Fraction(0)] * n for _ in range(n)]
        # M is lower triangular: M[k][h] = 0 for h > k
        for j in range(n):
            # solve M x = e_j column-wise: x[i] for i from 0 upward
            for i in range(n):
                s = Fraction(1 if i == j else 0) - sum((M[i][l] * inv[l][j] for l in range(i)), Fraction(0))
                inv[i][j] = s / M[i][i]
        return tuple(tuple(r) for r in inv)


def table_of_marks(G: FiniteGroup) -> TableOfMarks:
    """entry(K, H) = |(G/K)^H| over subgroup classes in lattice order."""
    try:
        return G._memo["table_of_marks"]
    except KeyError:
        pass
    classes = subgroup_classes(G)
    n = len(classes)
    rows = []
    for K in classes:
        Krep = K.representative
        row = []
        for H in classes:
            if H.order > K.order or K.order % H.order:
                row.append(0)
                continue
            inside = sum(1 for c in H.conjugates if c <= Krep)
            row.append(inside * H.normalizer_order // K.order)
        rows.append(tuple(row))
    tom = TableOfMarks(G, tuple(classes), tuple(rows))
    G._memo["table_of_marks"] = tom
    return tom


class BurnsideRing:
    """``A(G) (x) Z_(P)``; obtain instances through :func:`burnside_ring`."""

    def __init__(self, group: FiniteGroup, primes: PrimeSet):
        self.group = group
        self.primes = PrimeSet(primes)
        self.table = table_of_marks(group)

    def __repr__(self) -> str:
        return f"<BurnsideRing {self.group.name} P={self.primes}>"

    @property
    def rank(self) -> int:
        return len(self.table)

    def coeffs_of_marks(self, marks: Sequence) -> tuple[Fraction, ...]:
        inv = self.table.inverse
        n = self.rank
        out = []
        for j in range(n):
            s = Fraction(0)
            for i in range(j, n):
                if marks[i]:
                    s += marks[i] * inv[i][j]
            out.append(s)
        return tuple(out)

    def marks_of_coeffs(self, coeffs: Sequence) -> tuple[Fraction, ...]:
        M = self.table.entries
        n = self.rank
        return tuple(
            sum((coeffs[k] * M[k][h] for k in range(h, n) if coeffs[k]), Fraction(0)) for h in range(n)
        )

    def from_marks(self, marks: Sequence) -> "BurnsideElement":
        """Pull a ghost vector back to A_P(G); raises NotPLocal if it is not there."""
        if len(marks) != self.rank:
            raise ValueError(f"expected {self.rank} marks, got {len(marks)}")
        marks = tuple(Fraction(m) for m in marks)
        coeffs = self.coeffs_of_marks(marks)
        bad = [c for c in coeffs if not self.primes.is_local(c)]
        if bad:
            raise NotPLocal(f"coefficient {bad[0]} is not in Z_(P) for P = {self.primes}")
        return BurnsideElement(self, coeffs, marks)

    def from_coeffs(self, coeffs: Sequence) -> "BurnsideElement":
        coeffs = tuple(Fraction(c) for c in coeffs)
        for c in coeffs:
            if not self.primes.is_local(c):
                raise NotPLocal(f"coefficient {c} is not in Z_(P) for P = {self.primes}")
        return BurnsideElement(self, coeffs, self.marks_of_coeffs(coeffs))

    def basis(self, k: int | SubgroupClass) -> "BurnsideElement":
        """The transitive G-set [G/K]."""
        k = k.index if isinstance(k, SubgroupClass) else k
        coeffs = [0] * self.rank
        coeffs[k] = 1
        return self.from_coeffs(coeffs)

    def one(self) -> "BurnsideElement":
        return self.from_marks([1] * self.rank)

    def zero(self) -> "BurnsideElement":
        return self.from_marks([0] * self.rank)

    def is_local_marks(self, marks: Sequence) -> bool:
        return all(self.primes.is_local(c) for c in self.coeffs_of_marks(marks))


@lru_cache(maxsize=None)
def burnside_ring(G: FiniteGroup, primes: PrimeSet = PrimeSet()) -> BurnsideRing:
    return BurnsideRing(G, PrimeSet(primes))


@dataclass(frozen=True, eq=False)
class BurnsideElement:
    ring: BurnsideRing
    coeffs: tuple[Fraction, ...]
    marks: tuple[Fraction, ...]

    @property
    def group(self) -> FiniteGroup:
        return self.ring.group

    @property
    def prime_set(self) -> PrimeSet:
        return self.ring.primes

    def _check(self, other: "BurnsideElement") -> None:
        if other.ring.group is not self.ring.group or other.ring.primes != self.ring.primes:
            raise ValueError("elements live in different Burnside rings")

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check(other)
        return BurnsideElement(
            self.ring,
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            tuple(a + b for a, b in zip(self.marks, other.marks)),
        )

    def __neg__(self) -> "BurnsideElement":
        return BurnsideElement(self.ring, tuple(-a for a in self.coeffs), tuple(-a for a in self.marks))

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        return self + (-other)

    def __mul__(self, other) -> "BurnsideElement":
        if isinstance(other, (int, Fraction)):
            return self.ring.from_coeffs([c * other for c in self.coeffs])
        self._check(other)
        return self.ring.from_marks([a * b for a, b in zip(self.marks, other.marks)])

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BurnsideElement":
        return self.ring.from_marks([m**k for m in self.marks])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return other.ring.group is self.ring.group and self.marks == other.marks

    def __hash__(self) -> int:
        return hash(self.marks)

    def is_zero(self) -> bool:
        return not any(self.marks)

    def is_idempotent(self) -> bool:
        return all(m * m == m for m in self.marks)

    def mark(self, H: int | SubgroupClass) -> Fraction:
        return self.marks[H.index if isinstance(H, SubgroupClass) else H]

    def __repr__(self) -> str:
        labels = [c.label for c in self.ring.table.classes]
        terms = [f"{c}[{l}]" for c, l in zip(self.coeffs, labels) if c]
        return f"<{self.group.name} {' + '.join(terms) or '0'}>"


def mark(X: BurnsideElement, H: int | SubgroupClass) -> Fraction:
    return X.mark(H)


# ---------------------------------------------------------------------------
# Dress idempotents


@dataclass(frozen=True)
class IdempotentRecordA:
    label: SubgroupClass
    element: BurnsideElement

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, m in enumerate(self.element.marks) if m)


def dress_idempotent(G: FiniteGroup, primes: PrimeSet, L: int | SubgroupClass) -> IdempotentRecordA:
    """e_L: mark 1 at H exactly when O^P(H) is conjugate to L."""
    primes = PrimeSet(primes)
    classes = subgroup_classes(G)
    Lc = classes[L.index if isinstance(L, SubgroupClass) else L]
    res = residual_classes(G, primes)
    if res[Lc.index] != Lc.index:
        raise NotPPerfect(f"{Lc.label} is not P-perfect for P = {primes}")
    marks = [1 if res[h] == Lc.index else 0 for h in range(len(classes))]
    ring = burnside_ring(G, primes)
    try:
        elem = ring.from_marks(marks)
    except NotPLocal as exc:
        raise InternalError(f"Dress idempotent e_{Lc.label} failed to be P-local: {exc}") from exc
    return IdempotentRecordA(Lc, elem)


def all_dress_idempotents(G: FiniteGroup, primes: PrimeSet) -> list[IdempotentRecordA]:
    return [dress_idempotent(G, primes, L) for L in P_perfect_classes(G, primes)]


def gray_steps(n: int):
    """Walk the nonempty subsets of range(n) in Gray-code order.

    Yields (bit flipped, bit now set, subset mask).
    """
    mask = 0
    for i in range(1, 1 << n):
        bit = (i & -i).bit_length() - 1
        mask ^= 1 << bit
        yield bit, bool(mask >> bit & 1), mask


def is_primitive_A(record: IdempotentRecordA, cap: int = 14) -> bool:
    """No proper nonempty 0/1 sub-indicator of the support lies in A_P(G).

    Exhaustive over subsets of the support; raises CapExceeded above ``cap``.
    """
    ring = record.element.ring
    support = sorted(record.support)
    if len(support) > cap:
        raise CapExceeded(f"support of {len(support)} classes exceeds subset-search cap {cap}")
    inv = ring.table.inverse
    primes = ring.primes
    n = ring.rank
    acc = [Fraction(0)] * n
    full = (1 << len(support)) - 1
    for bit, now_in, mask in gray_steps(len(support)):
        row = inv[support[bit]]
        sign = 1 if now_in else -1
        for j in range(n):
            if row[j]:
                acc[j] += sign * row[j]
        if mask == full:
            continue
        if all(primes.is_local(c) for c in acc):
            return False
    return True


# ---------------------------------------------------------------------------
# Mackey and Tambara structure


def _class_map(small: FiniteGroup, big: FiniteGroup) -> list[int]:
    """For each subgroup class of ``small``, the class in ``big`` of its representative."""
    key = ("class_map", id(small))
    memo = big._memo
    if key in memo and memo[key][0] is small:
        return memo[key][1]
    out = []
    for c in subgroup_classes(small):
        sub = big.indices_of(small.perms_of(c.representative))
        out.append(subgroup_class_index(big, sub))
    memo[key] = (small, out)
    return out


def restrict(X: BurnsideElement, H: FiniteGroup) -> BurnsideElement:
    """Res^G_H: the mark at K <= H is the mark of X at K viewed in G."""
    G = X.group
    if not G.contains_group(H):
        raise ValueError(f"{H.name} is not a subgroup of {G.name}")
    cmap = _class_map(H, G)
    return burnside_ring(H, X.prime_set).from_marks([X.marks[j] for j in cmap])


def transfer(X: BurnsideElement, H: FiniteGroup) -> BurnsideElement:
    """Additive induction T_K^H: [K/J] -> [H/J]."""
    K = X.group
    if not H.contains_group(K):
        raise ValueError(f"{K.name} is not a subgroup of {H.name}")
    cmap = _class_map(K, H)
    ring = burnside_ring(H, X.prime_set)
    coeffs = [Fraction(0)] * ring.rank
    for j, c in enumerate(X.coeffs):
        coeffs[cmap[j]] += c
    return ring.from_coeffs(coeffs)


def norm_marks(X: BurnsideElement, H: FiniteGroup) -> tuple[Fraction, ...]:
    """Marks of the coinduction norm N_K^H X.

    At L <= H: the product over double cosets K h L of phi^{K cap hLh^-1}(X).
    """
    K = X.group
    if not H.contains_group(K):
        raise ValueError(f"{K.name} is not a subgroup of {H.name}")
    K_in_H = H.indices_of(K.elements)
    to_K = {H.index[p]: K.index[p] for p in K.elements}
    t, inv = H.table, H.inv
    out = []
    for L in subgroup_classes(H):
        value = Fraction(1)
        for h in double_cosets(H, K_in_H, L.representative):
            hi = inv[h]
            conj = frozenset(t[t[h][l]][hi] for l in L.representative)
            inter = frozenset(to_K[x] for x in conj & K_in_H)
            value *= X.marks[subgroup_class_index(K, inter)]
            if not value:
                break
        out.append(value)
    return tuple(out)


def norm_coinduce(X: BurnsideElement, H: FiniteGroup) -> BurnsideElement:
    """Multiplicative induction N_K^H, the Burnside-ring shadow of map_K(H, -)."""
    marks = norm_marks(X, H)
    try:
        return burnside_ring(H, X.prime_set).from_marks(marks)
    except NotPLocal as exc:
        raise InternalError(f"norm left A_P: {exc}") from exc


def split_cyc_ker(G: FiniteGroup, primes: PrimeSet) -> tuple[BurnsideElement, BurnsideElement]:
    """(e_cyc, e_ker): sums of the Dress idempotents with cyclic / non-cyclic label."""
    ring = burnside_ring(G, PrimeSet(primes))
    e_cyc = ring.zero()
    for rec in all_dress_idempotents(G, primes):
        if rec.label.is_cyclic:
            e_cyc = e_cyc + rec.element
    return e_cyc, ring.one() - e_cyc


# ---------------------------------------------------------------------------
# JSON


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def class_descriptors(G: FiniteGroup) -> list[dict]:
    return [
        {
            "label": c.label,
            "order": c.order,
            "class_size": c.class_size,
            "generators": [str(G.elements[g]) for g in c.generators],
        }
        for c in subgroup_classes(G)
    ]


def marks_to_json(tom: TableOfMarks) -> dict:
    G = tom.group
    return {"group": G.name, "classes": class_descriptors(G), "marks": [list(r) for r in tom.entries]}


def marks_from_json(G: FiniteGroup, data: dict) -> TableOfMarks:
    """Re-ingest a table of marks, checking it against the class list of G."""
    if data["classes"] != class_descriptors(G):
        raise ValueError("subgroup classes do not match the group")
    entries = tuple(tuple(int(x) for x in row) for row in data["marks"])
    return TableOfMarks(G, tuple(subgroup_classes(G)), entries)


def element_to_json(X: BurnsideElement) -> dict:
    return {
        "primes": sorted(X.prime_set),
        "coeffs": [frac_str(c) for c in X.coeffs],
        "marks": [frac_str(m) for m in X.marks],
    }


def element_from_json(G: FiniteGroup, data: dict) -> BurnsideElement:
    ring = burnside_ring(G, PrimeSet(data["primes"]))
    X = ring.from_coeffs([Fraction(c) for c in data["coeffs"]])
    if [frac_str(m) for m in X.marks] != data["marks"]:
        raise ValueError("marks and coefficients are inconsistent")
    return X
