"""Finite permutation groups.

Elements of a :class:`FiniteGroup` are addressed by their position in
``G.elements``; all heavy lifting (multiplication, conjugation, closure) runs
on those integer indices through a lazily built multiplication table.
Different groups talk to each other through the underlying
:class:`Permutation` objects, so a subgroup ``H`` built with
:func:`FiniteGroup.subgroup` can be compared with any other group acting on
the same points.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import CapExceeded, DegreeMismatch, GroupParseError
from .primes import PrimeSet

DEFAULT_ORDER_CAP = 100_000
DEFAULT_LATTICE_CAP = 400


class Permutation:
    """A bijection of ``{0, ..., n-1}``.

    Products compose right to left: ``(g * h)(i) == g(h(i))``.
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> "Permutation":
        p = cls.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for pt in cyc:
                if not 0 <= pt < degree:
                    raise ValueError(f"point {pt} outside 0..{degree - 1}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated in cycle notation")
                seen.add(pt)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                images[a] = b
        return cls._trusted(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse disjoint-cycle notation such as ``"(0 1)(2 3 4)"``; ``"()"`` is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+[\s,]*)*\)\s*)+", text):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = [[int(t) for t in re.findall(r"\d+", body)] for body in re.findall(r"\(([^)]*)\)", text)]
        return cls.from_cycles([c for c in cycles if c], degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other.images) != len(self.images):
            raise DegreeMismatch("cannot compose permutations of different degree")
        img = self.images
        return Permutation._trusted(tuple(img[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._trusted(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, sorted by that point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return element_order(self)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def element_order(g: Permutation) -> int:
    """Least n >= 1 with g**n the identity (lcm of the cycle lengths)."""
    from math import lcm

    return lcm(1, *(len(c) for c in g.cycles()))


def p_part_decomposition(g: Permutation, primes: PrimeSet) -> tuple[Permutation, Permutation]:
    """Split ``g = g_P * g_P'`` into commuting powers of g.

    ``g_P`` has order a P-number and ``g_P'`` has order coprime to P.
    """
    m, n = primes.split(element_order(g))
    return g ** (n * pow(n, -1, m)), g ** (m * pow(m, -1, n))


@dataclass(frozen=True)
class ConjugacyClass:
    index: int
    representative: int
    members: frozenset[int]
    centralizer_order: int
    element_order: int

    @property
    def size(self) -> int:
        return len(self.members)


class FiniteGroup:
    """A finite group of permutations with a deterministic element list.

    Element 0 is always the identity.  Build instances with
    :func:`group_from_generators` or the named constructors below.
    """

    def __init__(self, elements: Sequence[Permutation], generators: Sequence[Permutation], name: str | None = None):
        self.elements: tuple[Permutation, ...] = tuple(elements)
        self.generators: tuple[Permutation, ...] = tuple(generators)
        self.degree = self.elements[0].degree
        self.order = len(self.elements)
        self.index: dict[Permutation, int] = {g: i for i, g in enumerate(self.elements)}
        self.name = name or f"G{self.order}"
        self.lattice_cap = DEFAULT_LATTICE_CAP
        self._memo: dict = {}

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} order={self.order} degree={self.degree}>"

    def __len__(self) -> int:
        return self.order

    @cached_property
    def gen_indices(self) -> tuple[int, ...]:
        return tuple(self.index[g] for g in self.generators)

    @cached_property
    def table(self) -> list[list[int]]:
        idx = self.index
        imgs = [g.images for g in self.elements]
        return [[idx[Permutation._trusted(tuple(a[j] for j in b))] for b in imgs] for a in imgs]

    @cached_property
    def inv(self) -> list[int]:
        return [self.index[g.inverse()] for g in self.elements]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        t = self.table
        return t[t[g][x]][self.inv[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        result, base, t = 0, a, self.table
        while k:
            if k & 1:
                result = t[result][base]
            base = t[base][base]
            k >>= 1
        return result

    @cached_property
    def element_orders(self) -> list[int]:
        out = [0] * self.order
        t = self.table
        for a in range(self.order):
            x, n = a, 1
            while x != 0:
                x = t[x][a]
                n += 1
            out[a] = n
        return out

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.element_orders)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        gens = self.gen_indices
        return all(t[a][b] == t[b][a] for a in gens for b in gens)

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by the given element indices."""
        gens = [g for g in dict.fromkeys(gens) if g != 0]
        seen = {0}
        frontier = [0]
        t = self.table
        while frontier:
            nxt = []
            for x in frontier:
                row = t[x]
                for s in gens:
                    y = row[s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def cyclic(self, a: int) -> frozenset[int]:
        out = [0]
        x = a
        while x != 0:
            out.append(x)
            x = self.table[x][a]
        return frozenset(out)

    def conjugate_subgroup(self, g: int, sub: Iterable[int]) -> frozenset[int]:
        t, gi = self.table, self.inv[g]
        row = t[g]
        return frozenset(t[row[x]][gi] for x in sub)

    @cached_property
    def conjugacy_classes(self) -> list[ConjugacyClass]:
        t, inv = self.table, self.inv
        assigned = [-1] * self.order
        raw = []
        for x in range(self.order):
            if assigned[x] >= 0:
                continue
            members = frozenset(t[t[g][x]][inv[g]] for g in range(self.order))
            for m in members:
                assigned[m] = len(raw)
            raw.append((self.element_orders[x], x, members))
        raw.sort(key=lambda r: (r[0], r[1]))
        return [
            ConjugacyClass(i, rep, members, self.order // len(members), o)
            for i, (o, rep, members) in enumerate(raw)
        ]

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for c in self.conjugacy_classes:
            for m in c.members:
                out[m] = c.index
        return out

    @cached_property
    def inverse_class(self) -> list[int]:
        return [self.class_of[self.inv[c.representative]] for c in self.conjugacy_classes]

    def p_parts(self, a: int, primes: PrimeSet) -> tuple[int, int]:
        """Index form of :func:`p_part_decomposition`."""
        m, n = primes.split(self.element_orders[a])
        return self.power(a, n * pow(n, -1, m)), self.power(a, m * pow(m, -1, n))

    def indices_of(self, perms: Iterable[Permutation]) -> frozenset[int]:
        idx = self.index
        try:
            return frozenset(idx[p] for p in perms)
        except KeyError as exc:
            raise ValueError(f"{exc.args[0]} is not an element of {self.name}") from None

    def perms_of(self, sub: Iterable[int]) -> frozenset[Permutation]:
        return frozenset(self.elements[i] for i in sub)

    def subgroup(self, sub: Iterable[int]) -> "FiniteGroup":
        """The subgroup with the given element indices as a group of its own.

        The result depends only on the set of permutations, so nested
        subgroups built from different ambient groups coincide.
        """
        return _canonical_group(self.perms_of(sub))

    def contains_group(self, other: "FiniteGroup") -> bool:
        return all(g in self.index for g in other.elements)

    def describe(self) -> str:
        from .lattice import structure_label

        return structure_label(self, frozenset(range(self.order)))


def _bfs_elements(gens: Sequence[Permutation], degree: int, order_cap: int) -> list[Permutation]:
    ident = Permutation.identity(degree)
    elements = [ident]
    seen = {ident}
    i = 0
    while i < len(elements):
        x = elements[i]
        for s in gens:
            y = x * s
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > order_cap:
                    raise CapExceeded(f"group closure exceeds order cap {order_cap}")
        i += 1
    return elements


def group_from_generators(
    gens: Sequence[Permutation],
    degree: int | None = None,
    order_cap: int = DEFAULT_ORDER_CAP,
    name: str | None = None,
) -> FiniteGroup:
    """Close ``gens`` under multiplication.

    Elements are listed breadth-first from the identity, multiplying on the
    right by the generators in the given order.
    """
    if order_cap <= 0:
        raise ValueError("order_cap must be positive")
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree is required when there are no generators")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
    return FiniteGroup(_bfs_elements(gens, degree, order_cap), gens, name)


def _greedy_generators(perms: frozenset[Permutation]) -> list[Permutation]:
    ordered = sorted(perms)
    degree = ordered[0].degree
    gens: list[Permutation] = []
    span = {Permutation.identity(degree)}
    for p in ordered:
        if p not in span:
            gens.append(p)
            span = set(_bfs_elements(gens, degree, len(perms)))
            if len(span) == len(perms):
                break
    return gens


@lru_cache(maxsize=None)
def _canonical_group(perms: frozenset[Permutation]) -> FiniteGroup:
    gens = _greedy_generators(perms)
    degree = next(iter(perms)).degree
    elements = _bfs_elements(gens, degree, len(perms))
    if len(elements) != len(perms):
        raise ValueError("element set is not closed under multiplication")
    return FiniteGroup(elements, gens)


# ---------------------------------------------------------------------------
# Named constructors


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    gens = [Permutation(list(range(1, n)) + [0])] if n > 1 else []
    return group_from_generators(gens, degree=n, name=f"C{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n (n >= 2)."""
    if n < 2:
        raise ValueError("dihedral group needs n >= 2")
    if n == 2:
        return group_from_generators(
            [Permutation.parse("(0 1)", 4), Permutation.parse("(2 3)", 4)], name="D2"
        )
    rot = Permutation(list(range(1, n)) + [0])
    ref = Permutation([(-i) % n for i in range(n)])
    return group_from_generators([rot, ref], name=f"D{n}")


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    if n == 1:
        return group_from_generators([], degree=1, name="S1")
    if n == 2:
        return group_from_generators([Permutation([1, 0])], name="S2")
    return group_from_generators(
        [Permutation.parse("(0 1)", n), Permutation.from_cycles([range(n)], n)], name=f"S{n}"
    )


def alternating_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("alternating group needs n >= 1")
    if n < 3:
        return group_from_generators([], degree=n, name=f"A{n}")
    gens = [Permutation.from_cycles([(i, i + 1, i + 2)], n) for i in range(n - 2)]
    return group_from_generators(gens, name=f"A{n}")


def quaternion_group() -> FiniteGroup:
    """Q8 in its regular representation on 8 points."""
    # elements 0..7 = 1, i, j, k, -1, -i, -j, -k
    def mult(a: int, b: int) -> int:
        units = [(0, 1), (1, 1), (2, 1), (3, 1), (0, -1), (1, -1), (2, -1), (3, -1)]
        qa, sa = units[a]
        qb, sb = units[b]
        table = {
            (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
            (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
            (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
            (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
        }
        q, s = table[qa, qb]
        return units.index((q, s * sa * sb))

    gens = [Permutation([mult(g, x) for x in range(8)]) for g in (1, 2)]
    return group_from_generators(gens, name="Q8")


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    """Direct product acting on the disjoint union of the point sets."""
    total = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for grp in groups:
        for s in grp.generators:
            images = list(range(total))
            for i, j in enumerate(s.images):
                images[offset + i] = offset + j
            gens.append(Permutation(images))
        offset += grp.degree
    return group_from_generators(gens, degree=total, name="x".join(g.name for g in groups))


_BUILTIN = re.compile(r"^(C|S|A|D)(\d+)$|^Q8$")


def builtin_group(name: str) -> FiniteGroup:
    """Named group: ``C<n>``, ``S<n>``, ``A<n>``, ``D<n>`` (order 2n), ``Q8``, products ``AxB``."""
    parts = name.split("x")
    if len(parts) > 1:
        return direct_product(*(builtin_group(p) for p in parts))
    m = _BUILTIN.match(name)
    if not m:
        raise ValueError(f"unknown builtin group {name!r}")
    if name == "Q8":
        return quaternion_group()
    kind, n = m.group(1), int(m.group(2))
    return {"C": cyclic_group, "S": symmetric_group, "A": alternating_group, "D": dihedral_group}[kind](n)


def parse_group_text(text: str, name: str | None = None, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Read the plain-text group format.

    First non-comment line ``degree <n>``, then one generator per line in
    disjoint-cycle notation.  ``#`` starts a comment.
    """
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m:
                raise GroupParseError(f"expected 'degree <n>', got {line!r}", lineno)
            degree = int(m.group(1))
            if degree < 1:
                raise GroupParseError("degree must be positive", lineno)
            continue
        try:
            gens.append(Permutation.parse(line, degree))
        except ValueError as exc:
            raise GroupParseError(str(exc), lineno) from None
    if degree is None:
        raise GroupParseError("missing 'degree <n>' header", None)
    return group_from_generators(gens, degree=degree, order_cap=order_cap, name=name)


def format_group_text(G: FiniteGroup) -> str:
    lines = [f"# {G.name}, order {G.order}", f"degree {G.degree}"]
    lines += [str(g) for g in G.generators]
    return "\n".join(lines) + "\n"
