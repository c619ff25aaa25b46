"""Subgroups up to conjugacy, residuals, double cosets.

Subgroups of a group ``G`` are frozensets of element indices of ``G``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace

from .errors import CapExceeded
from .groups import FiniteGroup
from .primes import PrimeSet, prime_factors


@dataclass(frozen=True)
class SubgroupClass:
    index: int
    representative: frozenset[int]
    order: int
    class_size: int
    normalizer_order: int
    generators: tuple[int, ...]
    is_cyclic: bool
    label: str
    conjugates: tuple[frozenset[int], ...] = field(repr=False, compare=False)


def _memo(G: FiniteGroup, key, build):
    try:
        return G._memo[key]
    except KeyError:
        value = G._memo[key] = build()
        return value


def _small_generators(G: FiniteGroup, sub: frozenset[int]) -> tuple[int, ...]:
    gens: list[int] = []
    span = frozenset([0])
    for x in sorted(sub):
        if x not in span:
            gens.append(x)
            span = G.closure(gens)
            if len(span) == len(sub):
                break
    return tuple(gens)


def _conjugates(G: FiniteGroup, sub: frozenset[int]) -> dict[frozenset[int], int]:
    """Map each conjugate ``g sub g^-1`` to the least g producing it."""
    out: dict[frozenset[int], int] = {}
    for g in range(G.order):
        c = G.conjugate_subgroup(g, sub)
        if c not in out:
            out[c] = g
    return out


def subgroup_classes(G: FiniteGroup, cap: int | None = None) -> list[SubgroupClass]:
    """All subgroups of G up to conjugacy, by the cyclic extension method.

    Ascending by order, then by the sorted index tuple of the canonical
    representative (the conjugate whose sorted index tuple is least).
    """
    cap = G.lattice_cap if cap is None else cap
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds lattice cap {cap}")
    return _memo(G, "subgroup_classes", lambda: _build_classes(G))


def _build_classes(G: FiniteGroup) -> list[SubgroupClass]:
    cyclics = sorted({G.cyclic(a) for a in range(G.order)}, key=lambda s: (len(s), sorted(s)))
    cyclic_gen = {}
    for a in range(G.order):
        cyclic_gen.setdefault(G.cyclic(a), a)

    known: set[frozenset[int]] = set()
    reps: list[tuple[frozenset[int], tuple[int, ...], dict]] = []

    def register(sub: frozenset[int], gens: tuple[int, ...]) -> bool:
        if sub in known:
            return False
        conj = _conjugates(G, sub)
        known.update(conj)
        reps.append((sub, gens, conj))
        return True

    frontier = []
    for z in cyclics:
        gens = (cyclic_gen[z],) if len(z) > 1 else ()
        if register(z, gens):
            frontier.append(reps[-1])
    while frontier:
        nxt = []
        for sub, gens, _ in frontier:
            for z in cyclics:
                if z <= sub:
                    continue
                a = cyclic_gen[z]
                joined = G.closure(gens + (a,))
                if register(joined, gens + (a,)):
                    nxt.append(reps[-1])
        frontier = nxt

    classes = []
    for sub, gens, conj in reps:
        canon = min(conj, key=lambda s: sorted(s))
        canon_gens = _small_generators(G, canon)
        classes.append((len(sub), tuple(sorted(canon)), canon, canon_gens, conj))
    classes.sort(key=lambda c: (c[0], c[1]))

    out = []
    for i, (order, _, canon, gens, conj) in enumerate(classes):
        cyc = len(gens) <= 1
        conjugates = tuple(sorted(conj, key=lambda s: sorted(s)))
        out.append(
            SubgroupClass(
                index=i,
                representative=canon,
                order=order,
                class_size=len(conj),
                normalizer_order=G.order // len(conj),
                generators=gens,
                is_cyclic=cyc or any(G.element_orders[x] == order for x in canon),
                label=structure_label(G, canon),
                conjugates=conjugates,
            )
        )
    return _disambiguate(out)


def _disambiguate(classes: list[SubgroupClass]) -> list[SubgroupClass]:
    counts = Counter(c.label for c in classes)
    seen: Counter = Counter()
    out = []
    for c in classes:
        if counts[c.label] > 1:
            suffix = chr(ord("a") + seen[c.label])
            seen[c.label] += 1
            c = replace(c, label=c.label + suffix)
        out.append(c)
    return out


def class_lookup(G: FiniteGroup) -> dict[frozenset[int], int]:
    """Every subgroup of G mapped to the index of its conjugacy class."""

    def build():
        out = {}
        for c in subgroup_classes(G):
            for s in c.conjugates:
                out[s] = c.index
        return out

    return _memo(G, "class_lookup", build)


def subgroup_class_index(G: FiniteGroup, sub: frozenset[int]) -> int:
    try:
        return class_lookup(G)[frozenset(sub)]
    except KeyError:
        raise ValueError("not a subgroup of G") from None


def class_by_label(G: FiniteGroup, label: str) -> SubgroupClass:
    for c in subgroup_classes(G):
        if c.label == label:
            return c
    raise KeyError(label)


def all_subgroups(G: FiniteGroup) -> list[frozenset[int]]:
    return [s for c in subgroup_classes(G) for s in c.conjugates]


def normalizer(G: FiniteGroup, sub: frozenset[int]) -> frozenset[int]:
    return frozenset(g for g in range(G.order) if G.conjugate_subgroup(g, sub) == sub)


# ---------------------------------------------------------------------------
# Structure labels (names only; never used to decide anything)


def _abelian_invariants(G: FiniteGroup, sub: frozenset[int]) -> list[int]:
    n = len(sub)
    orders = Counter(G.element_orders[x] for x in sub)
    factors: list[list[int]] = []
    for p in prime_factors(n):
        a = 0
        while n % p ** (a + 1) == 0:
            a += 1
        logs = [0]
        for k in range(1, a + 1):
            cnt = sum(v for o, v in orders.items() if (p**k) % o == 0)
            e = 0
            while p ** (e + 1) <= cnt:
                e += 1
            logs.append(e)
        conj = [logs[k] - logs[k - 1] for k in range(1, a + 1)]
        parts = [sum(1 for c in conj if c >= i) for i in range(1, (conj[0] if conj else 0) + 1)]
        factors.append([p**e for e in sorted(parts, reverse=True)])
    width = max((len(f) for f in factors), default=0)
    inv = []
    for i in range(width):
        d = 1
        for f in factors:
            if i < len(f):
                d *= f[i]
        inv.append(d)
    return sorted(inv)


def structure_label(G: FiniteGroup, sub: frozenset[int]) -> str:
    n = len(sub)
    if n == 1:
        return "1"
    orders = Counter(G.element_orders[x] for x in sub)
    if orders.get(n):
        return f"C{n}"
    t = G.table
    elems = list(sub)
    abelian = all(t[a][b] == t[b][a] for a in elems for b in elems)
    if abelian:
        return "x".join(f"C{d}" for d in _abelian_invariants(G, sub))
    invol = orders.get(2, 0)
    half = n // 2
    if n % 2 == 0 and orders.get(half) and invol == (half if half % 2 else half + 1):
        return "S3" if n == 6 else f"D{half}"
    if n == 8 and invol == 1:
        return "Q8"
    if n == 12 and invol == 3 and orders.get(3) == 8:
        return "A4"
    if n == 12 and invol == 1:
        return "Dic3"
    if n == 24 and invol == 9 and orders.get(4) == 6:
        return "S4"
    if n == 60 and invol == 15 and orders.get(5) == 24:
        return "A5"
    return f"G{n}"


# ---------------------------------------------------------------------------
# Derived series and residuals


def commutator_subgroup(G: FiniteGroup, sub: frozenset[int]) -> frozenset[int]:
    t, inv = G.table, G.inv
    elems = sorted(sub)
    comms = {t[t[a][b]][t[inv[a]][inv[b]]] for a in elems for b in elems}
    return G.closure(sorted(comms))


def is_solvable(G: FiniteGroup, sub: frozenset[int] | None = None) -> bool:
    """True iff the derived series of ``sub`` (default all of G) reaches 1."""
    cur = frozenset(range(G.order)) if sub is None else frozenset(sub)
    while len(cur) > 1:
        nxt = commutator_subgroup(G, cur)
        if nxt == cur:
            return False
        cur = nxt
    return True


def p_residual(G: FiniteGroup, sub: frozenset[int] | None, primes: PrimeSet) -> frozenset[int]:
    """O^P(sub): least normal subgroup with quotient a solvable P-group.

    Iterates N -> [N, N] * <x_P' : x in N> until it stabilises.
    """
    cur = frozenset(range(G.order)) if sub is None else frozenset(sub)
    while True:
        derived = commutator_subgroup(G, cur)
        pprime = {G.p_parts(x, primes)[1] for x in cur}
        nxt = G.closure(sorted(derived | pprime))
        if nxt == cur:
            return cur
        cur = nxt


def is_P_perfect(G: FiniteGroup, sub: frozenset[int] | None, primes: PrimeSet) -> bool:
    cur = frozenset(range(G.order)) if sub is None else frozenset(sub)
    return p_residual(G, cur, primes) == cur


def residual_classes(G: FiniteGroup, primes: PrimeSet) -> list[int]:
    """For each subgroup class (H), the class index of O^P(H)."""
    primes = primes.relevant(G.order)
    key = ("residual_classes", primes)

    def build():
        return [subgroup_class_index(G, p_residual(G, c.representative, primes)) for c in subgroup_classes(G)]

    return _memo(G, key, build)


def P_perfect_classes(G: FiniteGroup, primes: PrimeSet) -> list[SubgroupClass]:
    res = residual_classes(G, primes)
    return [c for c in subgroup_classes(G) if res[c.index] == c.index]


def cyclic_P_perfect_classes(G: FiniteGroup, primes: PrimeSet) -> list[SubgroupClass]:
    """Classes of cyclic subgroups whose order has no prime factor in P."""
    return [c for c in subgroup_classes(G) if c.is_cyclic and primes.is_P_prime_number(c.order)]


# ---------------------------------------------------------------------------
# Cosets and orbits


def double_cosets(G: FiniteGroup, A: frozenset[int], B: frozenset[int], H: frozenset[int] | None = None) -> list[int]:
    """One representative (least index) per double coset A h B inside H."""
    H = frozenset(range(G.order)) if H is None else H
    t = G.table
    covered: set[int] = set()
    reps = []
    for h in sorted(H):
        if h in covered:
            continue
        reps.append(h)
        for a in A:
            ah = t[a][h]
            row = t[ah]
            covered.update(row[b] for b in B)
    return reps


def left_cosets(G: FiniteGroup, K: frozenset[int], H: frozenset[int] | None = None) -> list[tuple[int, frozenset[int]]]:
    """Left cosets hK inside H as (least-index representative, member set)."""
    H = frozenset(range(G.order)) if H is None else H
    t = G.table
    seen: set[int] = set()
    out = []
    for h in sorted(H):
        if h in seen:
            continue
        coset = frozenset(t[h][k] for k in K)
        seen |= coset
        out.append((h, coset))
    return out


def generator_orbits(G: FiniteGroup) -> list[frozenset[int]]:
    """Partition of G by the relation <x> = <y>, ordered by least member."""
    blocks: dict[frozenset[int], list[int]] = {}
    for a in range(G.order):
        blocks.setdefault(G.cyclic(a), []).append(a)
    return sorted((frozenset(v) for v in blocks.values()), key=min)


def is_cyclic_subgroup(G: FiniteGroup, sub: frozenset[int]) -> bool:
    return any(G.element_orders[x] == len(sub) for x in sub)
