"""Which norms survive on each idempotent block.

A site is a pair K <= H of subgroups of G, taken up to simultaneous
conjugacy.  For a cyclic P-perfect C the block of e_C admits the norm N_K^H
exactly when every G-conjugate of C inside H lies in K; this is checked
against the division relation N_K^H Res_K(x) * Res_H(x) = Res_H(x) both in
the Burnside ring (x = e_C) and in the representation ring (x = lin e_C).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .burnside import (
    all_dress_idempotents,
    burnside_ring,
    dress_idempotent,
    norm_coinduce,
    restrict,
)
from .charfun import ClassFunction, in_rep_ring_P, lin, restrict_cf, tensor_induct
from .chartable import CharacterTable, character_table
from .cyclotomic import coords
from .groups import FiniteGroup
from .lattice import (
    SubgroupClass,
    _memo,
    all_subgroups,
    cyclic_P_perfect_classes,
    subgroup_class_index,
    subgroup_classes,
)
from .primes import PrimeSet


@dataclass(frozen=True)
class NormSite:
    H: SubgroupClass
    K: frozenset[int]
    K_label: str

    @property
    def label(self) -> str:
        return f"{self.H.label}/{self.K_label}"


def sites(G: FiniteGroup) -> list[NormSite]:
    """All K <= H up to simultaneous conjugacy, ordered by H, then |K|, then K."""

    def build():
        out = []
        for Hc in subgroup_classes(G):
            H = Hc.representative
            HG = G.subgroup(H)
            N = [g for g in range(G.order) if G.conjugate_subgroup(g, H) == H]
            seen: set[frozenset[int]] = set()
            found = []
            for Kc in subgroup_classes(HG):
                for Kh in Kc.conjugates:
                    K = G.indices_of(HG.perms_of(Kh))
                    if K in seen:
                        continue
                    orbit = {G.conjugate_subgroup(n, K) for n in N}
                    seen |= orbit
                    canon = min(orbit, key=sorted)
                    found.append((len(canon), tuple(sorted(canon)), canon, Kc.label))
            found.sort(key=lambda f: (f[0], f[1]))
            out.extend(NormSite(Hc, canon, label) for _, _, canon, label in found)
        return out

    return _memo(G, "norm_sites", build)


def condition_e(G: FiniteGroup, C: SubgroupClass, K: frozenset[int], H: frozenset[int]) -> bool:
    """Every G-conjugate of C that lies in H lies in K."""
    return all(c <= K for c in C.conjugates if c <= H)


def division_relation_A(G: FiniteGroup, primes: PrimeSet, C: SubgroupClass, K: frozenset[int], H: frozenset[int]) -> bool:
    x = dress_idempotent(G, primes, C).element
    HG, KG = G.subgroup(H), G.subgroup(K)
    res_H = restrict(x, HG)
    return norm_coinduce(restrict(x, KG), HG) * res_H == res_H


def division_relation_R(G: FiniteGroup, primes: PrimeSet, C: SubgroupClass, K: frozenset[int], H: frozenset[int]) -> bool:
    chi = lin(dress_idempotent(G, primes, C).element)
    HG, KG = G.subgroup(H), G.subgroup(K)
    res_H = restrict_cf(chi, HG)
    return tensor_induct(restrict_cf(chi, KG), HG) * res_H == res_H


# ---------------------------------------------------------------------------
# Indexing systems


@dataclass(frozen=True)
class IndexingSystem:
    """For each subgroup class H of G (by index), the admissible K as classes of H's own lattice."""

    group: FiniteGroup
    name: str
    admissible: dict[int, frozenset[int]] = field(hash=False)

    def is_admissible_rep(self, h: int, k: int) -> bool:
        return k in self.admissible[h]

    def is_admissible(self, K: frozenset[int], H: frozenset[int]) -> bool:
        """Admissibility of H/K for arbitrary subgroups K <= H of G."""
        G = self.group
        h = subgroup_class_index(G, H)
        g = _transporters(G)[frozenset(H)]
        rep = subgroup_classes(G)[h].representative
        HG = G.subgroup(rep)
        moved = G.conjugate_subgroup(g, K)
        return subgroup_class_index(HG, HG.indices_of(G.perms_of(moved))) in self.admissible[h]

    def is_complete(self) -> bool:
        G = self.group
        return all(
            len(adm) == len(subgroup_classes(G.subgroup(subgroup_classes(G)[h].representative)))
            for h, adm in self.admissible.items()
        )

    def to_json(self) -> dict:
        G = self.group
        out = {}
        for Hc in subgroup_classes(G):
            HG = G.subgroup(Hc.representative)
            out[Hc.label] = [c.label for c in subgroup_classes(HG) if c.index in self.admissible[Hc.index]]
        return {"group": G.name, "system": self.name, "admissible": out}


def _transporters(G: FiniteGroup) -> dict[frozenset[int], int]:
    """Each subgroup S mapped to some g with g S g^-1 equal to its class representative."""

    def build():
        out: dict[frozenset[int], int] = {}
        for c in subgroup_classes(G):
            for g in range(G.order):
                S = G.conjugate_subgroup(g, c.representative)
                out.setdefault(S, G.inv[g])
        return out

    return _memo(G, "transporters", build)


def _build_system(G: FiniteGroup, name: str, rule) -> IndexingSystem:
    admissible = {}
    for Hc in subgroup_classes(G):
        HG = G.subgroup(Hc.representative)
        ok = set()
        for Kc in subgroup_classes(HG):
            K = G.indices_of(HG.perms_of(Kc.representative))
            if rule(K, Hc.representative):
                ok.add(Kc.index)
        admissible[Hc.index] = frozenset(ok)
    return IndexingSystem(G, name, admissible)


def indexing_system(G: FiniteGroup, C: SubgroupClass) -> IndexingSystem:
    """I_C: H/K admissible iff every G-conjugate of C inside H lies in K."""
    return _build_system(G, f"I_{C.label}", lambda K, H: condition_e(G, C, K, H))


def indexing_system_cyc(G: FiniteGroup, primes: PrimeSet) -> IndexingSystem:
    """Intersection of I_C over the cyclic P-perfect classes C."""
    primes = PrimeSet(primes)
    systems = [indexing_system(G, C) for C in cyclic_P_perfect_classes(G, primes)]
    admissible = {}
    for Hc in subgroup_classes(G):
        sets = [s.admissible[Hc.index] for s in systems]
        admissible[Hc.index] = frozenset.intersection(*sets)
    return IndexingSystem(G, "I_cyc", admissible)


def indexing_system_cyc_direct(G: FiniteGroup, primes: PrimeSet) -> IndexingSystem:
    """I_cyc from the criterion: every cyclic P-perfect subgroup of H lies in K."""
    primes = PrimeSet(primes)
    cyclic = [s for C in cyclic_P_perfect_classes(G, primes) for s in C.conjugates]
    return _build_system(G, "I_cyc", lambda K, H: all(c <= K for c in cyclic if c <= H))


def axioms_check(I: IndexingSystem) -> bool:
    """Sanity axioms for an indexing system.

    H/H is admissible; admissibility is invariant under N_G(H); restricting an
    admissible H/K to any L <= H gives admissible orbits L/(L cap hKh^-1);
    admissible K <= J <= H compose.
    """
    G = I.group
    t, inv = G.table, G.inv
    for Hc in subgroup_classes(G):
        H = Hc.representative
        HG = G.subgroup(H)
        h_classes = subgroup_classes(HG)
        if h_classes[-1].index not in I.admissible[Hc.index]:
            return False
        normalizer = [g for g in range(G.order) if G.conjugate_subgroup(g, H) == H]
        subs_H = [G.indices_of(HG.perms_of(s)) for s in all_subgroups(HG)]
        for Kc in h_classes:
            K = G.indices_of(HG.perms_of(Kc.representative))
            adm = Kc.index in I.admissible[Hc.index]
            for n in normalizer:
                if I.is_admissible(G.conjugate_subgroup(n, K), H) != adm:
                    return False
            if not adm:
                continue
            for L in subs_H:
                for h in H:
                    hK = frozenset(t[t[h][k]][inv[h]] for k in K)
                    if not I.is_admissible(L & hK, L):
                        return False
        for J in subs_H:
            if not I.is_admissible(J, H):
                continue
            for K in subs_H:
                if K <= J and I.is_admissible(K, J) and not I.is_admissible(K, H):
                    return False
    return True


# ---------------------------------------------------------------------------
# Audits


@dataclass(frozen=True)
class AuditCell:
    C: str
    site: str
    condition_e: bool
    division_A: bool
    division_R: bool

    @property
    def agree(self) -> bool:
        return self.condition_e == self.division_A == self.division_R


@dataclass(frozen=True)
class EquivalenceReport:
    group: str
    primes: PrimeSet
    c_labels: tuple[str, ...]
    site_labels: tuple[str, ...]
    cells: tuple[AuditCell, ...]

    @property
    def ok(self) -> bool:
        return all(c.agree for c in self.cells)

    def disagreements(self) -> list[AuditCell]:
        return [c for c in self.cells if not c.agree]

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "primes": sorted(self.primes),
            "agree": self.ok,
            "cells": [
                {
                    "C": c.C,
                    "site": c.site,
                    "condition_e": c.condition_e,
                    "division_A": c.division_A,
                    "division_R": c.division_R,
                    "agree": c.agree,
                }
                for c in self.cells
            ],
        }

    def to_text(self) -> str:
        """Sites as rows, C-labels as columns; '!' marks a disagreeing cell."""
        lookup = {(c.site, c.C): c for c in self.cells}
        width = max([len(s) for s in self.site_labels] + [4])
        header = "site".ljust(width) + "  " + "  ".join(l.rjust(4) for l in self.c_labels)
        lines = [f"{self.group}  P={self.primes}", header]
        for s in self.site_labels:
            marks = []
            for l in self.c_labels:
                c = lookup[(s, l)]
                m = "✓" if c.condition_e else "✗"
                marks.append((m if c.agree else m + "!").rjust(4))
            lines.append(s.ljust(width) + "  " + "  ".join(marks))
        lines.append("agreement: " + ("all cells" if self.ok else f"{len(self.disagreements())} cells disagree"))
        return "\n".join(lines)


def equivalence_audit(G: FiniteGroup, primes: PrimeSet, classes: list[SubgroupClass] | None = None) -> EquivalenceReport:
    """condition (e), division in A_P and division in R_P at every (C, K <= H) cell."""
    primes = PrimeSet(primes)
    cs = cyclic_P_perfect_classes(G, primes) if classes is None else classes
    site_list = sites(G)
    cells = []
    for C in cs:
        for s in site_list:
            H = s.H.representative
            cells.append(
                AuditCell(
                    C.label,
                    s.label,
                    condition_e(G, C, s.K, H),
                    division_relation_A(G, primes, C, s.K, H),
                    division_relation_R(G, primes, C, s.K, H),
                )
            )
    return EquivalenceReport(
        G.name, primes, tuple(C.label for C in cs), tuple(s.label for s in site_list), tuple(cells)
    )


@dataclass
class SplittingReport:
    group: str
    primes: PrimeSet
    failures: list[str] = field(default_factory=list)
    checks: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition: bool, what: str) -> None:
        self.checks += 1
        if not condition:
            self.failures.append(what)


def _rank(vectors: list[list[Fraction]]) -> int:
    rows = [list(v) for v in vectors if any(v)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _flat(chi: ClassFunction, e: int) -> list[Fraction]:
    return [c for v in chi.values for c in coords(v, e)]


def splitting_report(G: FiniteGroup, primes: PrimeSet, tbl: CharacterTable | None = None) -> SplittingReport:
    """Block decomposition of A_P(G) and R_P(G), and norms on I_cyc-admissible sites."""
    primes = PrimeSet(primes)
    tbl = character_table(G) if tbl is None else tbl
    rep = SplittingReport(G.name, primes)
    ring = burnside_ring(G, primes)
    basis = [ring.basis(k) for k in range(ring.rank)]

    # A_P(G) splits along the full Dress family
    dress = [r.element for r in all_dress_idempotents(G, primes)]
    for b in basis:
        total = ring.zero()
        for e in dress:
            total = total + e * b
        rep.check(total == b, f"A: blocks do not reassemble {b}")
    block_ranks = [_rank([list((e * b).marks) for b in basis]) for e in dress]
    rep.check(sum(block_ranks) == ring.rank, "A: block ranks do not add up")
    for e, r in zip(dress, block_ranks):
        rep.check(r == sum(1 for m in e.marks if m), "A: block rank differs from its support")

    # R_P(G) splits along the cyclic P-perfect classes
    cyc = cyclic_P_perfect_classes(G, primes)
    blocks_R = [lin(dress_idempotent(G, primes, C).element) for C in cyc]
    e = tbl.conductor
    for chi in tbl.irreducibles:
        total = ClassFunction.constant(G, 0)
        for f in blocks_R:
            piece = f * chi
            rep.check(in_rep_ring_P(piece, primes, tbl)[0], "R: block component leaves R_P(G)")
            total = total + piece
        rep.check(total == chi, "R: blocks do not reassemble an irreducible")
    ranks_R = [_rank([_flat(f * chi, e) for chi in tbl.irreducibles]) for f in blocks_R]
    rep.check(sum(ranks_R) == len(tbl), "R: block ranks do not add up")
    for f, r in zip(blocks_R, ranks_R):
        rep.check(r == len(f.support()), "R: block rank differs from its support")

    # norms commute with the splitting on I_cyc-admissible sites
    I = indexing_system_cyc(G, primes)
    for s in sites(G):
        H = s.H.representative
        if not I.is_admissible(s.K, H):
            continue
        HG, KG = G.subgroup(H), G.subgroup(s.K)
        ring_K = burnside_ring(KG, primes)
        tbl_K = character_table(KG)
        for C in cyc:
            x = dress_idempotent(G, primes, C).element
            eK, eH = restrict(x, KG), restrict(x, HG)
            fK, fH = lin(eK), lin(eH)
            for k in range(ring_K.rank):
                y = ring_K.basis(k)
                rep.check(
                    eH * norm_coinduce(eK * y, HG) == eH * norm_coinduce(y, HG),
                    f"A: norm {s.label} does not respect block {C.label}",
                )
            for chi in tbl_K.irreducibles:
                rep.check(
                    fH * tensor_induct(fK * chi, HG) == fH * tensor_induct(chi, HG),
                    f"R: norm {s.label} does not respect block {C.label}",
                )
    return rep


def splitting_audit(G: FiniteGroup, primes: PrimeSet, tbl: CharacterTable | None = None) -> bool:
    return splitting_report(G, primes, tbl).ok
