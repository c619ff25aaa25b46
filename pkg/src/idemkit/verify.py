"""Corpus sweeps: every invariant and audit, per (group, prime set) cell."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import dataclass, field
from typing import Iterable

from .burnside import all_dress_idempotents, burnside_ring, is_primitive_A
from .charfun import ClassFunction, lin, mod_p_congruence
from .chartable import character_table, check_orthogonality
from .errors import IdemkitError
from .groups import FiniteGroup, builtin_group
from .idempotents import classify_idempotents_R, gamma_orbit_crosscheck, verify_primitive
from .lattice import cyclic_P_perfect_classes, subgroup_classes
from .norms import equivalence_audit, splitting_report
from .primes import PrimeSet, prime_factors, subsets

DEFAULT_CORPUS: tuple[str, ...] = tuple(f"C{n}" for n in range(1, 13)) + (
    "S3",
    "S4",
    "D4",
    "D5",
    "D6",
    "Q8",
    "A4",
    "A5",
    "C2xC3",
)


@dataclass(frozen=True)
class CorpusSpec:
    groups: tuple[str, ...] = DEFAULT_CORPUS
    primes: PrimeSet | None = None  # None: every subset of the primes dividing |G|

    def cells(self) -> list[tuple[str, PrimeSet]]:
        out = []
        for name in self.groups:
            G = builtin_group(name)
            if G.order > 120:
                raise ValueError(f"corpus group {name} has order {G.order} > 120")
            if self.primes is None:
                out.extend((name, P) for P in subsets(prime_factors(G.order)))
            else:
                out.append((name, self.primes))
        return out


@dataclass
class CellResult:
    group: str
    primes: PrimeSet
    checks: dict[str, bool] = field(default_factory=dict)
    error: str | None = None
    audit_cells: int = 0
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.error is None and all(self.checks.values())

    @property
    def label(self) -> str:
        return f"{self.group} P={self.primes}"

    def failures(self) -> list[str]:
        out = [k for k, v in self.checks.items() if not v]
        if self.error:
            out.append(self.error)
        return out


def _corrupt(records):
    """Fault-injection hook: spoil the first idempotent by adding the identity class."""
    rec = records[0]
    G = rec.group
    bad = rec.character + ClassFunction.indicator(G, [0])
    return [type(rec)(rec.label, rec.primes, bad, rec.support | {0}, rec.coefficients)] + list(records[1:])


def run_cell(name: str, primes: PrimeSet, fault: bool = False, group: FiniteGroup | None = None) -> CellResult:
    """All checks for one cell; ``group`` overrides looking ``name`` up as a builtin."""
    start = time.perf_counter()
    res = CellResult(name, PrimeSet(primes))
    try:
        _run_checks(builtin_group(name) if group is None else group, res, fault)
    except IdemkitError as exc:
        res.error = f"{type(exc).__name__}: {exc}"
    res.seconds = time.perf_counter() - start
    return res


def _run_checks(G: FiniteGroup, res: CellResult, fault: bool) -> None:
    P = res.primes
    check = res.checks
    tbl = character_table(G)
    check["chartable orthogonality"] = check_orthogonality(tbl)

    # R_P(G): count, partition of unity, primitivity, Gamma-orbits
    records = classify_idempotents_R(G, P, tbl)
    if fault:
        records = _corrupt(records)
    check["R count = cyclic P-perfect classes"] = len(records) == len(cyclic_P_perfect_classes(G, P))
    one = ClassFunction.constant(G, 1)
    total = ClassFunction.constant(G, 0)
    idem = orth = True
    for i, a in enumerate(records):
        total = total + a.character
        idem &= a.character * a.character == a.character
        for b in records[i + 1 :]:
            orth &= not (a.character * b.character).support()
    check["R idempotent"] = idem
    check["R orthogonal"] = orth
    check["R sum to one"] = total == one
    check["R primitive"] = all(verify_primitive(r, tbl) for r in records)
    check["Gamma-orbit bijection"] = gamma_orbit_crosscheck(G, P)

    # A_P(G): the Dress family
    ring = burnside_ring(G, P)
    dress = all_dress_idempotents(G, P)
    total_A = ring.zero()
    idem = orth = True
    for i, a in enumerate(dress):
        total_A = total_A + a.element
        idem &= a.element * a.element == a.element
        for b in dress[i + 1 :]:
            orth &= (a.element * b.element).is_zero()
    check["A idempotent"] = idem
    check["A orthogonal"] = orth
    check["A sum to one"] = total_A == ring.one()
    check["A P-local"] = all(all(P.is_local(c) for c in a.element.coeffs) for a in dress)
    check["A primitive"] = all(is_primitive_A(a) for a in dress)
    zero = ClassFunction.constant(G, 0)
    check["non-cyclic vanishing"] = all(lin(a.element) == zero for a in dress if not a.label.is_cyclic)

    # congruences: permutation characters at every prime, idempotents at p in P
    congruent = True
    for K in subgroup_classes(G):
        chi = lin(ring.basis(K))
        congruent &= all(mod_p_congruence(chi, p) for p in prime_factors(G.order))
    for r in records:
        congruent &= all(mod_p_congruence(r.character, p) for p in P.relevant(G.order))
    check["mod-p congruence"] = congruent

    audit = equivalence_audit(G, P)
    res.audit_cells = len(audit.cells)
    check["three-way equivalence"] = audit.ok
    check["splitting"] = splitting_report(G, P, tbl).ok


def _worker_count() -> int:
    env = os.environ.get("IDEMKIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"IDEMKIT_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


@dataclass
class CorpusResult:
    cells: list[CellResult]
    skipped: list[tuple[str, PrimeSet]] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.skipped and all(c.ok for c in self.cells)

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.cells:
            status = "PASS" if c.ok else "FAIL"
            detail = "" if c.ok else "  [" + "; ".join(c.failures()) + "]"
            lines.append(f"{status}  {c.label:<22} audit cells={c.audit_cells}{detail}")
        for name, P in self.skipped:
            lines.append(f"SKIP  {name} P={P}  (wall-clock budget exhausted)")
        n_fail = sum(1 for c in self.cells if not c.ok)
        lines.append(
            f"{len(self.cells) - n_fail}/{len(self.cells)} cells passed, "
            f"{len(self.skipped)} skipped, {sum(c.audit_cells for c in self.cells)} audit cells, "
            f"{self.seconds:.1f}s"
        )
        return lines


def verify_corpus(
    corpus: CorpusSpec | Iterable[tuple[str, PrimeSet]] = CorpusSpec(),
    budget: float | None = None,
    faults: Iterable[tuple[str, PrimeSet]] = (),
    workers: int | None = None,
) -> CorpusResult:
    """Run every cell; results come back in corpus order whatever the schedule."""
    cells = corpus.cells() if isinstance(corpus, CorpusSpec) else list(corpus)
    faults = {(n, PrimeSet(p)) for n, p in faults}
    workers = _worker_count() if workers is None else workers
    start = time.perf_counter()
    deadline = None if budget is None else start + budget
    results: list[CellResult] = []
    skipped: list[tuple[str, PrimeSet]] = []
    if workers <= 1 or len(cells) <= 1:
        for name, P in cells:
            if deadline is not None and time.perf_counter() > deadline:
                skipped.append((name, P))
                continue
            results.append(run_cell(name, P, (name, P) in faults))
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        try:
            futures = [pool.submit(run_cell, name, P, (name, P) in faults) for name, P in cells]
            for (name, P), fut in zip(cells, futures):
                remaining = None if deadline is None else max(0.0, deadline - time.perf_counter())
                try:
                    results.append(fut.result(timeout=remaining))
                except FutureTimeout:
                    skipped.append((name, P))
        finally:
            pool.shutdown(wait=not skipped, cancel_futures=True)
    return CorpusResult(results, skipped, time.perf_counter() - start)
