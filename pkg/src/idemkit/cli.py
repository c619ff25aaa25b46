"""``idemkit`` command-line interface.

Exit codes: 0 ok, 1 verification failure, 2 usage or parse error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .burnside import (
    all_dress_idempotents,
    class_descriptors,
    element_to_json,
    is_primitive_A,
    marks_to_json,
    table_of_marks,
)
from .chartable import DEFAULT_CHARTABLE_CAP, character_table, check_orthogonality, table_to_json
from .errors import CapExceeded, GroupParseError
from .groups import FiniteGroup, builtin_group, parse_group_text
from .idempotents import DEFAULT_SUBSET_CAP, classify_idempotents_R, record_to_json, verify_primitive
from .lattice import (
    P_perfect_classes,
    cyclic_P_perfect_classes,
    is_solvable,
    residual_classes,
    subgroup_classes,
)
from .norms import (
    axioms_check,
    condition_e,
    division_relation_A,
    division_relation_R,
    equivalence_audit,
    indexing_system,
    indexing_system_cyc,
    sites,
)
from .primes import PrimeSet, prime_factors, subsets
from .verify import DEFAULT_CORPUS, CorpusResult, CorpusSpec, run_cell, verify_corpus

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Report:
    data: dict[str, Any]
    tables: list[tuple[str, list[str], list[list[Any]]]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    ok: bool = True


def _yes(b: bool) -> str:
    return "✓" if b else "✗"


# ---------------------------------------------------------------------------
# rendering


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.data, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for i, (title, header, rows) in enumerate(report.tables):
            if i:
                buf.write("\n")
            buf.write(f"# {title}\n")
            writer.writerow(header)
            writer.writerows([[str(c) for c in r] for r in rows])
        return buf.getvalue()
    parts = []
    for title, header, rows in report.tables:
        cells = [header] + [[str(c) for c in r] for r in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
        lines = [title]
        for n, r in enumerate(cells):
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
            if n == 0:
                lines.append("  ".join("-" * w for w in widths))
        parts.append("\n".join(lines))
    if report.notes:
        parts.append("\n".join(report.notes))
    return "\n\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_info(G: FiniteGroup, P: PrimeSet, args) -> Report:
    classes = subgroup_classes(G)
    res = residual_classes(G, P)
    cc_rows = [
        [c.index, str(G.elements[c.representative]), c.size, c.element_order, c.centralizer_order]
        for c in G.conjugacy_classes
    ]
    sub_rows = [
        [c.label, c.order, c.class_size, c.normalizer_order, _yes(c.is_cyclic), _yes(res[c.index] == c.index)]
        for c in classes
    ]
    data = {
        "group": G.name,
        "order": G.order,
        "degree": G.degree,
        "generators": [str(g) for g in G.generators],
        "exponent": G.exponent,
        "abelian": G.is_abelian,
        "solvable": is_solvable(G),
        "primes": sorted(P),
        "conjugacy_classes": [
            {"representative": r[1], "size": r[2], "element_order": r[3], "centralizer_order": r[4]} for r in cc_rows
        ],
        "subgroup_classes": class_descriptors(G),
        "P_perfect": [c.label for c in P_perfect_classes(G, P)],
        "cyclic_P_perfect": [c.label for c in cyclic_P_perfect_classes(G, P)],
    }
    summary = [
        ["order", G.order],
        ["degree", G.degree],
        ["generators", " ".join(data["generators"]) or "()"],
        ["exponent", G.exponent],
        ["abelian", _yes(G.is_abelian)],
        ["solvable", _yes(data["solvable"])],
        ["primes", str(P)],
    ]
    return Report(
        data,
        [
            (f"group {G.name}", ["field", "value"], summary),
            ("conjugacy classes", ["#", "representative", "size", "order", "|C_G(x)|"], cc_rows),
            (
                "subgroup classes",
                ["label", "order", "conjugates", "|N_G(H)|", "cyclic", "P-perfect"],
                sub_rows,
            ),
        ],
    )


def cmd_marks(G: FiniteGroup, P: PrimeSet, args) -> Report:
    tom = table_of_marks(G)
    labels = [c.label for c in tom.classes]
    rows = [[labels[k]] + list(row) for k, row in enumerate(tom.entries)]
    return Report(marks_to_json(tom), [(f"table of marks of {G.name} (row G/K, column H)", ["G/K"] + labels, rows)])


def cmd_chartable(G: FiniteGroup, P: PrimeSet, args) -> Report:
    tbl = character_table(G, cap=args.chartable_cap)
    ok = check_orthogonality(tbl)
    reps = [str(G.elements[c.representative]) for c in G.conjugacy_classes]
    rows = [["size"] + [c.size for c in G.conjugacy_classes]]
    rows += [[f"X{i}"] + [str(v) for v in chi.values] for i, chi in enumerate(tbl.irreducibles)]
    data = table_to_json(tbl)
    data["orthogonality"] = ok
    return Report(
        data,
        [(f"character table of {G.name} (z<n> = exp(2 pi i / n))", ["class"] + reps, rows)],
        [f"orthogonality: {_yes(ok)}"],
        ok,
    )


def cmd_idempotents(G: FiniteGroup, P: PrimeSet, args) -> Report:
    labels = [c.label for c in subgroup_classes(G)]
    a_rows, a_json = [], []
    ok = True
    for rec in all_dress_idempotents(G, P):
        prim = is_primitive_A(rec, cap=args.subset_cap + 2)
        ok &= prim
        X = rec.element
        a_rows.append(
            [
                rec.label.label,
                " ".join(str(m) for m in X.marks),
                " + ".join(f"{c}[{l}]" for c, l in zip(X.coeffs, labels) if c).replace("+ -", "- "),
                _yes(prim),
            ]
        )
        a_json.append({"label": rec.label.label, **element_to_json(X), "primitive": prim})
    tbl = character_table(G, cap=args.chartable_cap)
    r_rows, r_json = [], []
    for rec in classify_idempotents_R(G, P, tbl):
        prim = verify_primitive(rec, tbl, cap=args.subset_cap)
        ok &= prim
        r_json.append(record_to_json(rec, prim))
        r_rows.append(
            [
                rec.label.label,
                " ".join(r_json[-1]["support"]),
                " ".join(r_json[-1]["coefficients"]),
                _yes(prim),
            ]
        )
    data = {
        "group": G.name,
        "primes": sorted(P),
        "subgroup_classes": labels,
        "burnside": a_json,
        "representation": r_json,
    }
    return Report(
        data,
        [
            (f"Dress idempotents of A_P({G.name}), P={P}", ["L", "marks (" + " ".join(labels) + ")", "coefficients", "primitive"], a_rows),
            (f"idempotents of R_P({G.name}), P={P}", ["C", "support", "coefficients", "primitive"], r_rows),
        ],
        ok=ok,
    )


def _lookup(G: FiniteGroup, label: str, allowed, kind: str):
    for c in allowed:
        if c.label == label:
            return c
    names = ", ".join(c.label for c in allowed)
    raise UsageError(f"{label!r} is not a {kind} subgroup class of {G.name}; available: {{{names}}}")


def cmd_norms(G: FiniteGroup, P: PrimeSet, args) -> Report:
    if args.cyc:
        rep = equivalence_audit(G, P)
        rows = [[c.site, c.C, _yes(c.condition_e), _yes(c.division_A), _yes(c.division_R), _yes(c.agree)] for c in rep.cells]
        r = Report(rep.to_json(), [("norm audit", ["site", "C", "(e)", "div A", "div R", "agree"], rows)], ok=rep.ok)
        if args.format == "table":
            r.tables = []
            r.notes = [rep.to_text()]
        return r
    if not args.C:
        raise UsageError("norms needs --C LABEL or --cyc")
    C = _lookup(G, args.C, cyclic_P_perfect_classes(G, P), "cyclic P-perfect")
    rows, cells = [], []
    ok = True
    for s in sites(G):
        H = s.H.representative
        e = condition_e(G, C, s.K, H)
        a = division_relation_A(G, P, C, s.K, H)
        r = division_relation_R(G, P, C, s.K, H)
        agree = e == a == r
        ok &= agree
        rows.append([s.label, _yes(e), _yes(a), _yes(r), _yes(agree)])
        cells.append({"site": s.label, "condition_e": e, "division_A": a, "division_R": r, "agree": agree})
    data = {"group": G.name, "primes": sorted(P), "C": C.label, "agree": ok, "cells": cells}
    return Report(data, [(f"norms on the block of {C.label} in {G.name}, P={P}", ["H/K", "(e)", "div A", "div R", "agree"], rows)], ok=ok)


def cmd_indexing(G: FiniteGroup, P: PrimeSet, args) -> Report:
    if args.cyc:
        I = indexing_system_cyc(G, P)
    elif args.C:
        I = indexing_system(G, _lookup(G, args.C, P_perfect_classes(G, P), "P-perfect"))
    else:
        raise UsageError("indexing needs --C LABEL or --cyc")
    axioms = axioms_check(I)
    data = I.to_json()
    data["primes"] = sorted(P)
    data["complete"] = I.is_complete()
    data["axioms"] = axioms
    rows = [[H, " ".join(K)] for H, K in data["admissible"].items()]
    return Report(
        data,
        [(f"{I.name} on {G.name}, P={P}: admissible H/K", ["H", "admissible K"], rows)],
        [f"complete: {_yes(data['complete'])}", f"axioms: {_yes(axioms)}"],
        axioms,
    )


def cmd_verify(G: FiniteGroup | None, P: PrimeSet | None, args) -> Report:
    faults = []
    for f in args.inject_fault or []:
        name, _, primes = f.partition(":")
        faults.append((name, PrimeSet.parse(primes)))
    if G is not None and args.file:
        primes = [P] if P is not None else subsets(prime_factors(G.order))
        result = CorpusResult([run_cell(G.name, Q, (G.name, Q) in faults, group=G) for Q in primes])
    else:
        groups = (args.builtin,) if args.builtin else DEFAULT_CORPUS
        result = verify_corpus(CorpusSpec(tuple(groups), P), budget=args.budget, faults=faults)
    data = {
        "ok": result.ok,
        "cells": [
            {
                "group": c.group,
                "primes": sorted(c.primes),
                "ok": c.ok,
                "checks": c.checks,
                "error": c.error,
                "audit_cells": c.audit_cells,
            }
            for c in result.cells
        ],
        "skipped": [{"group": n, "primes": sorted(Q)} for n, Q in result.skipped],
    }
    rows = [[c.group, str(c.primes), "PASS" if c.ok else "FAIL", c.audit_cells, "; ".join(c.failures())] for c in result.cells]
    rows += [[n, str(Q), "SKIP", 0, "wall-clock budget exhausted"] for n, Q in result.skipped]
    return Report(
        data,
        [("verification", ["group", "P", "status", "audit cells", "failures"], rows)],
        [result.summary_lines()[-1]],
        result.ok,
    )


COMMANDS = {
    "info": cmd_info,
    "marks": cmd_marks,
    "chartable": cmd_chartable,
    "idempotents": cmd_idempotents,
    "norms": cmd_norms,
    "indexing": cmd_indexing,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="idemkit", description="Idempotents and norms of P-local Burnside and representation rings.")
    p.add_argument("command", choices=sorted(COMMANDS))
    src = p.add_mutually_exclusive_group()
    src.add_argument("--builtin", metavar="NAME", help="C<n>, S<n>, A<n>, D<n> (order 2n), Q8, products like C2xC3")
    src.add_argument("--file", metavar="PATH", help="group file: 'degree <n>' then one generator per line")
    p.add_argument("--primes", metavar="P", help="comma-separated primes; empty or '-' for the rational case")
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--C", metavar="LABEL", help="subgroup class label for norms/indexing")
    sel.add_argument("--cyc", action="store_true", help="use all cyclic P-perfect classes (I_cyc)")
    p.add_argument("--format", choices=["json", "table", "csv"], default="table")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--lattice-cap", type=int, metavar="N")
    p.add_argument("--chartable-cap", type=int, default=DEFAULT_CHARTABLE_CAP, metavar="N")
    p.add_argument("--subset-cap", type=int, default=DEFAULT_SUBSET_CAP, metavar="N")
    p.add_argument("--budget", type=float, metavar="SECONDS", help="wall-clock budget for verify")
    p.add_argument("--inject-fault", action="append", metavar="GROUP:PRIMES", help=argparse.SUPPRESS)
    return p


def _load_group(args) -> FiniteGroup | None:
    if args.builtin:
        try:
            G = builtin_group(args.builtin)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        G.name = args.builtin
    elif args.file:
        path = Path(args.file)
        try:
            text = path.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        try:
            G = parse_group_text(text, name=path.stem)
        except GroupParseError as exc:
            raise UsageError(f"{path}: {exc}") from None
    else:
        return None
    if args.lattice_cap is not None:
        G.lattice_cap = args.lattice_cap
    return G


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse has already printed usage or help
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        try:
            P = PrimeSet.parse(args.primes) if args.primes is not None else None
        except ValueError as exc:
            raise UsageError(f"bad --primes: {exc}") from None
        G = _load_group(args)
        if args.command == "verify":
            report = cmd_verify(G, P, args)
        else:
            if G is None:
                raise UsageError(f"{args.command} needs --builtin NAME or --file PATH")
            report = COMMANDS[args.command](G, P or PrimeSet(), args)
    except UsageError as exc:
        print(f"idemkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"idemkit: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    text = render(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
