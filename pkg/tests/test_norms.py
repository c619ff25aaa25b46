import json

import pytest

from idemkit.groups import builtin_group
from idemkit.lattice import class_by_label, cyclic_P_perfect_classes, subgroup_classes
from idemkit.norms import (
    IndexingSystem,
    axioms_check,
    condition_e,
    division_relation_A,
    division_relation_R,
    equivalence_audit,
    indexing_system,
    indexing_system_cyc,
    indexing_system_cyc_direct,
    sites,
    splitting_audit,
    splitting_report,
)
from idemkit.primes import PrimeSet, prime_factors, subsets

S3 = builtin_group("S3")
A4 = builtin_group("A4")
A5 = builtin_group("A5")
P2 = PrimeSet({2})


def rep(G, label):
    return class_by_label(G, label).representative


def test_sites_of_s3():
    labels = [s.label for s in sites(S3)]
    assert labels == ["1/1", "C2/1", "C2/C2", "C3/1", "C3/C3", "S3/1", "S3/C2", "S3/C3", "S3/S3"]


def test_condition_e_examples():
    C3 = class_by_label(S3, "C3")
    assert condition_e(S3, C3, rep(S3, "1"), rep(S3, "C2"))
    assert not condition_e(S3, C3, rep(S3, "C2"), rep(S3, "S3"))
    assert condition_e(S3, C3, rep(S3, "S3"), rep(S3, "S3"))


def test_division_examples():
    C3 = class_by_label(S3, "C3")
    args = [
        (rep(S3, "1"), rep(S3, "C2"), True),
        (rep(S3, "C2"), rep(S3, "S3"), False),
        (rep(S3, "C3"), rep(S3, "S3"), True),
    ]
    for K, H, expected in args:
        assert division_relation_A(S3, P2, C3, K, H) == expected
        assert division_relation_R(S3, P2, C3, K, H) == expected


def admissible_labels(I, G, H_label):
    Hc = class_by_label(G, H_label)
    HG = G.subgroup(Hc.representative)
    return [c.label for c in subgroup_classes(HG) if c.index in I.admissible[Hc.index]]


def test_indexing_system_examples():
    I1 = indexing_system(S3, class_by_label(S3, "1"))
    assert I1.is_complete()
    I = indexing_system(S3, class_by_label(S3, "C3"))
    assert admissible_labels(I, S3, "S3") == ["C3", "S3"]
    assert admissible_labels(I, S3, "C3") == ["C3"]
    assert admissible_labels(I, S3, "C2") == ["1", "C2"]
    assert admissible_labels(I, S3, "1") == ["1"]


def test_indexing_cyc_examples():
    assert admissible_labels(indexing_system_cyc(S3, P2), S3, "S3") == ["C3", "S3"]
    assert indexing_system_cyc(builtin_group("C1"), PrimeSet()).is_complete()
    assert admissible_labels(indexing_system_cyc(A4, P2), A4, "A4") == ["A4"]


def contains_conjugate(C, K):
    return any(c <= K for c in C.conjugates)


def test_normality_law():
    C3 = class_by_label(S3, "C3")
    I = indexing_system(S3, C3)
    assert all(I.is_admissible(s.K, s.H.representative) for s in sites(S3) if contains_conjugate(C3, s.K))
    C5 = class_by_label(A5, "C5")
    I = indexing_system(A5, C5)
    assert not all(I.is_admissible(s.K, s.H.representative) for s in sites(A5) if contains_conjugate(C5, s.K))


@pytest.mark.parametrize("name", ["S3", "A4", "S4", "D4", "D6", "Q8", "A5", "C12"])
def test_cyc_intersection_equals_direct_criterion(name):
    G = builtin_group(name)
    for P in subsets(prime_factors(G.order)):
        assert indexing_system_cyc(G, P).admissible == indexing_system_cyc_direct(G, P).admissible


@pytest.mark.parametrize("name", ["C1", "S3", "A4", "S4", "D4", "Q8", "C6"])
def test_axioms_hold(name):
    G = builtin_group(name)
    for C in subgroup_classes(G):
        if C.is_cyclic:
            assert axioms_check(indexing_system(G, C))
    for P in subsets(prime_factors(G.order)):
        assert axioms_check(indexing_system_cyc(G, P))


def test_corrupted_system_fails_axioms():
    I = indexing_system(S3, class_by_label(S3, "1"))
    assert axioms_check(I)
    top = class_by_label(S3, "S3").index
    adm = dict(I.admissible)
    adm[top] = adm[top] - {0}
    assert not axioms_check(IndexingSystem(S3, "broken", adm))


@pytest.mark.parametrize("name", ["S3", "A4", "D4", "S4"])
def test_indexing_matches_division_and_is_maximal(name):
    G = builtin_group(name)
    for P in subsets(prime_factors(G.order)):
        for C in cyclic_P_perfect_classes(G, P):
            I = indexing_system(G, C)
            for s in sites(G):
                H = s.H.representative
                assert I.is_admissible(s.K, H) == division_relation_A(G, P, C, s.K, H)


def test_predicates_are_conjugation_invariant():
    G = builtin_group("S4")
    for C in cyclic_P_perfect_classes(G, P2):
        for s in sites(G)[::3]:
            H = s.H.representative
            base = condition_e(G, C, s.K, H)
            for g in range(0, G.order, 5):
                assert condition_e(G, C, G.conjugate_subgroup(g, s.K), G.conjugate_subgroup(g, H)) == base
                assert division_relation_A(G, P2, C, G.conjugate_subgroup(g, s.K), G.conjugate_subgroup(g, H)) == base


def test_audit_examples():
    for P in subsets([2, 3]):
        assert equivalence_audit(S3, P).ok
    assert equivalence_audit(A4, P2).ok
    trivial = equivalence_audit(builtin_group("C1"), PrimeSet())
    assert len(trivial.cells) == 1 and trivial.ok


def test_audit_text_and_json():
    report = equivalence_audit(S3, P2)
    text = report.to_text()
    row = next(l for l in text.splitlines() if l.startswith("S3/C2"))
    assert row.split()[1:] == ["✓", "✗"]
    data = json.loads(json.dumps(report.to_json()))
    assert data["agree"] and len(data["cells"]) == 2 * len(sites(S3))


def test_splitting_examples():
    assert splitting_audit(S3, P2)
    assert splitting_audit(builtin_group("C1"), PrimeSet())
    report = splitting_report(A4, P2)
    assert report.ok and report.checks > 0
    assert [C.label for C in cyclic_P_perfect_classes(A4, P2)] == ["1", "C3"]
