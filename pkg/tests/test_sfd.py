import itertools

import pytest

from egflab.errors import CapExceededError
from egflab.families import (
    ENDOFUNCTIONS,
    GRAPHS,
    PARTITIONS,
    LabelledGraph,
)
from egflab.sfd import (
    atoms_on,
    check_direct_sum_axioms,
    check_levi,
    check_unique_factorization,
    decompose_atoms,
    direct_sum_all,
    universe,
)

from defect_families import OverlapSumFamily, ParityFamily
from oracles import connected_graph_count


def test_direct_sum_axioms_pass_small():
    assert check_direct_sum_axioms(GRAPHS, 4).status == "PASS"
    assert check_direct_sum_axioms(PARTITIONS, 4).status == "PASS"
    assert check_direct_sum_axioms(ENDOFUNCTIONS, 3).status == "PASS"


def test_direct_sum_axioms_fail_on_planted_overlap():
    report = check_direct_sum_axioms(OverlapSumFamily(), 3)
    assert report.status == "FAIL"
    assert report.witness["reason"] == "sum defined on overlapping supports"
    assert "left" in report.witness and "right" in report.witness


def test_levi_passes_for_shipped_families():
    assert check_levi(GRAPHS, 3).status == "PASS"
    assert check_levi(PARTITIONS, 4).status == "PASS"
    assert check_levi(ENDOFUNCTIONS, 3).status == "PASS"


def test_levi_fails_for_parity_family():
    family = ParityFamily()
    # the parity family satisfies the direct-sum axioms...
    assert check_direct_sum_axioms(family, 3).status == "PASS"
    # ...but admits unrefinable decomposition pairs
    report = check_levi(family, 3)
    assert report.status == "FAIL"
    assert report.witness["reason"] == "no refining grid"


def test_unique_factorization_passes_and_parity_fails():
    assert check_unique_factorization(GRAPHS, 4).status == "PASS"
    assert check_unique_factorization(PARTITIONS, 5).status == "PASS"
    assert check_unique_factorization(ENDOFUNCTIONS, 4).status == "PASS"
    report = check_unique_factorization(ParityFamily(), 2)
    assert report.status == "FAIL"
    assert "distinct atom sets" in report.witness["reason"]


def test_decompose_unit_is_empty():
    for family in (GRAPHS, ENDOFUNCTIONS, PARTITIONS):
        assert decompose_atoms(family, family.unit) == frozenset()


def test_decompose_graph_example():
    g = LabelledGraph({1, 2, 3}, [(1, 2)])
    pieces = decompose_atoms(GRAPHS, g)
    assert pieces == frozenset(
        [LabelledGraph({1, 2}, [(1, 2)]), LabelledGraph({3})]
    )


def test_decompose_resums_exhaustively():
    for F, structures in universe(GRAPHS, 4).items():
        for w in structures:
            atoms = decompose_atoms(GRAPHS, w)
            assert direct_sum_all(GRAPHS, sorted(atoms, key=GRAPHS.canonical_key)) == w
            # any summation order works: supports are pairwise disjoint
            for perm in itertools.permutations(atoms):
                assert direct_sum_all(GRAPHS, perm) == w
                break


def test_atoms_on_examples():
    assert len(atoms_on(GRAPHS, frozenset({1, 2, 3}))) == connected_graph_count(3) == 4
    assert len(atoms_on(ENDOFUNCTIONS, frozenset({7}))) == 1
    assert len(atoms_on(PARTITIONS, frozenset({1, 2, 3}))) == 1


def test_unit_is_never_an_atom():
    for family in (GRAPHS, ENDOFUNCTIONS, PARTITIONS):
        assert not family.is_atom(family.unit)


def test_cap_errors():
    with pytest.raises(CapExceededError):
        GRAPHS.enumerate(frozenset(range(1, 9)))
    with pytest.raises(CapExceededError):
        check_direct_sum_axioms(GRAPHS, 9)
    with pytest.raises(CapExceededError):
        check_levi(GRAPHS, 6)  # beyond the hard Levi cap


def test_partiality_is_none_not_an_exception():
    g1 = LabelledGraph({1, 2}, [(1, 2)])
    g2 = LabelledGraph({2, 3})
    assert GRAPHS.direct_sum(g1, g2) is None


def test_report_serialization():
    report = check_direct_sum_axioms(OverlapSumFamily(), 2)
    data = report.to_dict()
    assert data["status"] == "FAIL"
    assert data["axiom"] == "direct-sum"
    assert "witness" in data and data["instances_checked"] > 0
