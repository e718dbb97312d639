import json
from fractions import Fraction

import pytest

from egflab.cache import CoefficientCache
from egflab.egf import egf_exp, egf_from, egf_log, egf_zero
from egflab.errors import ConstantTermError, UnknownFeatureError
from egflab.families import ENDOFUNCTIONS, GRAPHS, PARTITIONS, burnside_family
from egflab.rings import MultiPolynomial, format_ring_elem
from egflab.statistics import (
    COUNT,
    Statistic,
    atoms_egf_from_total,
    check_equivariance,
    check_multiplicativity,
    class_sum,
    egf_of,
    verify_exponential_formula,
    verify_stirling_identity,
)

from defect_families import LabelProductStatistic
from oracles import (
    bell,
    connected_endofunction_count,
    graph_component_count,
    graph_edge_sets,
    stirling2,
)

y = MultiPolynomial.variable("y")
BLOCKS_Y = Statistic((("blocks", "y"),))
COMPONENTS_Y = Statistic((("components", "y"),))
CYCLES_FIXED = Statistic((("cycles", "x"), ("fixed_points", "y")))
IMPROPER = Statistic((), unit_value=Fraction(0))


def test_statistic_parsing():
    assert Statistic.parse("1") == COUNT
    assert Statistic.parse("blocks=y") == BLOCKS_Y
    assert Statistic.parse("cycles=x, fixed_points=y") == CYCLES_FIXED
    with pytest.raises(ValueError):
        Statistic.parse("blocks")
    with pytest.raises(ValueError):
        Statistic.parse("")


def test_class_sum_partitions_by_blocks():
    result = class_sum(PARTITIONS, BLOCKS_Y, range(1, 5))
    expected = MultiPolynomial(
        ((("y", k),), Fraction(stirling2(4, k))) for k in range(1, 5)
    )
    assert [stirling2(4, k) for k in (1, 2, 3, 4)] == [1, 7, 6, 1]
    assert result.value == expected == y ** 4 + 6 * y ** 3 + 7 * y ** 2 + y


def test_class_sum_empty_support_is_unit_value():
    for family in (GRAPHS, ENDOFUNCTIONS, PARTITIONS):
        assert class_sum(family, COUNT, ()).value == 1
        assert class_sum(family, BLOCKS_Y if family is PARTITIONS else COUNT, ()).value == 1
    assert class_sum(GRAPHS, COUNT, (), atoms_only=True).value == 0


def test_class_sum_graphs_by_components():
    result = class_sum(GRAPHS, COMPONENTS_Y, range(1, 4))
    by_count: dict = {}
    for edges in graph_edge_sets(3):
        c = graph_component_count(3, edges)
        by_count[c] = by_count.get(c, 0) + 1
    expected = MultiPolynomial(
        ((("y", c),), Fraction(n)) for c, n in by_count.items()
    )
    assert result.value == expected == y ** 3 + 3 * y ** 2 + 4 * y


def test_unknown_feature_raises():
    with pytest.raises(UnknownFeatureError):
        class_sum(GRAPHS, Statistic((("blocks", "y"),)), range(1, 3))


def test_equivariance_of_shipped_statistics():
    for family, stat in (
        (GRAPHS, COMPONENTS_Y),
        (GRAPHS, COUNT),
        (ENDOFUNCTIONS, CYCLES_FIXED),
        (PARTITIONS, BLOCKS_Y),
    ):
        for n in range(5):
            assert check_equivariance(family, stat, n).status == "PASS"
            assert check_equivariance(family, stat, n, atoms_only=False).status == "PASS"


def test_equivariance_fails_for_label_dependent_statistic():
    report = check_equivariance(GRAPHS, LabelProductStatistic(), 3)
    assert report.status == "FAIL"
    assert "support" in report.witness


def test_multiplicativity_of_shipped_statistics():
    for family, stat in (
        (GRAPHS, COUNT),
        (GRAPHS, COMPONENTS_Y),
        (ENDOFUNCTIONS, CYCLES_FIXED),
        (PARTITIONS, BLOCKS_Y),
        (burnside_family(1, 2), COUNT),
    ):
        report = check_multiplicativity(family, stat, 4)
        assert report.status == "PASS", report
    # the label-product fixture is multiplicative too (it only fails equivariance)
    assert check_multiplicativity(GRAPHS, LabelProductStatistic(), 3).status == "PASS"


def test_improper_statistic_is_flagged_and_vanishes():
    report = check_multiplicativity(GRAPHS, IMPROPER, 3)
    assert report.status == "IMPROPER"
    for w in GRAPHS.enumerate(frozenset({1, 2})):
        assert IMPROPER.value(GRAPHS, w) == 0
    assert egf_of(GRAPHS, IMPROPER, order=4) == egf_zero(4)
    assert verify_exponential_formula(GRAPHS, IMPROPER, 4).status == "PASS"


def test_proper_statistic_sends_unit_to_one():
    for family, stat in (
        (PARTITIONS, COUNT),
        (PARTITIONS, BLOCKS_Y),
        (GRAPHS, COMPONENTS_Y),
        (ENDOFUNCTIONS, CYCLES_FIXED),
    ):
        assert stat.value(family, family.unit) == 1


def test_egf_of_examples():
    bells = egf_of(PARTITIONS, COUNT, order=6)
    assert bells.coeffs == tuple(Fraction(bell(n)) for n in range(7))
    atoms = egf_of(PARTITIONS, COUNT, atoms_only=True, order=6)
    assert atoms.coeffs == (0, 1, 1, 1, 1, 1, 1)
    graphs = egf_of(GRAPHS, COUNT, order=5)
    assert graphs.coeffs == (1, 1, 2, 8, 64, 1024)


def test_exponential_formula_graphs_sides_cross_checked():
    report = verify_exponential_formula(GRAPHS, COUNT, 5)
    assert report.status == "PASS"
    atoms = egf_of(GRAPHS, COUNT, atoms_only=True, order=5)
    assert atoms.coeffs == (0, 1, 1, 4, 38, 728)
    assert egf_exp(atoms).coeffs == (1, 1, 2, 8, 64, 1024)


def test_exponential_formula_burnside():
    family = burnside_family(1, 2)
    assert verify_exponential_formula(family, COUNT, 6).status == "PASS"
    atoms = egf_of(family, COUNT, atoms_only=True, order=6)
    # connected idempotents on k points: pick the fixed point, map the rest to it
    assert atoms.coeffs == (0, 1, 2, 3, 4, 5, 6)


def test_exponential_formula_bivariate_statistics():
    assert verify_exponential_formula(GRAPHS, COMPONENTS_Y, 4).status == "PASS"
    assert verify_exponential_formula(PARTITIONS, BLOCKS_Y, 6).status == "PASS"
    assert verify_exponential_formula(ENDOFUNCTIONS, CYCLES_FIXED, 4).status == "PASS"


def test_stirling_identity():
    report = verify_stirling_identity(7)
    assert report.status == "PASS"
    assert report.instances_checked == 8


def test_atoms_egf_from_total():
    bells = egf_from([Fraction(bell(n)) for n in range(7)])
    assert atoms_egf_from_total(bells).coeffs == (0, 1, 1, 1, 1, 1, 1)
    endos = egf_from([Fraction(v) for v in (1, 1, 4, 27, 256, 3125)])
    connected = atoms_egf_from_total(endos)
    assert [connected_endofunction_count(n) for n in range(6)] == [0, 1, 3, 17, 142, 1569]
    assert connected.coeffs == (0, 1, 3, 17, 142, 1569)
    assert atoms_egf_from_total(egf_from([Fraction(1), Fraction(0), Fraction(0)])) == egf_zero(2)
    with pytest.raises(ConstantTermError):
        atoms_egf_from_total(egf_zero(3))


def test_disjoint_class_product_rule():
    F = frozenset({1, 2})
    G = frozenset({3, 4})
    for family, stat in ((GRAPHS, COMPONENTS_Y), (PARTITIONS, BLOCKS_Y)):
        left = Fraction(0)
        for u in family.enumerate(F):
            for v in family.enumerate(G):
                left = left + stat.value(family, family.direct_sum(u, v))
        right = class_sum(family, stat, F).value * class_sum(family, stat, G).value
        assert left == right


def test_cache_hits_are_bit_identical(tmp_path):
    path = tmp_path / "egf-cache.jsonl"
    cold = egf_of(PARTITIONS, BLOCKS_Y, order=5, cache=CoefficientCache(path))
    warm = egf_of(PARTITIONS, BLOCKS_Y, order=5, cache=CoefficientCache(path))
    recomputed = egf_of(PARTITIONS, BLOCKS_Y, order=5)
    assert cold == warm == recomputed
    assert [format_ring_elem(c) for c in warm.coeffs] == [
        format_ring_elem(c) for c in recomputed.coeffs
    ]
    lines = path.read_text().strip().splitlines()
    records = [json.loads(line) for line in lines]
    assert all({"key", "value", "timestamp"} <= set(r) for r in records)


def test_cache_skips_corrupted_lines(tmp_path):
    path = tmp_path / "egf-cache.jsonl"
    cache = CoefficientCache(path)
    cache.put("good", "42")
    with open(path, "a") as handle:
        handle.write("{not json}\n")
        handle.write(json.dumps({"key": "half"}) + "\n")
    with pytest.warns(UserWarning):
        reloaded = CoefficientCache(path)
    assert reloaded.get("good") == "42"
    assert reloaded.get("half") is None
    assert len(reloaded) == 1
