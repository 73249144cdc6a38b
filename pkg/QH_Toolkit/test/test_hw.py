"""
Standard and costandard modules, the highest weight check, canonical posets
and equivalence of orders.
"""

import logging

import pytest

from QH_Toolkit.core.bqa import build_algebra
from QH_Toolkit.core.homalg import global_dimension_bound
from QH_Toolkit.core.rep import is_isomorphic, projective_module, simple_module
from QH_Toolkit.data.ingestion import parse_algebra_text, presentation_order
from QH_Toolkit.errors import CyclicRelation, ResolutionBoundExceeded
from QH_Toolkit.theory.hw import (
    canonical_poset,
    check_hw,
    costandard_module,
    delta_filtration,
    delta_membership,
    delta_multiplicities,
    hw_equivalent,
    is_adapted,
    orthogonality_table,
    reciprocity_table,
    simple_collection,
    standard_module,
    standard_module_iterated,
    standard_modules,
    verify_standarizable,
)
from QH_Toolkit.theory.poset import WeightPoset, dominates, linear_orders


A3 = """
field GF(5)
vertex 1
vertex 2
vertex 3
arrow a 1 2
arrow b 2 3
end
"""


def _build(text):
    p = parse_algebra_text(text)
    return build_algebra(p), presentation_order(p)


def test_a2_standards_and_costandards(a2):
    a, poset = a2
    assert is_isomorphic(standard_module(a, poset, "1"), projective_module(a, "1")).isomorphic
    assert is_isomorphic(standard_module(a, poset, "2"), simple_module(a, "2")).isomorphic
    assert costandard_module(a, poset, "1").dimension_vector() == (1, 0)
    assert costandard_module(a, poset, "2").dimension_vector() == (0, 1)


def test_exm_standard_dimensions(exm):
    a, poset = exm
    dims = {w: standard_module(a, poset, w).dimension_vector() for w in a.vertices}
    assert dims == {"1": (1, 1, 0), "2": (0, 1, 0), "3": (0, 1, 1)}


def test_iterated_traces_give_the_same_standards(hw_example):
    a, poset = hw_example
    for w in a.vertices:
        assert is_isomorphic(standard_module_iterated(a, poset, w), standard_module(a, poset, w)).isomorphic


def test_incidence_standards_are_projective(incidence4):
    a, poset = incidence4
    assert a.dim == 9
    for w in a.vertices:
        assert is_isomorphic(standard_module(a, poset, w), projective_module(a, w)).isomorphic


def test_check_hw_on_the_catalog(hw_example):
    a, poset = hw_example
    report = check_hw(a, poset)
    assert report.verdict and report.failing_clause is None
    for w, entry in report.per_weight.items():
        assert entry.end_dim == 1 and entry.st1 and entry.st1_prime
        assert entry.st2 and entry.st2_prime
        entry.filtration.verify()
        assert is_adapted(entry.filtration, poset, w)
        assert entry.costandard.dims[w] == 1


def test_dual_numbers_fail_st1(dual_numbers):
    a, poset = dual_numbers
    report = check_hw(a, poset)
    assert not report.verdict
    assert report.failing_clause == "st1"
    assert report.per_weight["1"].end_dim == 2
    # the filtration search is skipped once st1 has failed
    assert report.per_weight["1"].st2 is None
    assert "st1 failed" in report.message


def test_two_cycle_fails_st2_for_both_total_orders(two_cycle):
    a, _ = two_cycle
    for order in linear_orders(a.vertices):
        report = check_hw(a, order)
        assert not report.verdict
        assert report.failing_clause == "st2"


def test_exm_order_is_not_adapted(exm):
    a, poset = exm
    report = check_hw(a, poset)
    assert not report.verdict
    assert report.failing_clause == "st2'"
    assert "P(1)" in report.message
    entry = report.per_weight["1"]
    # P(1) is an extension of Δ(1) by Δ(3), and 3 is not above 1
    assert entry.st2 and not entry.st2_prime
    assert entry.filtration.labels == ["3", "1"]
    assert not is_adapted(entry.filtration, poset, "1")
    assert report.per_weight["2"].st2_prime
    assert delta_filtration(projective_module(a, "1"), poset, top_weight="1") is None
    with pytest.raises(CyclicRelation):
        canonical_poset(standard_modules(a, poset))
    with pytest.raises(ResolutionBoundExceeded):
        global_dimension_bound(a)


def test_exm_has_no_highest_weight_order(exm):
    a, poset = exm
    orders = linear_orders(a.vertices)
    assert len(orders) == 6
    for order in orders:
        report = check_hw(a, order)
        assert not report.verdict, order.to_text()
        assert report.failing_clause in {"st1", "st2", "st2'"}
    with pytest.raises(ValueError):
        hw_equivalent(a, poset, orders[0])


def test_auslander_standards_are_not_projective(auslander):
    a, poset = auslander
    assert a.dim == 5
    assert a.cartan_matrix() == [[1, 1], [1, 2]]
    assert is_isomorphic(standard_module(a, poset, "1"), projective_module(a, "1")).isomorphic
    assert is_isomorphic(standard_module(a, poset, "2"), simple_module(a, "2")).isomorphic
    assert costandard_module(a, poset, "1").dimension_vector() == (1, 1)
    assert costandard_module(a, poset, "2").dimension_vector() == (0, 1)
    report = check_hw(a, poset)
    assert report.verdict
    # P(2) has Δ(2) on top of Δ(1)
    assert report.per_weight["2"].filtration.labels == ["1", "2"]
    assert report.per_weight["1"].filtration.labels == ["1"]


def test_auslander_reversed_order_fails(auslander):
    a, _ = auslander
    report = check_hw(a, WeightPoset.chain(["1", "2"]))
    assert not report.verdict
    # Δ(2) = P(2) and End(P(2)) = e_2Ae_2 has dimension 2
    assert report.failing_clause == "st1"
    assert report.per_weight["2"].end_dim == 2


def test_local_endomorphism_ring_is_reported(dual_numbers, caplog):
    a, poset = dual_numbers
    with caplog.at_level(logging.WARNING, logger="QH_Toolkit"):
        check_hw(a, poset)
    assert any("is local of dimension 2" in r.getMessage() for r in caplog.records)


def test_rationals_use_trace_layers():
    a, _ = _build(A3.replace("GF(5)", "QQ"))
    poset = WeightPoset.chain(["1", "2", "3"])
    report = check_hw(a, poset)
    assert report.verdict
    assert {r.membership_method for r in report.per_weight.values()} == {"trace"}
    with pytest.raises(ValueError):
        delta_filtration(projective_module(a, "1"), poset)


def test_membership_of_small_modules(a2):
    a, poset = a2
    assert not delta_membership(simple_module(a, "1"), poset).member
    assert delta_membership(simple_module(a, "2"), poset).member
    found = delta_membership(projective_module(a, "1"), poset, method="trace")
    assert found.member and found.witness.labels == ["1"]
    assert delta_multiplicities(projective_module(a, "1"), poset) == {"1": 1, "2": 0}


def test_reciprocity(hw_example):
    a, poset = hw_example
    for (lam, mu), (filtered, composition) in reciprocity_table(check_hw(a, poset)).items():
        assert filtered == composition, (lam, mu)


def test_orthogonality(hw_example):
    a, poset = hw_example
    for (lam, mu), (hom, degrees) in orthogonality_table(a, poset).items():
        assert hom == (1 if lam == mu else 0)
        assert degrees == []


def test_canonical_poset_is_dominated_by_the_order(hw_example):
    a, poset = hw_example
    standards = standard_modules(a, poset)
    canonical = canonical_poset(standards)
    assert dominates(poset, canonical.opposite())
    assert verify_standarizable(standards, canonical.opposite()).ok


def test_simples_of_a_cycle_have_no_canonical_poset(two_cycle):
    a, _ = two_cycle
    with pytest.raises(CyclicRelation):
        canonical_poset(simple_collection(a))


def test_simples_are_standarizable_for_a_directed_quiver():
    a, _ = _build(A3)
    simples = simple_collection(a)
    canonical = canonical_poset(simples)
    assert canonical.lt("2", "1") and canonical.lt("3", "2")
    report = verify_standarizable(simples, canonical.opposite())
    assert report.ok
    bad = verify_standarizable(simples, canonical)
    assert not bad.ok
    assert {v.clause for v in bad.violations} == {"Ext1"}


def test_equivalence_over_all_total_orders():
    a, _ = _build(A3)
    orders = linear_orders(a.vertices)
    assert len(orders) == 6
    reports = {o: check_hw(a, o) for o in orders}
    assert all(r.verdict for r in reports.values())
    classes: list[list[WeightPoset]] = []
    for o in orders:
        for cls in classes:
            if hw_equivalent(a, cls[0], o, reports=(reports[cls[0]], reports[o])).equivalent:
                cls.append(o)
                break
        else:
            classes.append([o])
    assert len(classes) == 5
    merged = [cls for cls in classes if len(cls) == 2]
    assert [sorted(o.linear_extension() for o in cls) for cls in merged] == [[["1", "3", "2"], ["3", "1", "2"]]]


def test_equivalence_needs_highest_weight(two_cycle):
    a, _ = two_cycle
    with pytest.raises(ValueError):
        hw_equivalent(a, WeightPoset.chain(["1", "2"]), WeightPoset.chain(["2", "1"]))
