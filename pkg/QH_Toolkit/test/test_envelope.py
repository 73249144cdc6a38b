"""
Thin collections, abelian envelopes, tilting modules and Ringel duality.
"""

import pytest

from QH_Toolkit.core.bqa import build_algebra
from QH_Toolkit.core.homalg import universal_extension
from QH_Toolkit.core.rep import is_isomorphic, projective_module, simple_module
from QH_Toolkit.data.ingestion import parse_algebra_text
from QH_Toolkit.errors import CyclicRelation
from QH_Toolkit.theory.envelope import (
    EndomorphismAlgebra,
    characteristic_tilting,
    double_ringel_dual,
    is_envelope_fixed_point,
    left_envelope,
    relative_injectives,
    relative_projectives,
    right_envelope,
    ringel_dual,
    ringel_routes,
    square_zero_check,
    thin_collection,
)
from QH_Toolkit.theory.hw import costandard_modules, simple_collection, standard_modules


A3 = "field GF(5)\nvertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\nend\n"


def test_thin_collection_validation(two_cycle, dual_numbers):
    with pytest.raises(ValueError):
        thin_collection({})
    with pytest.raises(CyclicRelation):
        thin_collection(simple_collection(two_cycle[0]))
    # L has a self-extension over k[x]/(x^2)
    with pytest.raises(ValueError):
        thin_collection(simple_collection(dual_numbers[0]))


def test_relative_projectives_of_standards_are_projective(hw_example):
    a, poset = hw_example
    relative = relative_projectives(thin_collection(standard_modules(a, poset)))
    for w, p in relative.modules.items():
        assert is_isomorphic(p, projective_module(a, w)).isomorphic
        assert relative.maps[w].is_surjective()
    assert all(report.verdict for report in relative.square_zero)


def test_relative_injectives_of_a2(a2):
    a, poset = a2
    relative = relative_injectives(thin_collection(standard_modules(a, poset)))
    assert relative.modules["1"].dimension_vector() == (1, 1)
    assert relative.modules["2"].dimension_vector() == (0, 1)
    assert relative.layers == {"1": [], "2": []}
    assert all(relative.maps[w].is_injective() for w in a.vertices)


def test_square_zero_step(a2):
    a, _ = a2
    step = universal_extension(simple_module(a, "1"), simple_module(a, "2"))
    report = square_zero_check(step)
    assert report.end_dim == 1
    assert report.kernel_dim == report.expected_dim == 0
    assert report.verdict


def test_endomorphism_algebra_of_the_regular_module(exm):
    a, _ = exm
    end = EndomorphismAlgebra({w: projective_module(a, w) for w in a.vertices})
    assert end.algebra.dim == a.dim
    assert end.algebra.cartan_matrix() == a.cartan_matrix()


def test_right_envelope_of_standards_recovers_the_algebra(hw_example):
    a, poset = hw_example
    result = right_envelope(thin_collection(standard_modules(a, poset)))
    assert result.cartan() == a.cartan_matrix()
    assert result.report.verdict
    assert is_envelope_fixed_point(result)


def test_left_envelope_of_costandards_recovers_the_algebra(hw_example):
    a, poset = hw_example
    result = left_envelope(thin_collection(costandard_modules(a, poset)))
    assert result.cartan() == a.cartan_matrix()
    assert result.report.verdict


def test_right_envelope_of_simples_of_a_directed_quiver():
    a = build_algebra(parse_algebra_text(A3))
    result = right_envelope(thin_collection(simple_collection(a)))
    assert result.cartan() == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    assert all(t.dimension == 1 for t in result.transports.values())


def test_tilting_module_of_a2(a2):
    a, poset = a2
    t = characteristic_tilting(a, poset)
    assert t.dims() == {"1": (1, 1), "2": (0, 1)}
    assert is_isomorphic(t.summands["1"], projective_module(a, "1")).isomorphic
    assert all(t.inflations[w].is_injective() for w in a.vertices)


def test_ringel_dual_of_a2(a2):
    a, poset = a2
    dual = ringel_dual(a, poset)
    assert dual.algebra.dim == 3
    assert dual.cartan() == [[1, 1], [0, 1]]
    assert dual.poset == poset.opposite()
    assert dual.report.verdict


def test_tilting_module_of_the_auslander_algebra(auslander):
    a, poset = auslander
    t = characteristic_tilting(a, poset)
    assert t.dims() == {"1": (1, 2), "2": (0, 1)}
    # T(1) is the projective-injective P(2), strictly larger than Δ(1) = P(1)
    assert is_isomorphic(t.summands["1"], projective_module(a, "2")).isomorphic
    assert is_isomorphic(t.summands["2"], simple_module(a, "2")).isomorphic
    assert all(t.inflations[w].is_injective() for w in a.vertices)
    dual = ringel_dual(a, poset)
    assert dual.algebra.dim == 5
    assert dual.cartan() == [[2, 1], [1, 1]]
    assert dual.poset == poset.opposite()
    assert dual.report.verdict


def test_relative_injectives_of_the_auslander_algebra(auslander):
    a, poset = auslander
    relative = relative_injectives(thin_collection(standard_modules(a, poset)))
    assert relative.modules["1"].dimension_vector() == (1, 2)
    assert all(relative.maps[w].is_injective() for w in a.vertices)
    assert all(report.verdict for report in relative.square_zero)


def test_ringel_routes_agree(hw_example):
    a, poset = hw_example
    assert ringel_routes(a, poset).agree


def test_double_ringel_dual(hw_example):
    a, poset = hw_example
    twice = double_ringel_dual(a, poset)
    assert twice.matches
    assert twice.second.poset == poset
