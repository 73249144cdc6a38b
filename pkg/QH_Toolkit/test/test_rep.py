"""
Representations: structural modules, Hom spaces, traces, duality, isomorphism.
"""

import pytest

from QH_Toolkit.core.exactla import ExactMatrix
from QH_Toolkit.core.rep import (
    ModuleMorphism,
    Representation,
    cokernel,
    composition_factors,
    direct_sum,
    dualize,
    endomorphism_radical,
    generated_submodule,
    hom_space,
    image,
    injective_module,
    is_isomorphic,
    kernel,
    projective_module,
    quotient,
    radical,
    simple_module,
    socle,
    top,
    trace_submodule,
)
from QH_Toolkit.errors import LocalityFailure, RelationViolation, UnknownWeight


def test_simple_modules(semisimple, a2, exm):
    assert simple_module(semisimple[0], "1").dimension_vector() == (1, 0)
    assert simple_module(a2[0], "2").dimension_vector() == (0, 1)
    assert simple_module(exm[0], "2").dimension_vector() == (0, 1, 0)
    with pytest.raises(UnknownWeight):
        simple_module(a2[0], "7")


def test_projectives_and_injectives(semisimple, a2, exm):
    assert projective_module(semisimple[0], "1").dimension_vector() == (1, 0)
    a, _ = a2
    assert projective_module(a, "1").dimension_vector() == (1, 1)
    assert projective_module(a, "2").dimension_vector() == (0, 1)
    assert injective_module(a, "2").dimension_vector() == (1, 1)
    assert injective_module(a, "1").dimension_vector() == (1, 0)
    b, _ = exm
    assert [projective_module(b, v).dimension_vector() for v in b.vertices] == [(1, 2, 1), (2, 5, 2), (1, 2, 1)]


def test_projective_top_and_injective_socle(exm):
    a, _ = exm
    for v in a.vertices:
        assert top(projective_module(a, v)).module.dimension_vector() == simple_module(a, v).dimension_vector()
        assert socle(injective_module(a, v)).dimension_vector() == simple_module(a, v).dimension_vector()


def test_hom_examples(semisimple, a2):
    s, _ = semisimple
    assert hom_space(simple_module(s, "1"), simple_module(s, "2")).dim == 0
    a, _ = a2
    assert hom_space(projective_module(a, "1"), projective_module(a, "1")).dim == 1
    assert hom_space(simple_module(a, "2"), projective_module(a, "1")).dim == 1


def test_hom_dimension_of_projectives_is_the_cartan_entry(exm):
    a, _ = exm
    cartan = a.cartan_matrix()
    for i, u in enumerate(a.vertices):
        for j, v in enumerate(a.vertices):
            homs = hom_space(projective_module(a, v), projective_module(a, u))
            assert homs.dim == cartan[i][j]
            for f in homs:
                f.check()


def test_radical_top_socle(semisimple, a2):
    s, _ = semisimple
    m = direct_sum(s, [simple_module(s, "1"), simple_module(s, "2")]).module
    assert radical(m).is_zero()
    assert top(m).module.dimension == 2
    assert socle(m).dimension == 2
    a, _ = a2
    p = projective_module(a, "1")
    assert radical(p).dimension_vector() == (0, 1)
    assert top(p).module.dimension_vector() == (1, 0)
    for v in a.vertices:
        assert radical(radical(projective_module(a, v)).module).is_zero()


def test_composition_factors(a2, exm):
    a, _ = a2
    assert composition_factors(simple_module(a, "1")) == {"1": 1}
    assert composition_factors(projective_module(a, "1")) == {"1": 1, "2": 1}
    b, _ = exm
    p = projective_module(b, "2")
    assert sum(composition_factors(p).values()) == p.dimension


def test_traces(a2):
    a, _ = a2
    p1 = projective_module(a, "1")
    assert trace_submodule(simple_module(a, "2"), ["1"]).is_zero()
    assert trace_submodule(p1, ["1"]).dimension == p1.dimension
    assert trace_submodule(p1, ["2"]).dimension_vector() == (0, 1)


def test_kernel_image_cokernel(a2):
    a, _ = a2
    p1 = projective_module(a, "1")
    identity = ModuleMorphism.identity(p1)
    assert kernel(identity).is_zero()
    assert image(identity).dimension == p1.dimension
    zero = ModuleMorphism.zero(p1, p1)
    assert kernel(zero).dimension == p1.dimension
    assert image(zero).is_zero()
    (inclusion,) = hom_space(simple_module(a, "2"), p1).basis
    assert inclusion.is_injective()
    coker = cokernel(inclusion).module
    assert is_isomorphic(coker, simple_module(a, "1")).isomorphic


def test_generated_submodule_and_quotient(exm):
    a, _ = exm
    p = projective_module(a, "2")
    gen = generated_submodule(p, {"1": ExactMatrix.identity(a.field, p.dims["1"])})
    assert gen.contains(trace_submodule(p, ["1"]))
    q = quotient(gen)
    assert q.module.dimension == p.dimension - gen.dimension
    assert q.projection.is_surjective()


def test_isomorphism(a2):
    a, _ = a2
    p1 = projective_module(a, "1")
    found = is_isomorphic(p1, p1)
    assert found.isomorphic and found.witness.is_isomorphism()
    assert not is_isomorphic(simple_module(a, "1"), simple_module(a, "2")).isomorphic
    assert is_isomorphic(p1, injective_module(a, "2")).isomorphic
    split = direct_sum(a, [simple_module(a, "1"), simple_module(a, "2")]).module
    assert not is_isomorphic(p1, split).isomorphic


def test_double_dual(exm):
    a, _ = exm
    for v in a.vertices:
        for m in (projective_module(a, v), injective_module(a, v), simple_module(a, v)):
            back = dualize(dualize(m))
            assert back.algebra is a
            assert is_isomorphic(back, m).isomorphic


def test_relation_check_on_load(dual_numbers):
    a, _ = dual_numbers
    x = ExactMatrix.from_rows(a.field, [[0, 1], [1, 0]])
    with pytest.raises(RelationViolation) as err:
        Representation(a, {"1": 2}, {"x": x})
    assert err.value.vertex == "1"
    nilpotent = ExactMatrix.from_rows(a.field, [[0, 1], [0, 0]])
    assert Representation(a, {"1": 2}, {"x": nilpotent}).dimension == 2


def test_local_endomorphism_rings(exm, dual_numbers):
    a, _ = exm
    local = endomorphism_radical(projective_module(a, "2"))
    assert local.dim == 5
    assert len(local.radical) == 4
    d, _ = dual_numbers
    assert len(endomorphism_radical(projective_module(d, "1")).radical) == 1
    doubled = direct_sum(d, [simple_module(d, "1"), simple_module(d, "1")]).module
    with pytest.raises(LocalityFailure):
        endomorphism_radical(doubled)
