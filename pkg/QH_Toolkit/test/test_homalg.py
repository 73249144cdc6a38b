"""
Syzygies, Ext groups, conflations and universal (co)extensions.
"""

import pytest

from QH_Toolkit.core.exactla import ExactMatrix
from QH_Toolkit.core.homalg import (
    ext,
    ext_map,
    extension_class,
    global_dimension_bound,
    presentation,
    realize_extension,
    resolution,
    syzygy,
    universal_coextension,
    universal_extension,
)
from QH_Toolkit.core.rep import (
    ModuleMorphism,
    injective_module,
    is_isomorphic,
    projective_module,
    simple_module,
)
from QH_Toolkit.errors import ResolutionBoundExceeded


def test_presentation_of_a_simple(a2):
    a, _ = a2
    pres = presentation(simple_module(a, "1"))
    assert pres.summands == ("1",)
    assert pres.omega.dimension_vector() == (0, 1)
    assert pres.epi.is_surjective()


def test_ext_on_the_a2_quiver(a2):
    a, _ = a2
    l1, l2 = simple_module(a, "1"), simple_module(a, "2")
    assert ext(l1, l2, 1).dim == 1
    assert ext(l2, l1, 1).dim == 0
    assert ext(l1, l2, 2).dim == 0
    assert global_dimension_bound(a) == 1


def test_projectives_have_no_ext(exm):
    a, _ = exm
    for v in a.vertices:
        for w in a.vertices:
            assert ext(projective_module(a, v), simple_module(a, w), 1).is_zero()
            assert ext(simple_module(a, w), injective_module(a, v), 1).is_zero()


def test_ext1_between_simples_counts_arrows(exm):
    a, _ = exm
    for v in a.vertices:
        for w in a.vertices:
            arrows = sum(1 for ar in a.arrows.values() if (ar.source, ar.target) == (v, w))
            assert ext(simple_module(a, v), simple_module(a, w), 1).dim == arrows


def test_semisimple_has_global_dimension_zero(semisimple):
    a, _ = semisimple
    assert global_dimension_bound(a) == 0


def test_dual_numbers_never_stop(dual_numbers):
    a, _ = dual_numbers
    l = simple_module(a, "1")
    for i in range(1, 5):
        assert ext(l, l, i).dim == 1
    with pytest.raises(ResolutionBoundExceeded):
        global_dimension_bound(a, cap=6)
    with pytest.raises(ResolutionBoundExceeded):
        resolution(l, 10, cap=4)


def test_resolution_stops_at_a_zero_syzygy(a2):
    a, _ = a2
    chain = resolution(simple_module(a, "1"), 5)
    assert len(chain) == 2
    assert syzygy(simple_module(a, "1"), 2).is_zero()


def test_realized_extensions(a2):
    a, _ = a2
    l1, l2 = simple_module(a, "1"), simple_module(a, "2")
    space = ext(l1, l2, 1)
    nonsplit = realize_extension(space, [a.field.one])
    nonsplit.verify()
    assert is_isomorphic(nonsplit.middle, projective_module(a, "1")).isomorphic
    assert any(extension_class(space, nonsplit))
    split = realize_extension(space, [a.field.zero])
    assert not any(extension_class(space, split))
    assert not is_isomorphic(split.middle, projective_module(a, "1")).isomorphic


def test_ext_map_of_the_identity(a2):
    a, _ = a2
    l1, l2 = simple_module(a, "1"), simple_module(a, "2")
    space = ext(l1, l2, 1)
    assert ext_map(space, space, ModuleMorphism.identity(l2)) == ExactMatrix.identity(a.field, 1)


def test_universal_extension_kills_ext(a2, exm):
    a, _ = a2
    step = universal_extension(simple_module(a, "1"), simple_module(a, "2"))
    assert step.multiplicity == 1
    assert is_isomorphic(step.middle, projective_module(a, "1")).isomorphic
    assert ext(step.middle, simple_module(a, "2"), 1).is_zero()
    b, _ = exm
    q, t = simple_module(b, "2"), simple_module(b, "1")
    step = universal_extension(q, t)
    assert step.multiplicity == ext(q, t, 1).dim == 1
    assert step.middle.dimension == q.dimension + t.dimension
    assert ext(step.middle, t, 1).is_zero()


def test_universal_coextension(a2):
    a, _ = a2
    step = universal_coextension(simple_module(a, "2"), simple_module(a, "1"))
    assert step.multiplicity == 1
    assert is_isomorphic(step.middle, injective_module(a, "2")).isomorphic
    assert ext(simple_module(a, "1"), step.middle, 1).is_zero()


def test_universal_extension_without_ext_is_trivial(a2):
    a, _ = a2
    step = universal_extension(simple_module(a, "2"), simple_module(a, "1"))
    assert step.multiplicity == 0
    assert step.middle.dimension == 1
