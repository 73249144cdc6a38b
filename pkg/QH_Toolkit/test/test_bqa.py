"""
Bound quiver algebras: path reduction, opposites, corners and idempotent quotients.
"""

import pytest

from QH_Toolkit.core.bqa import (
    Arrow,
    Path,
    QuiverPresentation,
    build_algebra,
    corner_algebra,
    idempotent_ideal,
    opposite,
    quotient_by_idempotent_ideal,
)
from QH_Toolkit.errors import NonAdmissible, ParseError


def test_semisimple_basis(semisimple):
    a, _ = semisimple
    assert a.dim == 2
    assert [str(p) for p in a.basis] == ["e_1", "e_2"]


def test_a2_basis(a2):
    a, _ = a2
    assert a.dim == 3
    assert [str(p) for p in a.basis] == ["e_1", "e_2", "a"]
    assert a.cartan_matrix() == [[1, 1], [0, 1]]


def test_exm_strictness_dimension(exm):
    a, _ = exm
    assert a.dim == 17
    assert a.cartan_matrix() == [[1, 2, 1], [2, 5, 2], [1, 2, 1]]


def test_paths_compose_left_to_right(exm):
    a, _ = exm
    p = a.presentation
    # b*a: 2 -> 1 -> 2 survives while a*b: 1 -> 2 -> 1 is a relation
    assert a.path_element(p.path(["b", "a"]))
    assert not a.path_element(p.path(["a", "b"]))


def test_idempotents_sum_to_one(exm):
    a, _ = exm
    one = {}
    for v in a.vertices:
        one[a.idempotents[v]] = a.field.one
    for i in range(a.dim):
        x = {i: a.field.one}
        assert a.product(one, x) == x == a.product(x, one)


def test_opposite_is_an_involution(exm):
    a, _ = exm
    op = opposite(a)
    assert op.opposite is a
    assert all(op.mult[(j, i)] == v for (i, j), v in a.mult.items())
    assert op.cartan_matrix() == [list(r) for r in zip(*a.cartan_matrix())]


def test_opposite_of_a2_reverses_the_arrow(a2):
    a, _ = a2
    op = a.opposite
    assert op.arrows["a"] == Arrow("a", "2", "1")
    assert op.cartan_matrix() == [[1, 0], [1, 1]]


def test_non_homogeneous_relations(gf5):
    p = QuiverPresentation(
        gf5, ("1", "2", "3", "4", "5"),
        (Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("d", "1", "4"), Arrow("e", "4", "5"), Arrow("f", "5", "3")),
        (((gf5.one, ("a", "b")), (-gf5.one, ("d", "e", "f"))),),
    )
    a = build_algebra(p)
    assert a.dim == 13
    assert a.path_element(p.path(["d", "e", "f"])) == a.path_element(p.path(["a", "b"]))


def test_loop_without_relations_is_not_admissible(gf5):
    p = QuiverPresentation(gf5, ("1",), (Arrow("x", "1", "1"),), (), path_length_bound=4)
    with pytest.raises(NonAdmissible):
        build_algebra(p)


def test_relation_terms_need_length_two(gf5):
    with pytest.raises(ParseError):
        QuiverPresentation(gf5, ("1", "2"), (Arrow("a", "1", "2"),), (((gf5.one, ("a",)),),))


def test_relation_paths_must_be_parallel(gf5):
    arrows = (Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "2", "2"))
    rel = ((gf5.one, ("a", "b")), (gf5.one, ("a", "c")))
    with pytest.raises(ParseError):
        QuiverPresentation(gf5, ("1", "2", "3"), arrows, (rel,))


def test_corner_on_all_vertices_is_the_algebra(exm):
    a, _ = exm
    assert corner_algebra(a, a.vertices) is a


def test_corner_matches_the_two_vertex_presentation(exm):
    a, _ = exm
    corner = corner_algebra(a, ["1", "3"])
    assert corner.dim == 4
    assert corner.vertices == ("1", "3")
    assert corner.cartan_matrix() == [[1, 1], [1, 1]]
    (x,) = [n for n, ar in corner.arrows.items() if (ar.source, ar.target) == ("1", "3")]
    (y,) = [n for n, ar in corner.arrows.items() if (ar.source, ar.target) == ("3", "1")]
    f = a.field
    reference = build_algebra(QuiverPresentation(
        f, ("1", "3"), corner.presentation.arrows,
        (((f.one, (x, y)),), ((f.one, (y, x)),)),
    ))
    assert reference.basis == corner.basis
    assert reference.mult == corner.mult
    # the arrows are the composites a*c and d*b of the big algebra
    keep = corner.origin.extra["embedding"]
    lifted = {str(a.basis[keep[k]]) for n in (x, y) for k, c in enumerate(corner.origin.arrow_elements[n]) if c}
    assert lifted == {"a*c", "d*b"}


def test_single_vertex_corner_is_the_field(exm):
    a, _ = exm
    assert corner_algebra(a, ["3"]).dim == 1


def test_idempotent_quotients(exm, a2):
    a, _ = exm
    q = quotient_by_idempotent_ideal(a, ["2"])
    assert q.vertices == ("1", "3")
    assert q.dim == 2
    assert quotient_by_idempotent_ideal(a, ["1", "2"]).dim == 1
    assert quotient_by_idempotent_ideal(a, a.vertices).dim == 0
    b, _ = a2
    q2 = quotient_by_idempotent_ideal(b, ["1"])
    assert q2.vertices == ("2",)
    assert q2.dim == 1


def test_quotient_needs_a_vertex(a2):
    a, _ = a2
    with pytest.raises(ValueError):
        quotient_by_idempotent_ideal(a, [])


def test_quotient_dimension_bookkeeping(exm, incidence4, a2):
    for a, _ in (exm, incidence4, a2):
        for v in a.vertices:
            ideal, _ = idempotent_ideal(a, [v])
            assert quotient_by_idempotent_ideal(a, [v]).dim == a.dim - ideal.nrows


def test_corner_and_quotient_dimensions_agree_with_paths(exm):
    a, _ = exm
    corner = corner_algebra(a, ["1", "3"])
    direct = sum(1 for p in a.basis if p.source in ("1", "3") and p.target in ("1", "3"))
    assert corner.dim == direct


def test_path_element_of_a_trivial_path(a2):
    a, _ = a2
    assert a.path_element(Path("1", "1")) == {a.idempotents["1"]: a.field.one}
