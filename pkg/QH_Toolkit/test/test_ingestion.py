"""
Algebra and module file formats, and the shipped catalog.
"""

import pytest

from QH_Toolkit.core.bqa import build_algebra
from QH_Toolkit.core.rep import is_isomorphic, projective_module
from QH_Toolkit.data.catalog import CATALOG, HW_EXAMPLES, catalog_path, catalog_text, load_catalog
from QH_Toolkit.data.ingestion import (
    parse_algebra_file,
    parse_algebra_text,
    parse_module_file,
    parse_module_text,
    parse_relation,
    print_algebra,
    print_module,
)
from QH_Toolkit.errors import ParseError, RelationViolation


def test_every_catalog_entry_loads():
    for name in CATALOG:
        a, poset = load_catalog(name)
        assert a.name == name
        assert set(poset.elements) == set(a.vertices)
    assert set(HW_EXAMPLES) <= set(CATALOG)
    assert "exm_strictness" not in HW_EXAMPLES
    with pytest.raises(KeyError):
        catalog_path("missing")


def test_printed_algebras_parse_back():
    for name in CATALOG:
        p = parse_algebra_file(catalog_path(name))
        again = parse_algebra_text(print_algebra(p), name=p.name)
        assert again == p
        assert print_algebra(again) == print_algebra(p)


def test_strictness_file_documents_the_translation():
    text = catalog_text("exm_strictness")
    header = [line for line in text.splitlines() if line.startswith("#")]
    assert any("bdca -> a*c*d*b" in line for line in header)
    assert any("cabd -> d*b*a*c" in line for line in header)
    assert "relation 1 a*c*d*b" in text


def test_relation_terms():
    p = parse_algebra_file(catalog_path("incidence4"))
    (rel,) = p.relations
    assert [w for _, w in rel] == [("a", "c"), ("b", "d")]
    assert p.field.to_text(rel[1][0]) == "4"
    assert parse_relation("a*b", p.field) == ((p.field.one, ("a", "b")),)
    with pytest.raises(ParseError):
        parse_relation("5 a*b", p.field, 3)
    with pytest.raises(ParseError):
        parse_relation("1 a*b +", p.field, 3)


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("# only a comment\n", 1),
        ("field GF(5)\nvertex 1\n", 3),
        ("field GF(5)\nvertex 1\nend\nvertex 2\n", 4),
        ("field GF(5)\nvertex 1\nfrobnicate\nend\n", 3),
        ("field GF(5)\nvertex 1\narrow a 1 9\nend\n", 3),
        ("field GF(5)\nvertex 1\nvertex 2\narrow a 1 2\nrelation 1 a\nend\n", 5),
        ("field GF(6)\nvertex 1\nend\n", 1),
    ],
)
def test_algebra_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as err:
        parse_algebra_text(text)
    assert err.value.line == line


def test_cyclic_order_is_rejected():
    with pytest.raises(ParseError):
        parse_algebra_text("vertex 1\nvertex 2\norder 1 < 2\norder 2 < 1\nend\n")


def test_module_files(a2, tmp_path):
    a, _ = a2
    path = tmp_path / "p1.mod"
    path.write_text("dim 1 1\ndim 2 1\nmap a\n1\nend\n", encoding="utf-8")
    m = parse_module_file(path, a)
    assert m.name == "p1"
    assert is_isomorphic(m, projective_module(a, "1")).isomorphic
    again = parse_module_text(print_module(m), a)
    assert again.dims == m.dims
    assert again.action["a"] == m.action["a"]


def test_module_parse_errors(a2):
    a, _ = a2
    with pytest.raises(ParseError) as err:
        parse_module_text("", a)
    assert err.value.line == 1
    with pytest.raises(ParseError):
        parse_module_text("dim 1 1\nmap a\n", a)
    with pytest.raises(ParseError):
        parse_module_text("map a\ndim 1 1\n", a)
    with pytest.raises(ParseError):
        parse_module_text("dim 7 1\n", a)


def test_relation_violation_on_load(dual_numbers):
    a, _ = dual_numbers
    with pytest.raises(RelationViolation):
        parse_module_text("dim 1 2\nmap x\n0 1\n1 0\nend\n", a)


def test_default_field_and_bound():
    p = parse_algebra_text("vertex 1\nvertex 2\narrow a 1 2\nbound 3\nend\n")
    assert p.path_length_bound == 3
    assert "bound 3" in print_algebra(p)
    assert build_algebra(p).dim == 3
