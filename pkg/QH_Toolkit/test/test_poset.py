"""
Weight posets: parsing, closure, ideals and domination.
"""

import pytest

from QH_Toolkit.errors import CyclicRelation, UnknownWeight
from QH_Toolkit.theory.poset import WeightPoset, dominates, linear_orders


def test_parse_chains_and_clauses():
    p = WeightPoset.parse(["1", "2", "3"], "1<2<3")
    assert p.lt("1", "3")
    assert p.to_text() == "1<2,2<3"
    q = WeightPoset.parse(["1", "2", "3"], "2<1,2<3")
    assert not q.comparable("1", "3")
    assert WeightPoset.parse(["1", "2"], "discrete") == WeightPoset.discrete(["1", "2"])
    with pytest.raises(ValueError):
        WeightPoset.parse(["1", "2"], "1<")


def test_cycles_and_unknown_weights():
    with pytest.raises(CyclicRelation):
        WeightPoset(["1", "2"], [("1", "2"), ("2", "1")])
    with pytest.raises(UnknownWeight):
        WeightPoset(["1"], [("1", "9")])
    with pytest.raises(UnknownWeight):
        WeightPoset.discrete(["1"]).principal_lower("2")


def test_principal_ideals():
    p = WeightPoset.parse(["1", "2", "3", "4"], "4<2<1,4<3<1")
    assert p.principal_lower("1") == ["1", "2", "3", "4"]
    assert p.strictly_below("2") == ["4"]
    assert p.principal_upper("4") == ["1", "2", "3", "4"]
    assert p.strictly_above("3") == ["1"]
    assert p.minimal_elements() == ["4"]
    assert p.maximal_elements(["2", "3", "4"]) == ["2", "3"]


def test_lower_ideals_of_a_diamond():
    p = WeightPoset.parse(["1", "2", "3", "4"], "4<2<1,4<3<1")
    ideals = p.lower_ideals()
    assert ideals[0] == ()
    assert ideals[-1] == ("1", "2", "3", "4")
    assert len(ideals) == 6
    assert all(p.is_lower_ideal(i) for i in ideals)
    assert not p.is_lower_ideal(["2"])


def test_opposite_and_restriction():
    p = WeightPoset.chain(["2", "1"])
    assert p.opposite() == WeightPoset.chain(["1", "2"])
    assert p.opposite().opposite() == p
    r = WeightPoset.chain(["3", "2", "1"]).restrict(["1", "3"])
    assert r.lt("3", "1")


def test_domination():
    discrete = WeightPoset.discrete(["1", "2", "3"])
    orders = linear_orders(["1", "2", "3"])
    assert len(orders) == 6
    assert all(dominates(o, discrete) for o in orders)
    assert not dominates(discrete, orders[0])
    with pytest.raises(ValueError):
        dominates(discrete, WeightPoset.discrete(["1"]))


def test_linear_extension_respects_the_order():
    p = WeightPoset.parse(["1", "2", "3"], "3<1")
    order = p.linear_extension()
    assert order.index("3") < order.index("1")
    assert len(p.linear_extensions()) == 3
