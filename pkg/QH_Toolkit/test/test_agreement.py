"""
Filtration search, Ext vanishing against T and injectivity of counits decide
the same membership in F(Δ) on seeded corpora.
"""

from QH_Toolkit import config
from QH_Toolkit.data.corpus import module_corpus
from QH_Toolkit.errors import SearchBudgetExceeded
from QH_Toolkit.theory.hw import delta_membership, trace_filtration
from QH_Toolkit.theory.recollement import thin_membership


def test_three_membership_criteria_agree(hw_example):
    a, poset = hw_example
    decided, exhausted, members = 0, 0, 0
    corpus = module_corpus(a, poset, size=config.FUZZ_MODULES, max_dim=config.FUZZ_MAX_DIM)
    for m in corpus:
        by_ext = delta_membership(m, poset, method="ext").member
        by_counit = thin_membership(a, poset, m)
        assert by_ext == by_counit, m.name
        try:
            found = delta_membership(m, poset, method="filtration")
        except SearchBudgetExceeded:
            exhausted += 1
            continue
        assert found.member == by_ext, m.name
        if found.member:
            found.witness.verify()
            members += 1
        decided += 1
    assert decided + exhausted == len(corpus)
    assert exhausted <= len(corpus) // 50
    assert members > 0


def test_trace_layers_agree_with_the_search(hw_example):
    a, poset = hw_example
    for m in module_corpus(a, poset, size=25, max_dim=config.FUZZ_MAX_DIM):
        try:
            searched = delta_membership(m, poset, method="filtration", budget=20_000).member
        except SearchBudgetExceeded:
            continue
        assert (trace_filtration(m, poset) is not None) == searched, m.name
