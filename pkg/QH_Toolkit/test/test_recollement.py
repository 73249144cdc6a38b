"""
Idempotent recollements: functors, adjunction checks, the kernel of the
counit, membership through counits and strictness.
"""

from QH_Toolkit import config
from QH_Toolkit.core.rep import is_isomorphic, kernel, projective_module, simple_module
from QH_Toolkit.data.corpus import module_corpus
from QH_Toolkit.theory.hw import canonical_poset, standard_modules
from QH_Toolkit.theory.recollement import (
    counit_failures,
    kernel_lemma_check,
    l1_istar,
    recollement_at,
    recollement_for_ideal,
    serre_simples,
    strictness_report,
    thin_membership,
    verify_pack,
)


def test_pack_for_the_middle_vertex(exm):
    a, _ = exm
    pack = recollement_for_ideal(a, ["2"])
    assert pack.corner_weights == ("1", "3")
    assert pack.serre_weights == ("2",)
    assert pack.corner.dim == 4
    assert pack.quotient.dim == 1
    assert serre_simples(pack) == {"2"}


def test_restriction_and_induction_of_projectives(exm):
    a, _ = exm
    pack = recollement_for_ideal(a, ["2"])
    for c in pack.corner_weights:
        p = projective_module(a, c)
        n = pack.restrict(p)
        assert n.dimension_vector() == (p.dims["1"], p.dims["3"])
        induced = pack.induce(n)
        assert pack.unit(n, induced).is_isomorphism()
        assert pack.counit(p, induced).is_isomorphism()


def test_istar_and_push(exm):
    a, _ = exm
    pack = recollement_for_ideal(a, ["2"])
    top = pack.istar(projective_module(a, "2"))
    assert top.dimension == 1
    assert is_isomorphic(pack.push(top), simple_module(a, "2")).isomorphic
    assert pack.istar(projective_module(a, "1")).is_zero()


def test_pack_checks_on_a_corpus(exm, a2, incidence4):
    for (a, _), serre in ((exm, ["2"]), (exm, ["1", "2"]), (a2, ["1"]), (incidence4, ["1"])):
        pack = recollement_for_ideal(a, serre)
        check = verify_pack(pack, module_corpus(a, size=10))
        assert check.ok, check.failures
        assert check.checked == 10


def test_kernel_of_the_counit(hw_example):
    a, poset = hw_example
    canonical = canonical_poset(standard_modules(a, poset))
    corpus = module_corpus(a, poset, size=config.KERNEL_LEMMA_MODULES, max_dim=config.FUZZ_MAX_DIM)
    for w in a.vertices:
        pack = recollement_at(a, canonical, w, corpus_size=0)
        # projectives lie in F(Δ), so their counits are injective
        assert all(kernel(pack.counit(projective_module(a, v))).is_zero() for v in a.vertices)
        for m in corpus:
            assert kernel_lemma_check(pack, m), (w, m.name)


def test_counit_kernel_of_a_simple(a2):
    a, _ = a2
    pack = recollement_for_ideal(a, ["1"])
    l1 = simple_module(a, "1")
    assert kernel(pack.counit(l1)).is_zero()
    assert l1_istar(pack, l1).is_zero()
    l2 = simple_module(a, "2")
    # j_!j^*L(2) = P(2) = L(2): the counit is an isomorphism
    assert pack.counit(l2).is_isomorphism()


def test_recollement_at_a_weight(a2):
    a, poset = a2
    pack = recollement_at(a, poset, "1")
    assert pack.serre_weights == ("1",)
    assert pack.corner_weights == ("2",)


def test_counit_membership(a2):
    a, poset = a2
    assert counit_failures(a, poset, simple_module(a, "1")) == ["2"]
    assert not thin_membership(a, poset, simple_module(a, "1"))
    assert thin_membership(a, poset, simple_module(a, "2"))
    assert thin_membership(a, poset, projective_module(a, "1"))


def test_strictness_fails_for_the_middle_vertex(exm):
    a, poset = exm
    rows = strictness_report(a, poset, ["2"])
    assert len(rows) == 1
    (row,) = rows
    assert (row.lower, row.upper) == (("1", "2"), ("2", "3"))
    assert (row.whole, row.first, row.second) == (4, 1, 1)
    assert not row.strict


def test_strictness_holds_for_a_product(semisimple):
    a, poset = semisimple
    (row,) = strictness_report(a, poset, [])
    assert (row.whole, row.first, row.second) == (2, 1, 1)
    assert row.strict
