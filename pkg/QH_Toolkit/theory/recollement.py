"""Idempotent recollements.

For corner weights C with e = Σ_{c∈C} e_c a pack holds the corner algebra
eAe, the quotient A/AeA (whose simples are the Serre weights) and the
functors

    j^*(M) = M·e                 restriction to the corner
    j_!(N) = N ⊗_{eAe} eA        induction
    i^*(M) = M / M·AeA           largest quotient killed by e
    i_*(N)                       A/AeA-modules seen over A

j_!N is the quotient of ⊕_c N_c ⊗ e_cA = ⊕ P(c)^{dim N_c} by the relations
(n·γ) ⊗ x - n ⊗ γx for the arrows γ of eAe, so it has explicit coordinates
and the counit j_!j^*M -> M is induced by n ⊗ x ↦ n·x.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from QH_Toolkit import config
from QH_Toolkit.core.bqa import BoundQuiverAlgebra, corner_algebra, quotient_by_idempotent_ideal, reduce_modulo
from QH_Toolkit.core.exactla import ExactMatrix, vstack
from QH_Toolkit.core.homalg import presentation
from QH_Toolkit.core.rep import (
    ModuleMorphism,
    QuotientWitness,
    Representation,
    cokernel,
    direct_sum,
    hom_space,
    image,
    is_isomorphic,
    kernel,
    make_submodule,
    projective_module,
    quotient,
    trace_submodule,
    yoneda_morphism,
)
from QH_Toolkit.errors import InvariantBreach
from QH_Toolkit.pipeline.nodes import fan_out
from QH_Toolkit.theory.hw import canonical_poset, standard_modules
from QH_Toolkit.theory.poset import WeightPoset


log = logging.getLogger(__name__)


@dataclass(eq=False)
class Induced:
    """j_!N as a quotient of the tensor space ⊕ P(c), one summand per basis vector of N_c."""

    source: Representation
    tensor: Representation
    summands: list[tuple[str, int]]
    offsets: dict[tuple[str, int], dict[str, int]]
    witness: QuotientWitness

    @property
    def module(self) -> Representation:
        return self.witness.module


def _sparse_arrows(a: BoundQuiverAlgebra) -> dict[str, tuple[dict, str, str]]:
    return {n: ({a.arrow_index(n): a.field.one}, ar.source, ar.target) for n, ar in a.arrows.items()}


def _lifted_arrows(a: BoundQuiverAlgebra, b: BoundQuiverAlgebra) -> dict[str, tuple[dict, str, str]]:
    """Arrows of a corner or quotient b of a, as sparse elements of a."""
    if b is a:
        return _sparse_arrows(a)
    keep = b.origin.extra["embedding"]
    return {n: ({keep[k]: c for k, c in enumerate(b.origin.arrow_elements[n]) if c}, ar.source, ar.target)
            for n, ar in b.arrows.items()}


@dataclass(eq=False)
class RecollementPack:
    algebra: BoundQuiverAlgebra
    corner_weights: tuple[str, ...]
    serre_weights: tuple[str, ...]
    corner: BoundQuiverAlgebra
    quotient: BoundQuiverAlgebra

    def __repr__(self) -> str:
        return f"<RecollementPack corner={list(self.corner_weights)} serre={list(self.serre_weights)}>"

    @cached_property
    def corner_elements(self) -> dict[str, tuple[dict, str, str]]:
        return _lifted_arrows(self.algebra, self.corner)

    @cached_property
    def quotient_elements(self) -> dict[str, tuple[dict, str, str]]:
        return _lifted_arrows(self.algebra, self.quotient)

    @cached_property
    def arrow_images(self) -> dict[str, dict[int, object]]:
        """Arrows of A between Serre weights, as sparse elements of A/AeA."""
        a, q = self.algebra, self.quotient
        if q is a:
            return {n: el for n, (el, _, _) in _sparse_arrows(a).items()}
        origin = q.origin
        keep = origin.extra["embedding"]
        serre = set(self.serre_weights)
        out = {}
        for n, ar in a.arrows.items():
            if ar.source not in serre or ar.target not in serre:
                continue
            dense = reduce_modulo(origin.extra["ideal"], origin.extra["pivots"],
                                  {a.arrow_index(n): a.field.one}, a.dim, a.field)
            coords = origin.to_presented([dense[k] for k in keep])
            out[n] = {i: c for i, c in enumerate(coords) if c}
        return out

    # ─────────────────────────────────────────────
    # j^*, j_!
    # ─────────────────────────────────────────────
    def restrict(self, m: Representation) -> Representation:
        """j^*M = M·e over the corner algebra."""
        dims = {v: m.dims[v] for v in self.corner.vertices}
        action = {n: m.element_matrix(el, s, t) for n, (el, s, t) in self.corner_elements.items()}
        return Representation(self.corner, dims, action, name=f"j*{m.name}" if m.name else "", check=False)

    def induce(self, n: Representation) -> Induced:
        """j_!N = N ⊗_{eAe} eA."""
        a = self.algebra
        field = a.field
        summands = [(c, i) for c in self.corner.vertices for i in range(n.dims[c])]
        tensor = direct_sum(a, [projective_module(a, c) for c, _ in summands]).module
        offsets, running = {}, {v: 0 for v in a.vertices}
        for c, i in summands:
            offsets[(c, i)] = dict(running)
            for v in a.vertices:
                running[v] += len(a.paths_between(c, v))
        position = {(c, v): {k: j for j, k in enumerate(a.paths_between(c, v))}
                    for c in self.corner.vertices for v in a.vertices}

        rows: dict[str, list[list]] = {v: [] for v in a.vertices}
        for name, (g, c, c2) in self.corner_elements.items():
            act = n.action[name]
            for i in range(n.dims[c]):
                for v in a.vertices:
                    for x in a.paths_between(c2, v):
                        row = [field.zero] * tensor.dims[v]
                        for j in range(n.dims[c2]):
                            if act[i, j]:
                                row[offsets[(c2, j)][v] + position[(c2, v)][x]] += act[i, j]
                        for k, coef in a.product(g, {x: field.one}).items():
                            row[offsets[(c, i)][v] + position[(c, v)][k]] -= coef
                        if any(row):
                            rows[v].append(row)
        spans = {v: ExactMatrix(field, r, (len(r), tensor.dims[v])) for v, r in rows.items() if r}
        witness = quotient(make_submodule(tensor, spans), name=f"j!{n.name}" if n.name else "")
        return Induced(n, tensor, summands, offsets, witness)

    def unit(self, n: Representation, induced: Induced | None = None) -> ModuleMorphism:
        """N -> j^*j_!N, n ↦ n ⊗ e_c."""
        a = self.algebra
        induced = induced if induced is not None else self.induce(n)
        target = self.restrict(induced.module)
        blocks = {}
        for c in self.corner.vertices:
            at = a.paths_between(c, c).index(a.idempotents[c])
            rows = [induced.offsets[(c, i)][c] + at for i in range(n.dims[c])]
            blocks[c] = induced.witness.projection.blocks[c].take_rows(rows)
        return ModuleMorphism(n, target, blocks)

    def induce_morphism(self, phi: ModuleMorphism) -> ModuleMorphism:
        """j_!(φ) for a morphism of corner modules."""
        a = self.algebra
        field = a.field
        src, tgt = self.induce(phi.source), self.induce(phi.target)
        blocks = {}
        for v in a.vertices:
            rows = []
            for c, i in src.summands:
                for k in range(len(a.paths_between(c, v))):
                    row = [field.zero] * tgt.tensor.dims[v]
                    for j in range(phi.target.dims[c]):
                        if phi.blocks[c][i, j]:
                            row[tgt.offsets[(c, j)][v] + k] = phi.blocks[c][i, j]
                    rows.append(row)
            blocks[v] = ExactMatrix(field, rows, (src.tensor.dims[v], tgt.tensor.dims[v]))
        lifted = ModuleMorphism(src.tensor, tgt.tensor, blocks, check=False).then(tgt.witness.projection)
        return src.witness.descend(lifted)

    def counit(self, m: Representation, induced: Induced | None = None) -> ModuleMorphism:
        """ε_M: j_!j^*M -> M; `induced` may pass a precomputed j_!j^*M."""
        a = self.algebra
        field = a.field
        induced = induced if induced is not None else self.induce(self.restrict(m))
        maps = []
        for c, i in induced.summands:
            unit_vector = [field.one if k == i else field.zero for k in range(m.dims[c])]
            maps.append(yoneda_morphism(m, c, unit_vector))
        blocks = {v: vstack(field, [f.blocks[v] for f in maps], m.dims[v]) for v in a.vertices}
        return induced.witness.descend(ModuleMorphism(induced.tensor, m, blocks, check=False))

    # ─────────────────────────────────────────────
    # i^*, i_*
    # ─────────────────────────────────────────────
    def _over_quotient(self, x: Representation, name: str) -> Representation:
        dims = {v: x.dims[v] for v in self.quotient.vertices}
        action = {n: x.element_matrix(el, s, t) for n, (el, s, t) in self.quotient_elements.items()}
        return Representation(self.quotient, dims, action, name=name)

    def istar_witness(self, m: Representation) -> tuple[QuotientWitness, Representation]:
        """M ↠ M/M·AeA together with the quotient as an A/AeA-module."""
        top = quotient(trace_submodule(m, self.corner_weights))
        return top, self._over_quotient(top.module, f"i*{m.name}" if m.name else "")

    def istar(self, m: Representation) -> Representation:
        return self.istar_witness(m)[1]

    def push(self, n: Representation) -> Representation:
        """i_*N: an A/AeA-module as an A-module supported on the Serre weights."""
        a = self.algebra
        dims = {v: n.dims.get(v, 0) for v in a.vertices}
        action = {name: n.element_matrix(el, a.arrows[name].source, a.arrows[name].target)
                  for name, el in self.arrow_images.items()}
        return Representation(a, dims, action, name=f"i_*{n.name}" if n.name else "")


# ─────────────────────────────────────────────
# Building packs
# ─────────────────────────────────────────────
def recollement_for_ideal(a: BoundQuiverAlgebra, serre_weights: Iterable[str]) -> RecollementPack:
    """Pack whose Serre part has simples `serre_weights`; the corner is the complement."""
    serre = {a.check_vertex(w) for w in serre_weights}
    corner = tuple(v for v in a.vertices if v not in serre)
    pack = RecollementPack(
        algebra=a,
        corner_weights=corner,
        serre_weights=tuple(v for v in a.vertices if v in serre),
        corner=corner_algebra(a, corner),
        quotient=quotient_by_idempotent_ideal(a, corner) if corner else a,
    )
    serre_simples(pack)
    log.info("recollement of %s: corner %s (dim %d), quotient dim %d",
             a.name or "A", list(corner), pack.corner.dim, pack.quotient.dim)
    return pack


def recollement_at(a: BoundQuiverAlgebra, poset: WeightPoset, weight: str, *,
                   corpus_size: int = config.PACK_CHECK_MODULES) -> RecollementPack:
    """Pack for the lower ideal Λ ∖ {μ : μ ⪰ λ}, verified on a seeded corpus."""
    key = ("pack", poset, weight)
    if key in a.cache:
        return a.cache[key]
    pack = recollement_for_ideal(a, poset.principal_upper(weight))
    if corpus_size:
        from QH_Toolkit.data.corpus import module_corpus

        check = verify_pack(pack, module_corpus(a, size=corpus_size))
        if not check.ok:
            raise InvariantBreach(f"recollement at {weight} fails: {check.failures[0]}")
    a.cache[key] = pack
    return pack


def serre_simples(pack: RecollementPack) -> set[str]:
    """Weights of the simples in the Serre part: the vertices of A/AeA."""
    found = set(pack.quotient.vertices)
    if found != set(pack.algebra.vertices) - set(pack.corner_weights):
        raise InvariantBreach(f"quotient vertices {sorted(found)} are not the complement of the corner")
    return found


@dataclass(eq=False)
class PackCheck:
    checked: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_pack(pack: RecollementPack, corpus: Sequence[Representation], *,
                seed: int = config.RANDOM_SEED) -> PackCheck:
    """j^*j_! ≅ id, the adjunction on Hom dimensions, the sequence j_!j^*M -> M -> i_*i^*M -> 0,
    and monomorphism reflection along j_!."""
    rng = np.random.default_rng(seed)
    failures = []
    restricted = [pack.restrict(m) for m in corpus]
    for m, n in zip(corpus, restricted):
        label = m.name or "M"
        induced = pack.induce(n)
        if not pack.unit(n, induced).is_isomorphism():
            failures.append(f"j*j! is not the identity on j*{label}")
        eps = pack.counit(m, induced)
        trace = trace_submodule(m, pack.corner_weights)
        if not (image(eps).contains(trace) and trace.contains(image(eps))):
            failures.append(f"image of the counit on {label} is not M·AeA")
        if cokernel(eps).module.dimension != pack.istar(m).dimension:
            failures.append(f"cokernel of the counit on {label} is not i_*i^*{label}")
    for k, (m, n) in enumerate(zip(corpus, restricted)):
        m2, n2 = corpus[(k + 1) % len(corpus)], restricted[(k + 1) % len(corpus)]
        if hom_space(pack.induce(n).module, m2).dim != hom_space(n, pack.restrict(m2)).dim:
            failures.append(f"Hom(j!j*{m.name or 'M'}, {m2.name or 'M'}) breaks the adjunction")
        homs = hom_space(n, n2)
        if homs.dim:
            phi = homs.random_element(rng)
            if pack.induce_morphism(phi).is_injective() and not phi.is_injective():
                failures.append(f"j! does not reflect monomorphisms on j*{m.name or 'M'}")
    return PackCheck(len(corpus), failures)


# ─────────────────────────────────────────────
# Derived functor and the kernel of the counit
# ─────────────────────────────────────────────
def counit(pack: RecollementPack, m: Representation) -> ModuleMorphism:
    return pack.counit(m)


def l1_istar(pack: RecollementPack, m: Representation) -> Representation:
    """L^1 i^*M = ker(i^*Ω -> i^*P) for Ω ↪ P ↠ M the projective presentation."""
    pres = presentation(m)
    omega_top, omega_q = pack.istar_witness(pres.omega)
    cover_top, cover_q = pack.istar_witness(pres.cover)
    induced = omega_top.descend(pres.syzygy.inclusion.then(cover_top.projection))
    f = ModuleMorphism(omega_q, cover_q, {v: induced.blocks[v] for v in pack.quotient.vertices}, check=False)
    out = kernel(f).module
    out.name = f"L1i*{m.name}" if m.name else ""
    return out


def kernel_lemma_check(pack: RecollementPack, m: Representation) -> bool:
    """ker(j_!j^*M -> M) ≅ i_*L^1 i^*M."""
    left = kernel(pack.counit(m)).module
    right = pack.push(l1_istar(pack, m))
    return is_isomorphic(left, right).isomorphic


# ─────────────────────────────────────────────
# Membership through counits
# ─────────────────────────────────────────────
def _canonical_order(a: BoundQuiverAlgebra, poset: WeightPoset) -> WeightPoset:
    key = ("Λ_can", poset)
    if key not in a.cache:
        a.cache[key] = canonical_poset(standard_modules(a, poset))
    return a.cache[key]


def _counit_fails(a: BoundQuiverAlgebra, canonical: WeightPoset, m: Representation, weight: str) -> bool:
    return not recollement_at(a, canonical, weight).counit(m).is_injective()


def counit_failures(a: BoundQuiverAlgebra, poset: WeightPoset, m: Representation) -> list[str]:
    """Weights λ whose counit for the canonical order of the Δ-collection is not injective on M."""
    canonical = _canonical_order(a, poset)
    fails = fan_out(_counit_fails, list(a.vertices), a, canonical, m)
    return [w for w, failed in zip(a.vertices, fails) if failed]


def thin_membership(a: BoundQuiverAlgebra, poset: WeightPoset, m: Representation) -> bool:
    """M ∈ F(Δ) iff every counit ε_λ is a monomorphism on M."""
    return not counit_failures(a, poset, m)


# ─────────────────────────────────────────────
# Strictness of the filtration by lower ideals
# ─────────────────────────────────────────────
class StrictnessRow(NamedTuple):
    lower: tuple[str, ...]
    upper: tuple[str, ...]
    whole: int
    first: int
    second: int

    @property
    def strict(self) -> bool:
        return self.whole == self.first + self.second


def _layer_dim(a: BoundQuiverAlgebra, ideal: Sequence[str], core: Sequence[str]) -> int:
    """dim of the algebra of A_I / A_K: the corner on I ∖ K of A/A e_{Λ∖I} A."""
    outside = [v for v in a.vertices if v not in ideal]
    b = quotient_by_idempotent_ideal(a, outside)
    return corner_algebra(b, [v for v in b.vertices if v not in core]).dim


def strictness_report(a: BoundQuiverAlgebra, poset: WeightPoset, core: Iterable[str]) -> list[StrictnessRow]:
    """For proper lower ideals I, J with I ∩ J = K and I ∪ J = Λ: dims of A/A_K, A_I/A_K and A_J/A_K."""
    k = set(core)
    whole = corner_algebra(a, [v for v in a.vertices if v not in k]).dim
    ideals = [i for i in poset.lower_ideals() if len(i) < len(a.vertices)]
    rows = []
    for first, second in combinations(ideals, 2):
        if set(first) & set(second) != k or set(first) | set(second) != set(a.vertices):
            continue
        row = StrictnessRow(first, second, whole, _layer_dim(a, first, k), _layer_dim(a, second, k))
        log.info("strictness I=%s J=%s: %d against %d + %d", first, second, row.whole, row.first, row.second)
        rows.append(row)
    return rows
