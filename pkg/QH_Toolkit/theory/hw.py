"""Highest weight structure: standard and costandard modules, Δ-filtrations,
membership criteria, standarizable collections and canonical posets.

Conventions: Δ(λ) is the largest quotient of P(λ) whose composition factors
are L(μ) with μ ⪯ λ; ∇(λ) is obtained from the standard module of the
opposite algebra by k-duality. (st1) asks End(Δ(λ)) = k, (st2) asks that
every P(λ) has a filtration with factors Δ(μ). The highest weight check
asks for the adapted form (st2'): Δ(λ) on top of P(λ), over factors Δ(μ)
with μ ≻ λ. On orders that are not adapted (st2) can hold while (st2')
fails.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from QH_Toolkit import config
from QH_Toolkit.core.bqa import BoundQuiverAlgebra
from QH_Toolkit.core.exactla import ExactMatrix, complement_rows, projective_points, solve, solve_left, vstack
from QH_Toolkit.core.homalg import ext, global_dimension_bound
from QH_Toolkit.core.rep import (
    ModuleMorphism,
    QuotientWitness,
    Representation,
    SubmoduleWitness,
    composition_factors,
    dualize,
    generated_submodule,
    hom_space,
    is_isomorphic,
    kernel,
    make_submodule,
    projective_module,
    quotient,
    simple_module,
    socle,
    top,
    trace_submodule,
    yoneda_morphism,
)
from QH_Toolkit.errors import InvariantBreach, SearchBudgetExceeded
from QH_Toolkit.theory.poset import WeightPoset, dominates


log = logging.getLogger(__name__)


def _check_poset(a: BoundQuiverAlgebra, poset: WeightPoset) -> None:
    if set(poset.elements) != set(a.vertices):
        raise ValueError(f"poset on {sorted(poset.elements)} does not match the vertices {list(a.vertices)}")


# ─────────────────────────────────────────────
# Standard and costandard modules
# ─────────────────────────────────────────────
def standard_quotient(a: BoundQuiverAlgebra, poset: WeightPoset, weight: str) -> QuotientWitness:
    """P(λ) ↠ Δ(λ) = P(λ) / trace of {P(ν) : ν ⋠ λ}.

    A single trace suffices: any map P(ν) -> P(λ)/U lifts to P(λ), so the
    trace in the quotient is the image of the trace in P(λ).
    """
    _check_poset(a, poset)
    a.check_vertex(weight)
    key = ("Δ", poset, weight)
    if key in a.cache:
        return a.cache[key]
    p = projective_module(a, weight)
    killed = [v for v in a.vertices if not poset.leq(v, weight)]
    q = quotient(trace_submodule(p, killed), name=f"Δ({weight})")
    stray = [v for v in composition_factors(q.module) if not poset.leq(v, weight)]
    if stray:
        raise InvariantBreach(f"Δ({weight}) has composition factors {stray} outside I_{weight}")
    a.cache[key] = q
    return q


def standard_module(a: BoundQuiverAlgebra, poset: WeightPoset, weight: str) -> Representation:
    return standard_quotient(a, poset, weight).module


def standard_module_iterated(a: BoundQuiverAlgebra, poset: WeightPoset, weight: str) -> Representation:
    """Δ(λ) by repeatedly dividing out traces until none is left."""
    _check_poset(a, poset)
    killed = [v for v in a.vertices if not poset.leq(v, weight)]
    current = projective_module(a, weight)
    while True:
        tr = trace_submodule(current, killed)
        if tr.is_zero():
            return current
        current = quotient(tr, name=f"Δ({weight})").module


def costandard_module(a: BoundQuiverAlgebra, poset: WeightPoset, weight: str) -> Representation:
    """∇(λ) = D Δ_{A^op}(λ); its socle is L(λ)."""
    key = ("∇", poset, weight)
    if key in a.cache:
        return a.cache[key]
    nabla = dualize(standard_module(a.opposite, poset, weight), name=f"∇({weight})")
    if nabla.algebra is not a:
        raise InvariantBreach("opposite of the opposite algebra is not the algebra itself")
    soc = socle(nabla)
    if soc.dimension != 1 or soc.module.dims[weight] != 1:
        raise InvariantBreach(f"socle of ∇({weight}) is not L({weight})")
    a.cache[key] = nabla
    return nabla


def standard_modules(a: BoundQuiverAlgebra, poset: WeightPoset) -> dict[str, Representation]:
    return {w: standard_module(a, poset, w) for w in a.vertices}


def costandard_modules(a: BoundQuiverAlgebra, poset: WeightPoset) -> dict[str, Representation]:
    return {w: costandard_module(a, poset, w) for w in a.vertices}


# ─────────────────────────────────────────────
# Filtrations
# ─────────────────────────────────────────────
@dataclass(eq=False)
class FiltrationWitness:
    """0 = M_0 ⊂ M_1 ⊂ ... ⊂ M_n = M with surjections M_i ↠ Δ(λ_i) killing exactly M_{i-1}."""

    module: Representation
    chain: list[SubmoduleWitness]
    labels: list[str]
    surjections: list[ModuleMorphism]

    def __len__(self) -> int:
        return len(self.labels)

    def multiplicities(self) -> dict[str, int]:
        counts = {v: 0 for v in self.module.algebra.vertices}
        for w in self.labels:
            counts[w] += 1
        return counts

    def verify(self) -> None:
        m = self.module
        if not self.chain:
            if not m.is_zero():
                raise InvariantBreach("empty filtration of a nonzero module")
            return
        if self.chain[-1].dimension != m.dimension:
            raise InvariantBreach("filtration does not end at the module")
        previous: SubmoduleWitness | None = None
        for sub, w, f in zip(self.chain, self.labels, self.surjections):
            if f.source is not sub.module or not f.is_surjective():
                raise InvariantBreach(f"step onto Δ({w}) is not a surjection from its filtration piece")
            lower = previous.dimension if previous is not None else 0
            if sub.dimension - lower != f.target.dimension:
                raise InvariantBreach(f"step onto Δ({w}) has the wrong kernel dimension")
            if previous is not None:
                for v in m.algebra.vertices:
                    rows = previous.basis[v]
                    if not rows.nrows:
                        continue
                    coords = solve_left(sub.basis[v], rows)
                    if coords is None:
                        raise InvariantBreach("filtration pieces are not nested")
                    if not (coords @ f.blocks[v]).is_zero():
                        raise InvariantBreach(f"step onto Δ({w}) does not kill the previous piece")
            previous = sub
        if sum(f.target.dimension for f in self.surjections) != m.dimension:
            raise InvariantBreach("factor dimensions do not add up")


class _FiltrationSearch:
    """Backtracking over surjections onto standard modules, peeling factors off the top."""

    def __init__(self, m: Representation, standards: Mapping[str, Representation], budget: int,
                 rng: np.random.Generator, top_weight: str | None = None, above: frozenset[str] | None = None):
        self.m = m
        self.top_weight = top_weight
        self.above = above
        self.standards = dict(standards)
        self.budget = budget
        self.rng = rng
        a = m.algebra
        position = {v: i for i, v in enumerate(a.vertices)}
        self.order = sorted((w for w, d in self.standards.items() if not d.is_zero()),
                            key=lambda w: (-self.standards[w].dimension, position[w]))
        self.vectors = {w: self.standards[w].dimension_vector() for w in self.order}
        self.failed: set[tuple] = set()
        self.decomposable_memo: dict[tuple, bool] = {}
        self.nodes = 0
        self.sampled = False

    def decomposable(self, vec: tuple[int, ...], start: int = 0) -> bool:
        """Whether vec is a nonnegative integer combination of the Δ dimension vectors."""
        if not any(vec):
            return True
        if start == len(self.order):
            return False
        key = (vec, start)
        if key in self.decomposable_memo:
            return self.decomposable_memo[key]
        d = self.vectors[self.order[start]]
        found, current = False, vec
        while all(x >= 0 for x in current):
            if self.decomposable(current, start + 1):
                found = True
                break
            current = tuple(x - y for x, y in zip(current, d))
        self.decomposable_memo[key] = found
        return found

    def surjections(self, x: Representation, w: str):
        target = self.standards[w]
        hom = hom_space(x, target)
        if hom.dim == 0:
            return
        if x.field.is_finite and hom.dim <= config.HOM_ENUMERATION_DIM:
            candidates = (hom.combine(c) for c in projective_points(x.field, hom.dim))
        else:
            if not self.sampled:
                log.warning("Hom(-, Δ(%s)) has dimension %d; sampling surjections", w, hom.dim)
            self.sampled = True
            candidates = (hom.random_element(self.rng) for _ in range(config.ISO_RANDOM_TRIALS))
        for f in candidates:
            if f.is_surjective():
                yield f

    def allowed(self, first: bool) -> list[str]:
        if self.top_weight is None:
            return self.order
        if first:
            return [w for w in self.order if w == self.top_weight]
        return [w for w in self.order if w in self.above]

    def explore(self, sub: SubmoduleWitness, first: bool = False) -> list | None:
        x = sub.module
        if x.is_zero():
            return []
        key = (first, sub.key())
        if key in self.failed:
            return None
        heads = top(x).module.dims
        size = x.dimension_vector()
        for w in self.allowed(first):
            if not heads[w]:
                continue
            rest = tuple(s - d for s, d in zip(size, self.vectors[w]))
            if any(r < 0 for r in rest) or not self.decomposable(rest):
                continue
            seen: set[tuple] = set()
            for f in self.surjections(x, w):
                self.nodes += 1
                if self.nodes > self.budget:
                    raise SearchBudgetExceeded(f"Δ-filtration search for {self.m.name or 'M'} "
                                               f"exceeded {self.budget} nodes")
                inner = _compose(kernel(f), sub)
                inner_key = inner.key()
                if inner_key in seen:
                    continue
                seen.add(inner_key)
                tail = self.explore(inner)
                if tail is not None:
                    return [(w, f, sub)] + tail
        self.failed.add(key)
        return None


def _compose(inner: SubmoduleWitness, outer: SubmoduleWitness) -> SubmoduleWitness:
    """A submodule of a submodule, re-expressed in the outer ambient coordinates."""
    ambient = outer.ambient
    basis = {}
    for v in ambient.algebra.vertices:
        rows = inner.basis[v]
        basis[v] = rows @ outer.basis[v] if rows.nrows else ExactMatrix.zeros(ambient.field, 0, ambient.dims[v])
    return SubmoduleWitness(ambient, basis, inner.module)


def _whole(m: Representation) -> SubmoduleWitness:
    return SubmoduleWitness(m, {v: ExactMatrix.identity(m.field, m.dims[v]) for v in m.algebra.vertices}, m)


def delta_filtration(m: Representation, poset: WeightPoset, *,
                     standards: Mapping[str, Representation] | None = None,
                     budget: int = config.SEARCH_NODE_BUDGET,
                     rng: np.random.Generator | None = None,
                     top_weight: str | None = None) -> FiltrationWitness | None:
    """A verified Δ-filtration of M, or None when none exists.

    Needs a finite field. A negative is only returned when every surjection
    was enumerated; sampled searches that fail raise SearchBudgetExceeded.
    With `top_weight` λ the top factor must be Δ(λ) and every other factor
    Δ(μ) with μ ≻ λ.
    """
    if not m.field.is_finite:
        raise ValueError("constructive filtration search needs a finite field; use delta_membership")
    a = m.algebra
    standards = standards if standards is not None else standard_modules(a, poset)
    above = None
    if top_weight is not None:
        above = frozenset(v for v in a.vertices if poset.lt(top_weight, v))
    search = _FiltrationSearch(m, standards, budget,
                               rng if rng is not None else np.random.default_rng(config.RANDOM_SEED),
                               top_weight, above)
    if not search.decomposable(m.dimension_vector()):
        log.debug("%s: dimension vector is not a sum of Δ dimension vectors", m.name or "M")
        return None
    steps = search.explore(_whole(m), first=True)
    log.debug("Δ-filtration search for %s visited %d nodes", m.name or "M", search.nodes)
    if steps is None:
        if search.sampled:
            raise SearchBudgetExceeded(f"no Δ-filtration of {m.name or 'M'} found, "
                                       "but some surjections were only sampled")
        return None
    steps.reverse()
    witness = FiltrationWitness(m, [s for _, _, s in steps], [w for w, _, _ in steps], [f for _, f, _ in steps])
    witness.verify()
    return witness


def trace_filtration(m: Representation, poset: WeightPoset) -> FiltrationWitness | None:
    """Δ-filtration read off the traces of P(λ_1), P(λ_1) ⊕ P(λ_2), ... for λ_1, λ_2, ...
    a linear refinement of Λ from the top.

    Works over any field. A returned witness is always valid; None is exact
    once (A, Λ) is known to be highest weight, since then each trace layer of
    an F(Δ) module is a sum of copies of one Δ(λ).
    """
    a = m.algebra
    _check_poset(a, poset)
    chain, labels, surjections = [], [], []
    lower = make_submodule(m, {})
    done: list[str] = []
    for lam in reversed(poset.linear_extension()):
        done.append(lam)
        upper = trace_submodule(m, done)
        fresh = complement_rows(lower.basis[lam], m.dims[lam]) if m.dims[lam] else []
        if not fresh:
            continue
        dq = standard_quotient(a, poset, lam)
        layer = [u - l for u, l in zip(upper.dimension_vector(), lower.dimension_vector())]
        if sum(layer) != len(fresh) * dq.module.dimension:
            return None
        if any(d and not poset.leq(v, lam) for v, d in zip(a.vertices, layer)):
            return None
        gens = ExactMatrix.unit_rows(m.field, fresh, m.dims[lam])
        for k in range(len(fresh)):
            spans = {v: lower.basis[v] for v in a.vertices}
            spans[lam] = vstack(m.field, [lower.basis[lam], gens.take_rows(range(k + 1))], m.dims[lam])
            piece = generated_submodule(m, spans)
            previous = chain[-1] if chain else make_submodule(m, {})
            surjections.append(_layer_map(previous, piece, gens.take_rows([k]), lam, dq))
            chain.append(piece)
            labels.append(lam)
        lower = upper
    if lower.dimension != m.dimension:
        raise InvariantBreach("traces of all projectives do not exhaust the module")
    witness = FiltrationWitness(m, chain, labels, surjections)
    witness.verify()
    return witness


def _layer_map(previous: SubmoduleWitness, piece: SubmoduleWitness, x: ExactMatrix, lam: str,
               dq: QuotientWitness) -> ModuleMorphism:
    """piece ↠ piece/previous ≅ Δ(λ), where piece/previous is generated by the image of x."""
    field = piece.ambient.field
    a = piece.ambient.algebra
    if piece.dimension - previous.dimension != dq.module.dimension:
        raise InvariantBreach(f"trace layer of weight {lam} is not a sum of copies of Δ({lam})")
    inner = make_submodule(piece.module, {v: solve_left(piece.basis[v], previous.basis[v])
                                          for v in a.vertices if previous.basis[v].nrows})
    layer = quotient(inner)
    x_local = solve_left(piece.basis[lam], x) @ layer.projection.blocks[lam]
    y = yoneda_morphism(layer.module, lam, x_local.row(0))
    blocks = {}
    for v in a.vertices:
        g = solve(y.blocks[v], dq.projection.blocks[v]) if y.blocks[v].nrows else \
            ExactMatrix.zeros(field, layer.module.dims[v], dq.module.dims[v])
        if g is None:
            raise InvariantBreach(f"trace layer of weight {lam} is not isomorphic to Δ({lam})")
        blocks[v] = g
    return layer.projection.then(ModuleMorphism(layer.module, dq.module, blocks))


def nabla_filtration(m: Representation, poset: WeightPoset, **kwargs) -> FiltrationWitness | None:
    """∇-filtration of M, as a Δ-filtration of D(M) over the opposite algebra."""
    return delta_filtration(dualize(m), poset, **kwargs)


class Membership(NamedTuple):
    member: bool
    witness: FiltrationWitness | None
    method: str


def membership_by_ext(m: Representation, tilting: Representation, *, cap: int = config.RESOLUTION_CAP) -> bool:
    """M ∈ F(Δ) iff Ext^i(M, T) = 0 for 1 <= i <= gl.dim."""
    bound = global_dimension_bound(m.algebra, cap=cap)
    for i in range(1, bound + 1):
        if not ext(m, tilting, i, cap=cap).is_zero():
            log.debug("Ext^%d(%s, T) is nonzero", i, m.name or "M")
            return False
    return True


def delta_membership(m: Representation, poset: WeightPoset, *, method: str = "auto",
                     budget: int = config.SEARCH_NODE_BUDGET, cap: int = config.RESOLUTION_CAP) -> Membership:
    """M ∈ F(Δ) by `filtration` (search), `trace` or `ext`.

    `auto` searches over finite fields and uses the Ext criterion over the
    rationals; the Ext criterion presupposes a verified highest weight
    structure.
    """
    if method == "auto":
        method = "filtration" if m.field.is_finite else "ext"
    if method == "filtration":
        witness = delta_filtration(m, poset, budget=budget)
        return Membership(witness is not None, witness, method)
    if method == "trace":
        witness = trace_filtration(m, poset)
        return Membership(witness is not None, witness, method)
    if method == "ext":
        from QH_Toolkit.theory.envelope import characteristic_tilting

        tilting = characteristic_tilting(m.algebra, poset).module
        return Membership(membership_by_ext(m, tilting, cap=cap), None, method)
    raise ValueError(f"unknown membership method {method!r}")


def is_adapted(witness: FiltrationWitness, poset: WeightPoset, weight: str) -> bool:
    """Δ(λ) is the top factor and all factors below it are Δ(μ) with μ ≻ λ."""
    if not witness.labels or witness.labels[-1] != weight:
        return False
    return all(poset.lt(weight, mu) for mu in witness.labels[:-1])


def adapted_filtration(a: BoundQuiverAlgebra, poset: WeightPoset, weight: str, *, method: str = "auto",
                       budget: int = config.SEARCH_NODE_BUDGET) -> Membership:
    """Δ-filtration of P(λ) whose kernel of P(λ) ↠ Δ(λ) is filtered by Δ(μ), μ ≻ λ.

    The search is constrained directly. Trace layers are canonical, so over
    the rationals the layers of P(λ) are read off and then checked.
    """
    if method == "auto":
        method = "filtration" if a.field.is_finite else "trace"
    p = projective_module(a, weight)
    if method == "filtration":
        witness = delta_filtration(p, poset, budget=budget, top_weight=weight)
    elif method == "trace":
        witness = trace_filtration(p, poset)
        if witness is not None and not is_adapted(witness, poset, weight):
            log.info("trace layers of P(%s) are %s, not adapted to %s", weight, witness.labels, poset.to_text())
            witness = None
    else:
        raise ValueError(f"unknown method {method!r} for the projective check")
    return Membership(witness is not None, witness, method)


def delta_multiplicities(m: Representation, poset: WeightPoset) -> dict[str, int]:
    """(M : Δ(λ)) = dim Hom(M, ∇(λ)) for M ∈ F(Δ)."""
    a = m.algebra
    return {w: hom_space(m, costandard_module(a, poset, w)).dim for w in a.vertices}


# ─────────────────────────────────────────────
# Highest weight check
# ─────────────────────────────────────────────
@dataclass(eq=False)
class WeightReport:
    weight: str
    standard: Representation
    costandard: Representation | None = None
    end_dim: int = 0
    top_multiplicity: int = 0
    st1: bool = False
    filtration: FiltrationWitness | None = None
    st2: bool | None = None
    st2_prime: bool | None = None
    membership_method: str = ""

    @property
    def st1_prime(self) -> bool:
        """Factors of ker(Δ(λ) -> L(λ)) lie strictly below λ."""
        return self.top_multiplicity == 1


@dataclass(eq=False)
class HwReport:
    algebra: BoundQuiverAlgebra
    poset: WeightPoset
    per_weight: dict[str, WeightReport]
    verdict: bool
    failing_clause: str | None = None
    message: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def standards(self) -> dict[str, Representation]:
        return {w: r.standard for w, r in self.per_weight.items()}

    @property
    def costandards(self) -> dict[str, Representation]:
        return {w: r.costandard for w, r in self.per_weight.items()}

    def __bool__(self) -> bool:
        return self.verdict


def check_hw(a: BoundQuiverAlgebra, poset: WeightPoset, *,
             budget: int = config.SEARCH_NODE_BUDGET, cap: int = config.RESOLUTION_CAP) -> HwReport:
    """Run the standards -> costandards -> filtrations workflow and report (st1), (st2) and (st2')."""
    from QH_Toolkit.pipeline.graph import run_check_hw

    _check_poset(a, poset)
    return run_check_hw(a, poset, budget=budget, cap=cap)


# ─────────────────────────────────────────────
# Collections, canonical posets, equivalence
# ─────────────────────────────────────────────
def _nonzero_hom_or_ext(x: Representation, y: Representation) -> bool:
    return hom_space(x, y).dim > 0 or not ext(x, y, 1).is_zero()


def canonical_poset(collection: Mapping[str, Representation]) -> WeightPoset:
    """Smallest order with i ⪯ j whenever Hom(E_j, E_i) or Ext^1(E_j, E_i) is nonzero."""
    weights = list(collection)
    pairs = [(i, j) for i in weights for j in weights
             if i != j and _nonzero_hom_or_ext(collection[j], collection[i])]
    poset = WeightPoset(weights, pairs)
    log.info("canonical poset: %s", poset.to_text())
    return poset


class Violation(NamedTuple):
    first: str
    second: str
    clause: str


@dataclass(eq=False)
class StandarizableReport:
    poset: WeightPoset
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def verify_standarizable(collection: Mapping[str, Representation], poset: WeightPoset) -> StandarizableReport:
    """End(E(λ)) = k, Ext^1(E(λ), E(λ)) = 0, and Hom, Ext^1 from E(λ) to E(μ) vanish unless λ ≺ μ."""
    violations = []
    for lam, e in collection.items():
        if hom_space(e, e).dim != 1:
            violations.append(Violation(lam, lam, "End"))
        if not ext(e, e, 1).is_zero():
            violations.append(Violation(lam, lam, "Ext1"))
    for lam, e in collection.items():
        for mu, f in collection.items():
            if lam == mu or poset.lt(lam, mu):
                continue
            if hom_space(e, f).dim:
                violations.append(Violation(lam, mu, "Hom"))
            if not ext(e, f, 1).is_zero():
                violations.append(Violation(lam, mu, "Ext1"))
    return StandarizableReport(poset, violations)


class EquivalenceVerdict(NamedTuple):
    equivalent: bool
    canonical: WeightPoset
    explanation: str


def hw_equivalent(a: BoundQuiverAlgebra, poset: WeightPoset, other: WeightPoset, *,
                  reports: Sequence[HwReport] | None = None) -> EquivalenceVerdict:
    """Same standard modules iff Λ_Δ^op is dominated by the other order; both routes are computed."""
    if reports is None:
        reports = (check_hw(a, poset), check_hw(a, other))
    for r in reports:
        if not r.verdict:
            raise ValueError(f"({a.name or 'A'}, {r.poset.to_text()}) is not a highest weight structure")
    mine = standard_modules(a, poset)
    theirs = standard_modules(a, other)
    canonical = canonical_poset(mine)
    by_domination = dominates(other, canonical.opposite())
    same = all(is_isomorphic(mine[w], theirs[w]).isomorphic for w in a.vertices)
    if by_domination != same:
        raise InvariantBreach(f"domination says {by_domination} but the standard modules say {same}")
    if same:
        why = f"Λ_Δ^op = {canonical.opposite().to_text()} is dominated by {other.to_text()}"
    else:
        differing = [w for w in a.vertices if not is_isomorphic(mine[w], theirs[w]).isomorphic]
        why = f"Λ_Δ^op = {canonical.opposite().to_text()} is not dominated; Δ differs at {differing}"
    return EquivalenceVerdict(same, canonical, why)


# ─────────────────────────────────────────────
# Tables
# ─────────────────────────────────────────────
def reciprocity_table(report: HwReport) -> dict[tuple[str, str], tuple[int, int]]:
    """(λ, μ) -> ((P(λ) : Δ(μ)) read off the witness, [∇(μ) : L(λ)])."""
    table = {}
    for lam, r in report.per_weight.items():
        if r.filtration is None:
            raise ValueError(f"no Δ-filtration recorded for P({lam})")
        counts = r.filtration.multiplicities()
        for mu, s in report.per_weight.items():
            table[(lam, mu)] = (counts[mu], s.costandard.dims[lam])
    return table


def orthogonality_table(a: BoundQuiverAlgebra, poset: WeightPoset, *,
                        cap: int = config.RESOLUTION_CAP) -> dict[tuple[str, str], tuple[int, list[int]]]:
    """(λ, μ) -> (dim Hom(Δ(λ), ∇(μ)), degrees i with Ext^i(Δ(λ), ∇(μ)) != 0)."""
    bound = global_dimension_bound(a, cap=cap)
    table = {}
    for lam in a.vertices:
        d = standard_module(a, poset, lam)
        for mu in a.vertices:
            n = costandard_module(a, poset, mu)
            degrees = [i for i in range(1, bound + 1) if not ext(d, n, i, cap=cap).is_zero()]
            table[(lam, mu)] = (hom_space(d, n).dim, degrees)
    return table


def simple_collection(a: BoundQuiverAlgebra) -> dict[str, Representation]:
    return {w: simple_module(a, w) for w in a.vertices}
