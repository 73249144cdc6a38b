"""Syzygies, Ext groups and universal extensions.

Ext^i(M, N) is computed from minimal projective presentations
Ω^i M ↪ P_{i-1} ↠ Ω^{i-1} M as Hom(Ω^i M, N) modulo the restrictions of
Hom(P_{i-1}, N). Classes are represented by cocycles supported on a fixed
complement of that image, so every ExtSpace has a reproducible basis.
"""

from __future__ import annotations

import logging
import weakref
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from QH_Toolkit import config
from QH_Toolkit.core.bqa import BoundQuiverAlgebra
from QH_Toolkit.core.exactla import ExactMatrix, complement_rows, hstack, rref, solve_left, vstack
from QH_Toolkit.core.rep import (
    ModuleMorphism,
    Representation,
    SubmoduleWitness,
    cokernel,
    direct_sum,
    dual_morphism,
    dualize,
    hom_space,
    kernel,
    projective_module,
    radical,
    simple_module,
    yoneda_morphism,
    zero_module,
)
from QH_Toolkit.errors import InvariantBreach, ResolutionBoundExceeded


log = logging.getLogger(__name__)


# ─────────────────────────────────────────────
# Projective presentations
# ─────────────────────────────────────────────
@dataclass(eq=False)
class ProjectivePresentation:
    """Ω ↪ P ↠ M with P the projective cover of M."""

    target: Representation
    cover: Representation
    summands: tuple[str, ...]
    generators: list[tuple]
    epi: ModuleMorphism
    syzygy: SubmoduleWitness

    @property
    def omega(self) -> Representation:
        return self.syzygy.module

    def summand_offsets(self) -> list[dict[str, int]]:
        """Per summand, the first coordinate it occupies at each vertex of the cover."""
        a = self.target.algebra
        offsets, running = [], {v: 0 for v in a.vertices}
        for w in self.summands:
            offsets.append(dict(running))
            p = projective_module(a, w)
            for v in a.vertices:
                running[v] += p.dims[v]
        return offsets


_presentations: "weakref.WeakKeyDictionary[Representation, ProjectivePresentation]" = weakref.WeakKeyDictionary()


def presentation(m: Representation) -> ProjectivePresentation:
    """Projective cover of M with its syzygy."""
    cached = _presentations.get(m)
    if cached is not None:
        return cached
    a = m.algebra
    field = m.field
    rad = radical(m)
    summands: list[str] = []
    generators: list[tuple] = []
    for v in a.vertices:
        for j in complement_rows(rad.basis[v], m.dims[v]):
            summands.append(v)
            generators.append(tuple(field.one if i == j else field.zero for i in range(m.dims[v])))
    cover = direct_sum(a, [projective_module(a, v) for v in summands], name=f"P0[{m.name}]" if m.name else "")
    maps = [yoneda_morphism(m, v, g) for v, g in zip(summands, generators)]
    blocks = {v: vstack(field, [f.blocks[v] for f in maps], m.dims[v]) for v in a.vertices}
    epi = ModuleMorphism(cover.module, m, blocks, check=False)
    if not epi.is_surjective():
        raise InvariantBreach("projective cover is not surjective")
    syz = kernel(epi)
    syz.module.name = f"Ω{m.name}" if m.name else ""
    pres = ProjectivePresentation(m, cover.module, tuple(summands), generators, epi, syz)
    if syz.dimension != cover.module.dimension - m.dimension:
        raise InvariantBreach("syzygy dimension bookkeeping failed")
    _presentations[m] = pres
    return pres


def syzygy(m: Representation, i: int = 1, *, cap: int = config.RESOLUTION_CAP) -> Representation:
    return resolution(m, i, cap=cap)[-1].omega if i else m


def resolution(m: Representation, length: int, *, cap: int = config.RESOLUTION_CAP) -> list[ProjectivePresentation]:
    """Presentations of M, ΩM, ..., Ω^{length-1}M (stops early at a zero syzygy)."""
    chain = []
    current = m
    for i in range(length):
        if i >= cap and not current.is_zero():
            raise ResolutionBoundExceeded(f"Ω^{i}({m.name or 'M'}) is still nonzero at the cap {cap}")
        pres = presentation(current)
        chain.append(pres)
        current = pres.omega
        if current.is_zero():
            break
    return chain


# ─────────────────────────────────────────────
# Ext
# ─────────────────────────────────────────────
class ExtSpace:
    """Ext^degree(source, target) as cocycles Ω^degree(source) -> target modulo coboundaries."""

    def __init__(self, source: Representation, target: Representation, degree: int,
                 pres: ProjectivePresentation | None):
        self.source = source
        self.target = target
        self.degree = degree
        self.presentation = pres
        field = source.field
        if pres is None or pres.omega.is_zero():
            self.hom = None
            self._reduced = ExactMatrix.zeros(field, 0, 0)
            self._pivots: list[int] = []
            self.complement: list[int] = []
            return
        self.hom = hom_space(pres.omega, target)
        restricted = []
        for g in _projective_hom_basis(pres, target):
            restricted.append(self.hom.coordinates(pres.syzygy.inclusion.then(g)))
        if restricted:
            reduced, pivots = rref(ExactMatrix(field, restricted, (len(restricted), self.hom.dim)))
            self._reduced = reduced.take_rows(range(len(pivots)))
            self._pivots = pivots
        else:
            self._reduced = ExactMatrix.zeros(field, 0, self.hom.dim)
            self._pivots = []
        pivot_set = set(self._pivots)
        self.complement = [j for j in range(self.hom.dim) if j not in pivot_set]

    @property
    def dim(self) -> int:
        return len(self.complement)

    def is_zero(self) -> bool:
        return self.dim == 0

    @cached_property
    def basis(self) -> list[ModuleMorphism]:
        return [self.hom.basis[j] for j in self.complement] if self.hom else []

    def cocycle(self, coords: Sequence) -> ModuleMorphism:
        if len(coords) != self.dim:
            raise ValueError(f"class needs {self.dim} coordinates")
        if self.hom is None:
            raise ValueError("Ext space is zero")
        full = [self.source.field.zero] * self.hom.dim
        for j, c in zip(self.complement, coords):
            full[j] = c
        return self.hom.combine(full)

    def class_of(self, cocycle: ModuleMorphism) -> list:
        """Coordinates of a cocycle's class in the chosen basis."""
        if self.hom is None:
            return []
        coords = list(self.hom.coordinates(cocycle))
        for row, p in zip(self._reduced.rows, self._pivots):
            c = coords[p]
            if c:
                coords = [x - c * y for x, y in zip(coords, row)]
        return [coords[j] for j in self.complement]

    def __repr__(self) -> str:
        return f"<Ext^{self.degree}({self.source.name or 'M'}, {self.target.name or 'N'}) dim {self.dim}>"


def _projective_hom_basis(pres: ProjectivePresentation, n: Representation) -> list[ModuleMorphism]:
    """Basis of Hom(P, N) for P = ⊕P(w_k), one Yoneda map per summand and basis vector of N_{w_k}."""
    a = n.algebra
    field = n.field
    out = []
    offsets = pres.summand_offsets()
    for k, w in enumerate(pres.summands):
        p = projective_module(a, w)
        for j in range(n.dims[w]):
            y = yoneda_morphism(n, w, [field.one if i == j else field.zero for i in range(n.dims[w])])
            blocks = {}
            for v in a.vertices:
                rows = [[field.zero] * n.dims[v] for _ in range(pres.cover.dims[v])]
                for r in range(p.dims[v]):
                    rows[offsets[k][v] + r] = list(y.blocks[v].row(r))
                blocks[v] = ExactMatrix(field, rows, (pres.cover.dims[v], n.dims[v]))
            out.append(ModuleMorphism(pres.cover, n, blocks, check=False))
    return out


def ext(m: Representation, n: Representation, i: int = 1, *, cap: int = config.RESOLUTION_CAP) -> ExtSpace:
    if i < 1:
        raise ValueError("Ext degree must be at least 1")
    if m.algebra is not n.algebra:
        raise ValueError("Ext between modules over different algebras")
    chain = resolution(m, i, cap=cap)
    if len(chain) < i:
        return ExtSpace(m, n, i, None)
    return ExtSpace(m, n, i, chain[i - 1])


def ext_map(source_ext: ExtSpace, target_ext: ExtSpace, f: ModuleMorphism) -> ExactMatrix:
    """Ext^i(E, f): Ext^i(E, X) -> Ext^i(E, Y) for f: X -> Y, as a matrix on class coordinates."""
    field = f.source.field
    rows = [target_ext.class_of(c.then(f)) for c in source_ext.basis]
    return ExactMatrix(field, rows, (source_ext.dim, target_ext.dim))


# ─────────────────────────────────────────────
# Conflations
# ─────────────────────────────────────────────
@dataclass(eq=False)
class Conflation:
    """Short exact sequence left ↪ middle ↠ right."""

    inflation: ModuleMorphism
    deflation: ModuleMorphism

    @property
    def left(self) -> Representation:
        return self.inflation.source

    @property
    def middle(self) -> Representation:
        return self.inflation.target

    @property
    def right(self) -> Representation:
        return self.deflation.target

    def verify(self) -> None:
        if not self.inflation.is_injective():
            raise InvariantBreach("inflation is not injective")
        if not self.deflation.is_surjective():
            raise InvariantBreach("deflation is not surjective")
        if not self.inflation.then(self.deflation).is_zero():
            raise InvariantBreach("conflation does not compose to zero")
        for v in self.middle.algebra.vertices:
            if self.left.dims[v] + self.right.dims[v] != self.middle.dims[v]:
                raise InvariantBreach(f"dimensions are not additive at vertex {v}")


def _pushout(pres: ProjectivePresentation, h: ModuleMorphism) -> Conflation:
    """Pushout of Ω ↪ P ↠ M along h: Ω -> X, giving X ↪ E ↠ M."""
    a = h.target.algebra
    field = h.target.field
    x = h.target
    total = direct_sum(a, [x, pres.cover])
    inclusion = pres.syzygy.inclusion
    blocks = {v: hstack(field, [h.blocks[v], -inclusion.blocks[v]], pres.omega.dims[v]) for v in a.vertices}
    phi = ModuleMorphism(pres.omega, total.module, blocks, check=False)
    q = cokernel(phi)
    inflation = total.injections[0].then(q.projection)
    deflation = q.descend(total.projections[1].then(pres.epi))
    conflation = Conflation(inflation, deflation)
    conflation.verify()
    return conflation


def realize_extension(space: ExtSpace, coords: Sequence) -> Conflation:
    """A conflation target ↪ E ↠ source representing the given degree-1 class."""
    if space.degree != 1:
        raise ValueError("only degree-1 classes are realized as modules")
    m, n = space.source, space.target
    if space.dim == 0:
        if any(coords):
            raise ValueError("class coordinates for a zero Ext space")
        summed = direct_sum(m.algebra, [n, m])
        return Conflation(summed.injections[0], summed.projections[1])
    return _pushout(space.presentation, space.cocycle(coords))


def extension_class(space: ExtSpace, conflation: Conflation) -> list:
    """Class of target ↪ E ↠ source, by lifting the cover through the deflation."""
    pres = space.presentation
    if pres is None or pres.omega.is_zero():
        return []
    field = space.source.field
    e, p = conflation.middle, conflation.deflation
    lifts = []
    for k, w in enumerate(pres.summands):
        image = ExactMatrix(field, [pres.generators[k]], (1, space.source.dims[w]))
        pre = solve_left(p.blocks[w], image)
        if pre is None:
            raise InvariantBreach("deflation is not surjective on a top generator")
        lifts.append(yoneda_morphism(e, w, pre.row(0)))
    g = ModuleMorphism(pres.cover, e, {v: vstack(field, [y.blocks[v] for y in lifts], e.dims[v])
                                       for v in e.algebra.vertices}, check=False)
    restricted = pres.syzygy.inclusion.then(g)
    blocks = {}
    for v, b in restricted.blocks.items():
        x = solve_left(conflation.inflation.blocks[v], b) if b.nrows else ExactMatrix.zeros(field, 0, space.target.dims[v])
        if x is None:
            raise InvariantBreach("lifted cocycle does not land in the inflation")
        blocks[v] = x
    return space.class_of(ModuleMorphism(pres.omega, space.target, blocks, check=False))


# ─────────────────────────────────────────────
# Universal extensions
# ─────────────────────────────────────────────
@dataclass(eq=False)
class UniversalExtension:
    """T^d ↪ R ↠ Q (or, for coextensions, T ↪ U ↠ Q^d), d = dim Ext^1(Q, T)."""

    conflation: Conflation
    multiplicity: int
    quotient_part: Representation
    irreducible: Representation

    @property
    def middle(self) -> Representation:
        return self.conflation.middle

    @property
    def inflation(self) -> ModuleMorphism:
        return self.conflation.inflation

    @property
    def deflation(self) -> ModuleMorphism:
        return self.conflation.deflation


def universal_extension(q: Representation, t: Representation) -> UniversalExtension:
    """Pushout along all basis cocycles at once; Ext^1(R, T) = 0 is asserted."""
    space = ext(q, t, 1)
    d = space.dim
    a = q.algebra
    if d == 0:
        zero = zero_module(a)
        conflation = Conflation(ModuleMorphism.zero(zero, q), ModuleMorphism.identity(q))
        return UniversalExtension(conflation, 0, q, t)
    powers = direct_sum(a, [t] * d)
    omega = space.presentation.omega
    blocks = {v: hstack(a.field, [c.blocks[v] for c in space.basis], omega.dims[v]) for v in a.vertices}
    h = ModuleMorphism(omega, powers.module, blocks, check=False)
    conflation = _pushout(space.presentation, h)
    r = conflation.middle
    if r.dimension != q.dimension + d * t.dimension:
        raise InvariantBreach("universal extension has the wrong dimension")
    if not ext(r, t, 1).is_zero():
        raise InvariantBreach("Ext^1(R, T) does not vanish after the universal extension")
    log.debug("universal extension of %s by %s: multiplicity %d", q.name or "Q", t.name or "T", d)
    return UniversalExtension(conflation, d, q, t)


def universal_coextension(t: Representation, q: Representation) -> UniversalExtension:
    """Dual construction through the opposite algebra; Ext^1(Q, U) = 0 is asserted."""
    dual = universal_extension(dualize(t), dualize(q))
    u = dualize(dual.middle)
    inflation = ModuleMorphism(t, u, {v: b.T for v, b in dual.deflation.blocks.items()}, check=False)
    deflation = dual_morphism(dual.inflation, source=u)
    conflation = Conflation(inflation, deflation)
    if dual.multiplicity:
        conflation.verify()
    if not ext(q, u, 1).is_zero():
        raise InvariantBreach("Ext^1(Q, U) does not vanish after the universal coextension")
    return UniversalExtension(conflation, dual.multiplicity, q, t)


def global_dimension_bound(a: BoundQuiverAlgebra, *, cap: int = config.RESOLUTION_CAP) -> int:
    """max_λ pd L(λ), by iterated syzygies; ResolutionBoundExceeded at the cap."""
    key = ("gldim", cap)
    if key in a.cache:
        return a.cache[key]
    best = 0
    for v in a.vertices:
        current = simple_module(a, v)
        steps = 0
        while not current.is_zero():
            if steps >= cap:
                raise ResolutionBoundExceeded(f"L({v}) has no projective resolution of length <= {cap}")
            current = presentation(current).omega
            steps += 1
        best = max(best, steps - 1)
    log.info("global dimension of %s: %d", a.name or "algebra", best)
    a.cache[key] = best
    return best
