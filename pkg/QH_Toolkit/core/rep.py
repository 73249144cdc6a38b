"""Right modules over bound quiver algebras, as quiver representations.

A Representation stores one vector space per vertex (by dimension) and one
matrix per arrow acting on row vectors: for a: s -> t the matrix is
dims[s] x dims[t]. Morphisms are vertex-wise block matrices F_v with
A^M_a F_t = F_s A^N_a; "f then g" multiplies blocks as F @ G.

Submodules always come with their basis in ambient coordinates
(SubmoduleWitness); quotients keep lifts of their basis and the projection
(QuotientWitness). Nothing in here relies on implicit coordinates.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from QH_Toolkit import config
from QH_Toolkit.core.bqa import BoundQuiverAlgebra, Path
from QH_Toolkit.core.exactla import (
    ExactMatrix,
    complement_rows,
    hstack,
    inverse,
    kernel_basis,
    left_kernel,
    projective_point_count,
    projective_points,
    rank,
    row_basis,
    rref,
    solve_left,
    vstack,
)
from QH_Toolkit.errors import InvariantBreach, LocalityFailure, RelationViolation, Undecided


log = logging.getLogger(__name__)


# ─────────────────────────────────────────────
# Representations and morphisms
# ─────────────────────────────────────────────
class Representation:
    """Finite-dimensional right module given by vertex dimensions and arrow matrices."""

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Mapping[str, int],
                 action: Mapping[str, ExactMatrix] | None = None, *, name: str = "", check: bool = True):
        unknown = set(dims) - set(algebra.vertices)
        if unknown:
            raise ValueError(f"dimensions given for unknown vertices {sorted(unknown)}")
        self.algebra = algebra
        self.field = algebra.field
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        action = dict(action or {})
        extra = set(action) - set(algebra.arrows)
        if extra:
            raise ValueError(f"matrices given for unknown arrows {sorted(extra)}")
        self.action: dict[str, ExactMatrix] = {}
        for name_, arrow in algebra.arrows.items():
            shape = (self.dims[arrow.source], self.dims[arrow.target])
            m = action.get(name_)
            if m is None:
                m = ExactMatrix.zeros(self.field, *shape)
            elif m.shape != shape:
                raise ValueError(f"arrow {name_} needs a {shape[0]}x{shape[1]} matrix, got {m.shape}")
            self.action[name_] = m
        self.name = name
        self._path_cache: dict[Path, ExactMatrix] = {}
        if check:
            self.check_relations()

    def __repr__(self) -> str:
        dims = ",".join(str(self.dims[v]) for v in self.algebra.vertices)
        return f"<Representation {self.name or '?'} dims=({dims})>"

    @property
    def dimension(self) -> int:
        return sum(self.dims.values())

    def dimension_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self) -> bool:
        return self.dimension == 0

    def same_as(self, other: "Representation") -> bool:
        return self.algebra is other.algebra and self.dims == other.dims and self.action == other.action

    def path_matrix(self, path: Path) -> ExactMatrix:
        cached = self._path_cache.get(path)
        if cached is not None:
            return cached
        if not path.arrows:
            m = ExactMatrix.identity(self.field, self.dims[path.source])
        else:
            prefix = Path(path.source, self.algebra.arrows[path.arrows[-1]].source, path.arrows[:-1])
            m = self.path_matrix(prefix) @ self.action[path.arrows[-1]]
        self._path_cache[path] = m
        return m

    def element_matrix(self, element: Mapping[int, object], s: str, t: str) -> ExactMatrix:
        """Action of an algebra element (sparse over the basis) from vertex s to vertex t."""
        out = ExactMatrix.zeros(self.field, self.dims[s], self.dims[t])
        for k, c in element.items():
            p = self.algebra.basis[k]
            if p.source == s and p.target == t and c:
                out = out + self.path_matrix(p).scale(c)
        return out

    def check_relations(self) -> None:
        pres = self.algebra.presentation
        for rel in self.algebra.relations:
            s, t = pres.relation_ends(rel)
            if not self.dims[s] or not self.dims[t]:
                continue
            total = ExactMatrix.zeros(self.field, self.dims[s], self.dims[t])
            for c, words in rel:
                total = total + self.path_matrix(pres.path(words)).scale(c)
            if not total.is_zero():
                raise RelationViolation(pres.relation_text(rel), s)

    def text_rows(self, arrow: str) -> list[list[str]]:
        return self.action[arrow].to_text_rows()


class ModuleMorphism:
    """Vertex-wise blocks F_v: M_v -> N_v intertwining the arrow actions."""

    def __init__(self, source: Representation, target: Representation,
                 blocks: Mapping[str, ExactMatrix] | None = None, *, check: bool = True):
        if source.algebra is not target.algebra:
            raise ValueError("morphism between modules over different algebras")
        self.source = source
        self.target = target
        field = source.field
        blocks = dict(blocks or {})
        self.blocks: dict[str, ExactMatrix] = {}
        for v in source.algebra.vertices:
            shape = (source.dims[v], target.dims[v])
            b = blocks.get(v)
            if b is None:
                b = ExactMatrix.zeros(field, *shape)
            elif b.shape != shape:
                raise ValueError(f"block at {v} must be {shape}, got {b.shape}")
            self.blocks[v] = b
        if check:
            self.check()

    def check(self) -> None:
        for name, arrow in self.source.algebra.arrows.items():
            left = self.source.action[name] @ self.blocks[arrow.target]
            right = self.blocks[arrow.source] @ self.target.action[name]
            if left != right:
                raise InvariantBreach(f"blocks do not intertwine arrow {name}")

    @classmethod
    def identity(cls, m: Representation) -> "ModuleMorphism":
        return cls(m, m, {v: ExactMatrix.identity(m.field, d) for v, d in m.dims.items()}, check=False)

    @classmethod
    def zero(cls, m: Representation, n: Representation) -> "ModuleMorphism":
        return cls(m, n, check=False)

    def then(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """self followed by other."""
        if self.target is not other.source and not self.target.same_as(other.source):
            raise ValueError("morphisms are not composable")
        return ModuleMorphism(self.source, other.target,
                              {v: self.blocks[v] @ other.blocks[v] for v in self.blocks}, check=False)

    def __add__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target,
                              {v: self.blocks[v] + other.blocks[v] for v in self.blocks}, check=False)

    def __sub__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target,
                              {v: self.blocks[v] - other.blocks[v] for v in self.blocks}, check=False)

    def scale(self, c) -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target, {v: b.scale(c) for v, b in self.blocks.items()}, check=False)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def ranks(self) -> dict[str, int]:
        return {v: rank(b) for v, b in self.blocks.items()}

    def is_injective(self) -> bool:
        return all(rank(b) == self.source.dims[v] for v, b in self.blocks.items())

    def is_surjective(self) -> bool:
        return all(rank(b) == self.target.dims[v] for v, b in self.blocks.items())

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def flatten(self) -> list:
        return [a for v in self.source.algebra.vertices for a in self.blocks[v].flatten()]


class HomSpace:
    """Ordered basis of Hom(M, N) with coordinate helpers."""

    def __init__(self, source: Representation, target: Representation, basis: Sequence[ModuleMorphism]):
        self.source = source
        self.target = target
        self.basis = list(basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i: int) -> ModuleMorphism:
        return self.basis[i]

    @cached_property
    def matrix(self) -> ExactMatrix:
        width = sum(self.source.dims[v] * self.target.dims[v] for v in self.source.algebra.vertices)
        return ExactMatrix(self.source.field, [f.flatten() for f in self.basis], (self.dim, width))

    def coordinates(self, f: ModuleMorphism) -> list:
        row = ExactMatrix(self.source.field, [f.flatten()], (1, self.matrix.ncols))
        x = solve_left(self.matrix, row)
        if x is None:
            raise ValueError("morphism is not in the span of this Hom basis")
        return list(x.row(0))

    def combine(self, coeffs: Sequence) -> ModuleMorphism:
        out = ModuleMorphism.zero(self.source, self.target)
        for c, f in zip(coeffs, self.basis):
            if c:
                out = out + f.scale(c)
        return out

    def random_element(self, rng: np.random.Generator) -> ModuleMorphism:
        return self.combine([self.source.field.random(rng) for _ in self.basis])


def hom_space(m: Representation, n: Representation) -> HomSpace:
    """Basis of Hom(M, N): the kernel of the intertwining system."""
    if m.algebra is not n.algebra:
        raise ValueError("Hom between modules over different algebras")
    a = m.algebra
    field = m.field
    offsets: dict[str, int] = {}
    total = 0
    for v in a.vertices:
        offsets[v] = total
        total += m.dims[v] * n.dims[v]
    if total == 0:
        return HomSpace(m, n, [])

    def var(v: str, i: int, j: int) -> int:
        return offsets[v] + i * n.dims[v] + j

    rows = []
    for name, arrow in a.arrows.items():
        s, t = arrow.source, arrow.target
        am, an = m.action[name], n.action[name]
        for p in range(m.dims[s]):
            for q in range(n.dims[t]):
                row = [field.zero] * total
                for i in range(m.dims[t]):
                    if am[p, i]:
                        row[var(t, i, q)] += am[p, i]
                for j in range(n.dims[s]):
                    if an[j, q]:
                        row[var(s, p, j)] -= an[j, q]
                if any(row):
                    rows.append(row)
    if rows:
        kernel = kernel_basis(ExactMatrix(field, rows, (len(rows), total)))
        vectors = kernel.T.rows
    else:
        vectors = ExactMatrix.identity(field, total).rows
    basis = []
    for vec in vectors:
        blocks = {}
        for v in a.vertices:
            r, c = m.dims[v], n.dims[v]
            start = offsets[v]
            blocks[v] = ExactMatrix(field, [vec[start + i * c: start + (i + 1) * c] for i in range(r)], (r, c))
        basis.append(ModuleMorphism(m, n, blocks, check=False))
    return HomSpace(m, n, basis)


# ─────────────────────────────────────────────
# Sub- and quotient modules
# ─────────────────────────────────────────────
@dataclass(eq=False)
class SubmoduleWitness:
    """Submodule with basis rows in ambient coordinates at each vertex."""

    ambient: Representation
    basis: dict[str, ExactMatrix]
    module: Representation

    @property
    def inclusion(self) -> ModuleMorphism:
        return ModuleMorphism(self.module, self.ambient, self.basis, check=False)

    @property
    def dimension(self) -> int:
        return self.module.dimension

    def dimension_vector(self) -> tuple[int, ...]:
        return self.module.dimension_vector()

    def is_zero(self) -> bool:
        return self.module.is_zero()

    def key(self) -> tuple:
        return tuple(row_basis(self.basis[v]).key() if self.basis[v].nrows else (v,)
                     for v in self.ambient.algebra.vertices)

    def contains(self, other: "SubmoduleWitness") -> bool:
        return all(_in_span(self.basis[v], other.basis[v]) for v in self.ambient.algebra.vertices)


def _in_span(basis: ExactMatrix, rows: ExactMatrix) -> bool:
    if rows.nrows == 0:
        return True
    if basis.nrows == 0:
        return rows.is_zero()
    return solve_left(basis, rows) is not None


def make_submodule(ambient: Representation, spans: Mapping[str, ExactMatrix], *, name: str = "") -> SubmoduleWitness:
    """Submodule spanned by `spans` (rows at each vertex), which must be closed under the action."""
    field = ambient.field
    basis = {}
    for v in ambient.algebra.vertices:
        rows = spans.get(v)
        basis[v] = row_basis(rows) if rows is not None and rows.nrows else ExactMatrix.zeros(field, 0, ambient.dims[v])
    action = {}
    for arrow_name, arrow in ambient.algebra.arrows.items():
        s, t = arrow.source, arrow.target
        images = basis[s] @ ambient.action[arrow_name]
        if basis[s].nrows == 0 or images.is_zero():
            action[arrow_name] = ExactMatrix.zeros(field, basis[s].nrows, basis[t].nrows)
            continue
        coords = solve_left(basis[t], images) if basis[t].nrows else None
        if coords is None:
            raise InvariantBreach(f"span is not closed under arrow {arrow_name}")
        action[arrow_name] = coords
    module = Representation(ambient.algebra, {v: b.nrows for v, b in basis.items()}, action,
                            name=name, check=False)
    return SubmoduleWitness(ambient, basis, module)


def generated_submodule(m: Representation, vectors: Mapping[str, ExactMatrix], *, name: str = "") -> SubmoduleWitness:
    """Smallest submodule containing the given rows (vertex -> rows in M_v)."""
    a = m.algebra
    spans: dict[str, list[ExactMatrix]] = {v: [] for v in a.vertices}
    for v, rows in vectors.items():
        if rows.nrows == 0:
            continue
        for k in a.paths_from(v):
            p = a.basis[k]
            spans[p.target].append(rows @ m.path_matrix(p))
    stacked = {v: vstack(m.field, blocks, m.dims[v]) for v, blocks in spans.items() if blocks}
    return make_submodule(m, stacked, name=name)


@dataclass(eq=False)
class QuotientWitness:
    """Quotient M/S with lifts of its basis and the projection M -> M/S."""

    sub: SubmoduleWitness
    module: Representation
    lifts: dict[str, ExactMatrix]
    projection: ModuleMorphism

    @property
    def ambient(self) -> Representation:
        return self.sub.ambient

    def descend(self, f: ModuleMorphism) -> ModuleMorphism:
        """The morphism M/S -> X induced by f: M -> X, which must vanish on S."""
        for v, b in self.sub.basis.items():
            if b.nrows and not (b @ f.blocks[v]).is_zero():
                raise InvariantBreach("morphism does not vanish on the submodule")
        return ModuleMorphism(self.module, f.target, {v: self.lifts[v] @ f.blocks[v] for v in self.lifts}, check=False)


def quotient(sub: SubmoduleWitness, *, name: str = "") -> QuotientWitness:
    m = sub.ambient
    field = m.field
    lifts, proj = {}, {}
    for v in m.algebra.vertices:
        s = sub.basis[v]
        n = m.dims[v]
        comp = complement_rows(s, n)
        lift = ExactMatrix.unit_rows(field, comp, n)
        lifts[v] = lift
        if n == 0:
            proj[v] = ExactMatrix.zeros(field, 0, 0)
            continue
        full = vstack(field, [s, lift], n)
        proj[v] = inverse(full).take_cols(range(s.nrows, n))
    action = {name_: lifts[a.source] @ m.action[name_] @ proj[a.target] for name_, a in m.algebra.arrows.items()}
    module = Representation(m.algebra, {v: l.nrows for v, l in lifts.items()}, action, name=name, check=False)
    return QuotientWitness(sub, module, lifts, ModuleMorphism(m, module, proj, check=False))


def radical(m: Representation) -> SubmoduleWitness:
    """M·J: the span of all arrow images."""
    field = m.field
    spans: dict[str, list[ExactMatrix]] = {v: [] for v in m.algebra.vertices}
    for name, arrow in m.algebra.arrows.items():
        if m.dims[arrow.source]:
            spans[arrow.target].append(m.action[name])
    stacked = {v: vstack(field, blocks, m.dims[v]) for v, blocks in spans.items() if blocks}
    return make_submodule(m, stacked, name=f"rad {m.name}" if m.name else "")


def top(m: Representation) -> QuotientWitness:
    return quotient(radical(m), name=f"top {m.name}" if m.name else "")


def socle(m: Representation) -> SubmoduleWitness:
    """Vectors annihilated by every arrow."""
    field = m.field
    spans = {}
    for v in m.algebra.vertices:
        outgoing = [m.action[name] for name, a in m.algebra.arrows.items() if a.source == v]
        if not outgoing:
            spans[v] = ExactMatrix.identity(field, m.dims[v])
        else:
            spans[v] = left_kernel(hstack(field, outgoing, m.dims[v]))
    return make_submodule(m, spans, name=f"soc {m.name}" if m.name else "")


def composition_factors(m: Representation) -> Counter:
    return Counter({v: d for v, d in m.dims.items() if d})


def kernel(f: ModuleMorphism) -> SubmoduleWitness:
    return make_submodule(f.source, {v: left_kernel(b) for v, b in f.blocks.items()})


def image(f: ModuleMorphism) -> SubmoduleWitness:
    return make_submodule(f.target, {v: b for v, b in f.blocks.items()})


def cokernel(f: ModuleMorphism) -> QuotientWitness:
    return quotient(image(f))


# ─────────────────────────────────────────────
# Simples, projectives, injectives, duality
# ─────────────────────────────────────────────
def zero_module(a: BoundQuiverAlgebra) -> Representation:
    return Representation(a, {}, name="0", check=False)


def simple_module(a: BoundQuiverAlgebra, weight: str) -> Representation:
    a.check_vertex(weight)
    return Representation(a, {weight: 1}, name=f"L({weight})", check=False)


def projective_module(a: BoundQuiverAlgebra, weight: str) -> Representation:
    """P(λ) = e_λ A with basis the reduced paths starting at λ."""
    a.check_vertex(weight)
    key = ("P", weight)
    if key in a.cache:
        return a.cache[key]
    field = a.field
    coords = {v: a.paths_between(weight, v) for v in a.vertices}
    position = {v: {k: i for i, k in enumerate(ks)} for v, ks in coords.items()}
    action = {}
    for name, arrow in a.arrows.items():
        s, t = arrow.source, arrow.target
        rows = []
        for k in coords[s]:
            row = [field.zero] * len(coords[t])
            for j, c in a.mult.get((k, a.arrow_index(name)), {}).items():
                row[position[t][j]] = c
            rows.append(row)
        action[name] = ExactMatrix(field, rows, (len(coords[s]), len(coords[t])))
    p = Representation(a, {v: len(ks) for v, ks in coords.items()}, action, name=f"P({weight})")
    a.cache[key] = p
    return p


def dualize(m: Representation, *, name: str | None = None) -> Representation:
    """k-dual D(M) = Hom_k(M, k), a right module over the opposite algebra."""
    op = m.algebra.opposite
    label = name if name is not None else (f"D{m.name}" if m.name else "")
    return Representation(op, dict(m.dims), {k: v.T for k, v in m.action.items()}, name=label, check=False)


def dual_morphism(f: ModuleMorphism, *, source: Representation | None = None,
                  target: Representation | None = None) -> ModuleMorphism:
    """D(f): D(N) -> D(M); `source`/`target` may supply existing copies of D(N)/D(M)."""
    src = source if source is not None else dualize(f.target)
    tgt = target if target is not None else dualize(f.source)
    return ModuleMorphism(src, tgt, {v: b.T for v, b in f.blocks.items()}, check=False)


def injective_module(a: BoundQuiverAlgebra, weight: str) -> Representation:
    """I(λ) = D(A e_λ), via the projective of the opposite algebra."""
    a.check_vertex(weight)
    key = ("I", weight)
    if key not in a.cache:
        a.cache[key] = dualize(projective_module(a.opposite, weight), name=f"I({weight})")
    return a.cache[key]


@dataclass(eq=False)
class DirectSum:
    module: Representation
    injections: list[ModuleMorphism]
    projections: list[ModuleMorphism]


def direct_sum(a: BoundQuiverAlgebra, summands: Sequence[Representation], *, name: str = "") -> DirectSum:
    field = a.field
    dims = {v: sum(s.dims[v] for s in summands) for v in a.vertices}
    action = {}
    for arrow_name, arrow in a.arrows.items():
        rows = []
        col_start = 0
        width = dims[arrow.target]
        for s in summands:
            block = s.action[arrow_name]
            for r in block.rows:
                rows.append([field.zero] * col_start + list(r) + [field.zero] * (width - col_start - block.ncols))
            col_start += block.ncols
        action[arrow_name] = ExactMatrix(field, rows, (dims[arrow.source], width))
    total = Representation(a, dims, action, name=name, check=False)
    injections, projections = [], []
    offset = {v: 0 for v in a.vertices}
    for s in summands:
        inj, proj = {}, {}
        for v in a.vertices:
            d, o = s.dims[v], offset[v]
            inj[v] = ExactMatrix(field, [[field.one if j == o + i else field.zero for j in range(dims[v])]
                                         for i in range(d)], (d, dims[v]))
            proj[v] = inj[v].T
            offset[v] += d
        injections.append(ModuleMorphism(s, total, inj, check=False))
        projections.append(ModuleMorphism(total, s, proj, check=False))
    return DirectSum(total, injections, projections)


def yoneda_morphism(m: Representation, weight: str, vector: Sequence) -> ModuleMorphism:
    """P(λ) -> M sending e_λ to the given vector of M_λ."""
    a = m.algebra
    p = projective_module(a, weight)
    x = ExactMatrix(m.field, [list(vector)], (1, m.dims[weight]))
    blocks = {}
    for v in a.vertices:
        rows = [(x @ m.path_matrix(a.basis[k])).row(0) for k in a.paths_between(weight, v)]
        blocks[v] = ExactMatrix(m.field, rows, (len(rows), m.dims[v]))
    return ModuleMorphism(p, m, blocks, check=False)


def trace_submodule(m: Representation, weights: Iterable[str]) -> SubmoduleWitness:
    """Sum of the images of all maps P(ν) -> M, ν in `weights`.

    Every such map is determined by the image of e_ν, so the trace is the
    submodule generated by the spaces M_ν.
    """
    gens = {v: ExactMatrix.identity(m.field, m.dims[v]) for v in set(weights) if m.dims[v]}
    return generated_submodule(m, gens)


# ─────────────────────────────────────────────
# Isomorphism testing
# ─────────────────────────────────────────────
class IsoResult(NamedTuple):
    isomorphic: bool
    witness: ModuleMorphism | None
    reason: str

    def __bool__(self) -> bool:
        return self.isomorphic


def is_isomorphic(m: Representation, n: Representation, *, cap: int | None = None,
                  trials: int = config.ISO_RANDOM_TRIALS, rng: np.random.Generator | None = None) -> IsoResult:
    """Decide M ≅ N; raises Undecided when a negative cannot be certified.

    `cap` bounds the exhaustive enumeration over GF(p); it defaults to the
    current `config.ISO_ENUMERATION_CAP`, which the CLI sets per invocation.
    """
    cap = config.ISO_ENUMERATION_CAP if cap is None else cap
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    if m.dims != n.dims:
        return IsoResult(False, None, "dimension vectors differ")
    if m.is_zero():
        return IsoResult(True, ModuleMorphism.zero(m, n), "zero modules")
    hom = hom_space(m, n)
    if hom.dim == 0:
        return IsoResult(False, None, "Hom(M, N) = 0")
    back = hom_space(n, m).dim
    ends = (hom_space(m, m).dim, hom_space(n, n).dim)
    if not (hom.dim == back == ends[0] == ends[1]):
        return IsoResult(False, None, "Hom dimensions differ")
    for f in hom.basis:
        if f.is_isomorphism():
            return IsoResult(True, f, "basis element")
    rng = rng if rng is not None else np.random.default_rng(config.RANDOM_SEED)
    for _ in range(trials):
        f = hom.random_element(rng)
        if f.is_isomorphism():
            return IsoResult(True, f, "random combination")
    if m.field.is_finite and projective_point_count(m.field, hom.dim) <= cap:
        for coeffs in projective_points(m.field, hom.dim):
            f = hom.combine(coeffs)
            if f.is_isomorphism():
                return IsoResult(True, f, "exhaustive")
        return IsoResult(False, None, "exhaustive search over Hom(M, N)")
    raise Undecided(f"no isomorphism found in {trials} trials and Hom has dimension {hom.dim}")


# ─────────────────────────────────────────────
# Local endomorphism rings
# ─────────────────────────────────────────────
@dataclass(eq=False)
class LocalEndomorphisms:
    """End(M) = k·id ⊕ rad with rad nilpotent."""

    module: Representation
    hom: HomSpace
    scalars: list
    radical: list[ModuleMorphism]

    @property
    def dim(self) -> int:
        return self.hom.dim

    def scalar_part(self, f: ModuleMorphism):
        coords = self.hom.coordinates(f)
        return sum((c * s for c, s in zip(coords, self.scalars)), self.module.field.zero)


def _is_nilpotent(f: ModuleMorphism) -> bool:
    for v, b in f.blocks.items():
        power = b
        for _ in range(max(b.nrows, 1)):
            if power.is_zero():
                break
            power = power @ b
        if not power.is_zero():
            return False
    return True


def _eigenvalue(f: ModuleMorphism):
    """The unique c with f - c·id nilpotent, or None."""
    m = f.source
    field = m.field
    d = m.dimension
    identity = ModuleMorphism.identity(m)
    if field.characteristic == 0 or d % field.characteristic:
        trace = sum((b[i, i] for b in f.blocks.values() for i in range(b.nrows)), field.zero)
        c = trace / field.convert(d)
        return c if _is_nilpotent(f - identity.scale(c)) else None
    for c in field.elements():
        if _is_nilpotent(f - identity.scale(c)):
            return c
    return None


def endomorphism_radical(m: Representation) -> LocalEndomorphisms:
    """Split End(M) into scalars and a nilpotent ideal; LocalityFailure if End(M) is not local with residue k."""
    hom = hom_space(m, m)
    if m.is_zero():
        raise LocalityFailure("the zero module has no local endomorphism ring")
    identity = ModuleMorphism.identity(m)
    scalars, shifted = [], []
    for f in hom.basis:
        c = _eigenvalue(f)
        if c is None:
            raise LocalityFailure(f"End({m.name or 'M'}) has a non-nilpotent non-unit")
        scalars.append(c)
        shifted.append(f - identity.scale(c))
    rows = ExactMatrix(m.field, [g.flatten() for g in shifted], (len(shifted), hom.matrix.ncols))
    pivots = rref(rows.T)[1] if rows.nrows else []
    radical = [shifted[j] for j in pivots]
    if len(radical) != hom.dim - 1:
        raise LocalityFailure(f"End({m.name or 'M'}) has residue dimension {hom.dim - len(radical)}")
    span = ExactMatrix(m.field, [g.flatten() for g in radical], (len(radical), hom.matrix.ncols))
    for g in radical:
        for h in radical:
            prod = g.then(h)
            if not prod.is_zero() and not _in_span(span, ExactMatrix(m.field, [prod.flatten()], (1, span.ncols))):
                raise LocalityFailure("nilpotent endomorphisms do not form an ideal")
    if radical:
        log.debug("End(%s) is local of dimension %d; over a finite field this need not mean indecomposable",
                    m.name or "M", hom.dim)
    return LocalEndomorphisms(m, hom, scalars, radical)
