"""Bound quiver algebras kQ/I.

A presentation (vertices, arrows, relations) is turned into a basis of
reduced paths plus a sparse table of structure constants. Paths compose
left to right: "a*b" is a first, then b, so that a right module M has
M_s · a ⊆ M_t for a: s → t.

Derived algebras (opposite, corners eAe, quotients A/AeA) are built here as
well. Corners and quotients are first described by structure constants on a
subset of the parent basis and then re-presented as bound quiver algebras
through `present`, which keeps enough bookkeeping to move elements between
the two descriptions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from QH_Toolkit import config
from QH_Toolkit.core.exactla import (
    ExactMatrix,
    FieldSpec,
    inverse,
    left_kernel,
    rank,
    rref,
)
from QH_Toolkit.errors import InvariantBreach, NonAdmissible, ParseError, UnknownWeight


log = logging.getLogger(__name__)


# ─────────────────────────────────────────────
# Presentations
# ─────────────────────────────────────────────
class Arrow(NamedTuple):
    name: str
    source: str
    target: str


class Path(NamedTuple):
    """A path in the quiver; the empty arrow tuple is the trivial path e_source."""

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def then(self, other: "Path") -> "Path":
        if self.target != other.source:
            raise ValueError(f"{self} and {other} are not composable")
        return Path(self.source, other.target, self.arrows + other.arrows)

    def reversed(self) -> "Path":
        return Path(self.target, self.source, self.arrows[::-1])

    def __str__(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e_{self.source}"


Relation = tuple[tuple[object, tuple[str, ...]], ...]
"""Linear combination of parallel paths: ((coefficient, arrow names), ...)."""


@dataclass(frozen=True)
class QuiverPresentation:
    field: FieldSpec
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    relations: tuple[Relation, ...] = ()
    path_length_bound: int = config.PATH_LENGTH_BOUND
    order: tuple[tuple[str, str], ...] = ()
    name: str = ""

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ParseError(None, "vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ParseError(None, "arrow names must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ParseError(None, f"arrow {a.name} joins unknown vertices")
        for rel in self.relations:
            self.relation_ends(rel)
        for lo, hi in self.order:
            if lo not in vs or hi not in vs:
                raise ParseError(None, f"order {lo} < {hi} names an unknown vertex")
        if self.path_length_bound < 1:
            raise ParseError(None, "path length bound must be positive")

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def arrow_rank(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    def path(self, arrows: Sequence[str], source: str | None = None) -> Path:
        """Resolve an arrow-name sequence into a composable Path."""
        if not arrows:
            if source is None:
                raise ValueError("a trivial path needs its vertex")
            return Path(source, source)
        amap = self.arrow_map
        for name in arrows:
            if name not in amap:
                raise ParseError(None, f"unknown arrow {name}")
        for x, y in zip(arrows, arrows[1:]):
            if amap[x].target != amap[y].source:
                raise ParseError(None, f"{'*'.join(arrows)} is not a path: {x} does not end where {y} starts")
        return Path(amap[arrows[0]].source, amap[arrows[-1]].target, tuple(arrows))

    def relation_ends(self, rel: Relation) -> tuple[str, str]:
        if not rel:
            raise ParseError(None, "empty relation")
        ends = {(p.source, p.target) for p in (self.path(words) for _, words in rel)}
        if len(ends) != 1:
            raise ParseError(None, f"relation {self.relation_text(rel)} mixes non-parallel paths")
        if any(len(words) < 2 for _, words in rel):
            raise ParseError(None, f"relation {self.relation_text(rel)} has a term of length < 2")
        return ends.pop()

    def relation_text(self, rel: Relation) -> str:
        return " + ".join(f"{self.field.to_text(c)} {'*'.join(w)}" for c, w in rel)

    def sort_key(self, p: Path) -> tuple:
        if not p.arrows:
            return (0, (self.vertices.index(p.source),))
        rank_of = self.arrow_rank
        return (p.length, tuple(rank_of[a] for a in p.arrows))

    def is_homogeneous(self) -> bool:
        return all(len({len(w) for _, w in rel}) == 1 for rel in self.relations)

    def trivial_paths(self) -> list[Path]:
        return [Path(v, v) for v in self.vertices]

    def out_arrows(self, v: str) -> list[Path]:
        return [Path(a.source, a.target, (a.name,)) for a in self.arrows if a.source == v]

    def opposite(self) -> "QuiverPresentation":
        return QuiverPresentation(
            field=self.field,
            vertices=self.vertices,
            arrows=tuple(Arrow(a.name, a.target, a.source) for a in self.arrows),
            relations=tuple(tuple((c, w[::-1]) for c, w in rel) for rel in self.relations),
            path_length_bound=self.path_length_bound,
            order=self.order,
            name=f"{self.name}^op" if self.name else "",
        )


# ─────────────────────────────────────────────
# Algebra
# ─────────────────────────────────────────────
Vector = dict[int, object]
"""Sparse element of an algebra: basis index -> nonzero coefficient."""


@dataclass
class PresentationOrigin:
    """Bookkeeping linking a presented algebra to the structure-constant algebra it came from.

    `to_source` maps the basis of the presented algebra to the source basis
    (rows); `from_source` is its inverse. `arrow_elements[name]` is the source
    element an arrow stands for.
    """

    kind: str
    structure: "StructureAlgebra"
    arrow_elements: dict[str, list]
    to_source: ExactMatrix
    from_source: ExactMatrix
    ambient: object = None
    extra: dict = dc_field(default_factory=dict)

    def to_presented(self, source_vector: Sequence) -> list:
        """Coordinates in the presented basis of a dense source vector."""
        row = ExactMatrix(self.structure.field, [list(source_vector)], (1, len(source_vector)))
        return list((row @ self.from_source).row(0)) if self.from_source.nrows else []


class BoundQuiverAlgebra:
    """Finite-dimensional algebra kQ/I with a basis of reduced paths."""

    def __init__(self, presentation: QuiverPresentation, basis: Sequence[Path],
                 mult: Mapping[tuple[int, int], Vector], loewy_length: int,
                 origin: PresentationOrigin | None = None):
        self.presentation = presentation
        self.field = presentation.field
        self.vertices = presentation.vertices
        self.arrows = presentation.arrow_map
        self.relations = presentation.relations
        self.basis = tuple(basis)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self.idempotents = {v: self.index[Path(v, v)] for v in self.vertices}
        self.mult = dict(mult)
        self.loewy_length = loewy_length
        self.origin = origin
        self.cache: dict = {}
        self._opposite_of: BoundQuiverAlgebra | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def name(self) -> str:
        return self.presentation.name

    def __repr__(self) -> str:
        label = self.name or "algebra"
        return f"<BoundQuiverAlgebra {label} over {self.field}: {len(self.vertices)} vertices, dim {self.dim}>"

    def check_vertex(self, v: str) -> str:
        if v not in self.idempotents:
            raise UnknownWeight(f"unknown vertex {v!r}; vertices are {', '.join(self.vertices)}")
        return v

    def paths_between(self, s: str, t: str) -> list[int]:
        key = ("between", s, t)
        if key not in self.cache:
            self.cache[key] = [i for i, p in enumerate(self.basis) if p.source == s and p.target == t]
        return self.cache[key]

    def paths_from(self, s: str) -> list[int]:
        return [i for i, p in enumerate(self.basis) if p.source == s]

    def arrow_index(self, name: str) -> int:
        a = self.arrows[name]
        return self.index[Path(a.source, a.target, (name,))]

    def product(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mult.get((i, j), {}).items():
                    out[k] = out.get(k, self.field.zero) + a * b * c
        return {k: v for k, v in out.items() if v}

    def path_element(self, path: Path) -> Vector:
        """Expansion of an arbitrary (possibly non-reduced) path in the basis."""
        out: Vector = {self.idempotents[path.source]: self.field.one}
        for name in path.arrows:
            out = self.product(out, {self.arrow_index(name): self.field.one})
            if not out:
                break
        return out

    def cartan_matrix(self) -> list[list[int]]:
        """dim e_λ A e_μ, rows λ and columns μ in vertex order."""
        return [[len(self.paths_between(s, t)) for t in self.vertices] for s in self.vertices]

    def check_associativity(self) -> None:
        """Unit law and associativity, exhaustive for small dim and sampled otherwise."""
        n = self.dim
        one = self.field.one
        for i, p in enumerate(self.basis):
            unit = {i: one}
            if self.product({self.idempotents[p.source]: one}, unit) != unit or \
                    self.product(unit, {self.idempotents[p.target]: one}) != unit:
                raise InvariantBreach(f"unit law fails on {p}")
        if n <= config.ASSOC_EXHAUSTIVE_DIM:
            triples = ((i, j, k) for i in range(n) for j in range(n) for k in range(n))
        else:
            rng = np.random.default_rng(config.RANDOM_SEED)
            triples = (tuple(int(x) for x in rng.integers(0, n, size=3)) for _ in range(config.ASSOC_SAMPLES))
        for i, j, k in triples:
            bi, bj, bk = self.basis[i], self.basis[j], self.basis[k]
            if bi.target != bj.source or bj.target != bk.source:
                continue
            left = self.product(self.product({i: one}, {j: one}), {k: one})
            right = self.product({i: one}, self.product({j: one}, {k: one}))
            if left != right:
                raise InvariantBreach(f"associativity fails on ({bi}, {bj}, {bk})")

    @cached_property
    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite_of is not None:
            return self._opposite_of
        op = BoundQuiverAlgebra(
            self.presentation.opposite(),
            [p.reversed() for p in self.basis],
            {(j, i): v for (i, j), v in self.mult.items()},
            self.loewy_length,
        )
        op._opposite_of = self
        return op


def opposite(a: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    """A^op: same basis labels with reversed paths, x·y in A^op equal to y·x in A."""
    return a.opposite


# ─────────────────────────────────────────────
# Building from a presentation
# ─────────────────────────────────────────────
def build_algebra(p: QuiverPresentation) -> BoundQuiverAlgebra:
    """Reduce paths modulo the relations and tabulate structure constants.

    Raises NonAdmissible when some path of length `path_length_bound` does
    not reduce to zero.
    """
    if p.is_homogeneous():
        basis, nf, loewy = _reduce_graded(p)
    else:
        log.warning("non-homogeneous relations: reducing all paths up to length %d", p.path_length_bound)
        basis, nf, loewy = _reduce_truncated(p)

    basis = sorted(basis, key=p.sort_key)
    index = {b: i for i, b in enumerate(basis)}
    mult: dict[tuple[int, int], Vector] = {}
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if x.target != y.source:
                continue
            reduced = nf(x.then(y))
            if reduced:
                mult[(i, j)] = {index[q]: c for q, c in reduced.items()}

    algebra = BoundQuiverAlgebra(p, basis, mult, loewy)
    algebra.check_associativity()
    log.info("built %s", algebra)
    return algebra


def _reduce_graded(p: QuiverPresentation):
    """Length-by-length reduction for homogeneous relations.

    At length n the candidates are (normal word of length n-1) * arrow; the
    relations multiplied on the left by normal words span the dependencies.
    Candidates are eliminated largest-first, so the survivors are the
    smallest normal words.
    """
    field = p.field
    one = field.one
    relations = [(len(rel[0][1]), p.relation_ends(rel)[0], rel) for rel in p.relations]
    normal: dict[int, list[Path]] = {0: p.trivial_paths(), 1: [a for v in p.vertices for a in p.out_arrows(v)]}
    rewrite: dict[Path, dict[Path, object]] = {}

    def nf(path: Path) -> dict[Path, object]:
        n = path.length
        if n <= 1:
            return {path: one}
        if n >= loewy[0]:
            return {}
        if path in rewrite:
            return rewrite[path]
        last = Path(p.arrow_map[path.arrows[-1]].source, path.target, path.arrows[-1:])
        out: dict[Path, object] = {}
        for w, c in nf(Path(path.source, last.source, path.arrows[:-1])).items():
            for q, d in rewrite[w.then(last)].items():
                out[q] = out.get(q, field.zero) + c * d
        out = {q: c for q, c in out.items() if c}
        rewrite[path] = out
        return out

    def as_candidates(path: Path) -> dict[Path, object]:
        """Expand a length-n path over the level-n candidates (prefix reduced)."""
        last = Path(p.arrow_map[path.arrows[-1]].source, path.target, path.arrows[-1:])
        prefix = Path(path.source, last.source, path.arrows[:-1])
        return {w.then(last): c for w, c in nf(prefix).items()}

    loewy = [p.path_length_bound + 1]
    if not normal[1]:
        loewy[0] = 1
        return normal[0], nf, 1
    if p.path_length_bound <= 1:
        raise NonAdmissible(f"arrow {normal[1][0]} survives a path length bound of 1")

    n = 1
    while True:
        n += 1
        candidates = [w.then(a) for w in normal[n - 1] for a in p.out_arrows(w.target)]
        if not candidates:
            normal[n] = []
            loewy[0] = n
            break
        columns = sorted(candidates, key=p.sort_key, reverse=True)
        col = {c: j for j, c in enumerate(columns)}
        rows = []
        for length, start, rel in relations:
            if length > n:
                continue
            for w in normal[n - length]:
                if w.target != start:
                    continue
                row = [field.zero] * len(columns)
                for c, words in rel:
                    full = w.then(p.path(words))
                    for q, d in as_candidates(full).items():
                        row[col[q]] += c * d
                if any(row):
                    rows.append(row)
        if rows:
            reduced, pivots = rref(ExactMatrix(field, rows, (len(rows), len(columns))))
        else:
            reduced, pivots = None, []
        pivot_cols = set(pivots)
        survivors = [c for j, c in enumerate(columns) if j not in pivot_cols]
        for c in survivors:
            rewrite[c] = {c: one}
        for i, j in enumerate(pivots):
            rewrite[columns[j]] = {columns[k]: -reduced[i, k] for k in range(len(columns))
                                   if k not in pivot_cols and reduced[i, k]}
        normal[n] = sorted(survivors, key=p.sort_key)
        if normal[n] and n >= p.path_length_bound:
            raise NonAdmissible(
                f"{normal[n][0]} of length {n} does not reduce to 0; "
                f"increase `bound` or add relations"
            )
        if not normal[n]:
            loewy[0] = n
            break

    basis = [w for k in range(loewy[0]) for w in normal[k]]
    return basis, nf, loewy[0]


def _reduce_truncated(p: QuiverPresentation):
    """Reduction on the full list of paths of length <= bound (any relations)."""
    field = p.field
    one = field.one
    bound = p.path_length_bound
    levels = [p.trivial_paths()]
    for n in range(1, bound + 1):
        levels.append([w.then(a) for w in levels[-1] for a in p.out_arrows(w.target)])
    paths = [w for level in levels for w in level]
    columns = sorted(paths, key=p.sort_key, reverse=True)
    col = {c: j for j, c in enumerate(columns)}

    rows = []
    for rel in p.relations:
        start, end = p.relation_ends(rel)
        shortest = min(len(w) for _, w in rel)
        for u in paths:
            if u.target != start or u.length + shortest > bound:
                continue
            for v in paths:
                if v.source != end or u.length + shortest + v.length > bound:
                    continue
                row = [field.zero] * len(columns)
                for c, words in rel:
                    full = u.then(p.path(words)).then(v)
                    if full.length <= bound:
                        row[col[full]] += c
                if any(row):
                    rows.append(row)
    if rows:
        reduced, pivots = rref(ExactMatrix(field, rows, (len(rows), len(columns))))
    else:
        reduced, pivots = None, []
    pivot_of = {columns[j]: i for i, j in enumerate(pivots)}
    free = [j for j in range(len(columns)) if columns[j] not in pivot_of]

    top = [columns[j] for j in free if columns[j].length == bound]
    if top:
        raise NonAdmissible(f"{top[0]} of length {bound} does not reduce to 0")
    for w in levels[bound]:
        i = pivot_of[w]
        if any(reduced[i, j] for j in free):
            raise NonAdmissible(f"{w} of length {bound} does not reduce to 0")

    def nf(path: Path) -> dict[Path, object]:
        if path.length >= bound:
            return {}
        if path not in pivot_of:
            return {path: one}
        i = pivot_of[path]
        return {columns[j]: -reduced[i, j] for j in free if reduced[i, j]}

    basis = [columns[j] for j in free]
    loewy = 1 + max((b.length for b in basis), default=0)
    return basis, nf, loewy


# ─────────────────────────────────────────────
# Algebras given by structure constants
# ─────────────────────────────────────────────
@dataclass
class StructureAlgebra:
    """Basic algebra given by a homogeneous basis and structure constants.

    `grading[i] = (s, t)` places basis element i in e_s S e_t;
    `idempotents[v]` is the basis index of the primitive idempotent at v;
    `labels[i]` names basis element i (used to name arrows).
    """

    field: FieldSpec
    vertices: tuple[str, ...]
    grading: list[tuple[str, str]]
    idempotents: dict[str, int]
    mult: dict[tuple[int, int], Vector]
    labels: list[str]

    @property
    def dim(self) -> int:
        return len(self.grading)

    def product(self, x: Sequence, y: Sequence) -> list:
        out = [self.field.zero] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in self.mult.get((i, j), {}).items():
                    out[k] += a * b * c
        return out

    def unit(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v


def _loewy_length(s: StructureAlgebra, radical: list[int]) -> int:
    if not radical:
        return 1
    power = ExactMatrix(s.field, [s.unit(i) for i in radical], (len(radical), s.dim))
    length = 1
    while power.nrows:
        vectors = [s.product(x, s.unit(r)) for x in power.rows for r in radical]
        vectors = [v for v in vectors if any(v)]
        length += 1
        if not vectors:
            break
        reduced, pivots = rref(ExactMatrix(s.field, vectors, (len(vectors), s.dim)))
        power = reduced.take_rows(range(len(pivots)))
        if length > s.dim + 1:
            raise InvariantBreach("radical of a structure algebra is not nilpotent")
    return length


def _arrow_name(label: str, taken: set[str]) -> str:
    base = label.replace("*", "_").replace(" ", "") or "x"
    name, k = base, 2
    while name in taken:
        name, k = f"{base}_{k}", k + 1
    taken.add(name)
    return name


def present(s: StructureAlgebra, kind: str, *, name: str = "", ambient=None) -> BoundQuiverAlgebra:
    """Re-present a structure-constant algebra as a bound quiver algebra.

    Arrows lift a basis of rad/rad^2 (chosen greedily among basis elements);
    relations span the kernel of word evaluation up to the Loewy length.
    The rebuilt algebra is checked to have the same dimension and carries a
    PresentationOrigin with the change-of-basis matrices.
    """
    field = s.field
    zero = field.zero
    idem = set(s.idempotents.values())
    radical = [i for i in range(s.dim) if i not in idem]
    loewy = _loewy_length(s, radical)

    rad2 = [s.product(s.unit(i), s.unit(j)) for i in radical for j in radical
            if s.grading[i][1] == s.grading[j][0]]
    rad2 = [v for v in rad2 if any(v)]
    taken: set[str] = set()
    arrows: list[Arrow] = []
    elements: dict[str, list] = {}
    for src in s.vertices:
        for tgt in s.vertices:
            block = [v for v in rad2 if _support_grading(s, v) == (src, tgt)]
            current = rank(ExactMatrix(field, block, (len(block), s.dim))) if block else 0
            for i in radical:
                if s.grading[i] != (src, tgt):
                    continue
                trial = block + [s.unit(i)]
                r = rank(ExactMatrix(field, trial, (len(trial), s.dim)))
                if r > current:
                    block, current = trial, r
                    arrow = Arrow(_arrow_name(s.labels[i], taken), src, tgt)
                    arrows.append(arrow)
                    elements[arrow.name] = s.unit(i)

    # evaluate words up to the Loewy length
    words: dict[Path, list] = {Path(v, v): s.unit(s.idempotents[v]) for v in s.vertices}
    frontier = [Path(v, v) for v in s.vertices]
    by_ends: dict[tuple[str, str], list[Path]] = {}
    for length in range(1, max(loewy, 2) + 1):
        nxt = []
        for w in frontier:
            for a in arrows:
                if a.source != w.target:
                    continue
                word = Path(w.source, a.target, w.arrows + (a.name,))
                words[word] = s.product(words[w], elements[a.name])
                nxt.append(word)
                if length >= 2:
                    by_ends.setdefault((word.source, word.target), []).append(word)
        frontier = nxt

    relations = []
    for (src, tgt), group in by_ends.items():
        values = ExactMatrix(field, [words[w] for w in group], (len(group), s.dim))
        kernel = left_kernel(values)
        for row in kernel.rows:
            relations.append(tuple((c, w.arrows) for c, w in zip(row, group) if c))

    presentation = QuiverPresentation(
        field=field,
        vertices=s.vertices,
        arrows=tuple(arrows),
        relations=tuple(relations),
        path_length_bound=max(loewy, 2),
        name=name,
    )
    algebra = build_algebra(presentation)
    if algebra.dim != s.dim:
        raise InvariantBreach(f"presentation of {kind} algebra has dim {algebra.dim}, expected {s.dim}")
    to_source = ExactMatrix(field, [words[b] if b in words else _evaluate(s, b, elements) for b in algebra.basis],
                            (algebra.dim, s.dim))
    from_source = inverse(to_source) if algebra.dim else to_source
    algebra.origin = PresentationOrigin(kind, s, elements, to_source, from_source, ambient=ambient)
    return algebra


def _support_grading(s: StructureAlgebra, v: Sequence) -> tuple[str, str] | None:
    for i, c in enumerate(v):
        if c:
            return s.grading[i]
    return None


def _evaluate(s: StructureAlgebra, path: Path, elements: Mapping[str, list]) -> list:
    value = s.unit(s.idempotents[path.source])
    for name in path.arrows:
        value = s.product(value, elements[name])
    return value


# ─────────────────────────────────────────────
# Corners and idempotent quotients
# ─────────────────────────────────────────────
def _restricted_structure(a: BoundQuiverAlgebra, keep: list[int], vertices: list[str],
                          reduce: Callable[[Vector], list]) -> StructureAlgebra:
    local = {k: i for i, k in enumerate(keep)}
    mult: dict[tuple[int, int], Vector] = {}
    for i, x in enumerate(keep):
        for j, y in enumerate(keep):
            prod = a.mult.get((x, y))
            if not prod:
                continue
            coords = reduce(prod)
            nz = {local_k: c for local_k, c in enumerate(coords) if c}
            if nz:
                mult[(i, j)] = nz
    return StructureAlgebra(
        field=a.field,
        vertices=tuple(vertices),
        grading=[(a.basis[k].source, a.basis[k].target) for k in keep],
        idempotents={v: local[a.idempotents[v]] for v in vertices},
        mult=mult,
        labels=[str(a.basis[k]) for k in keep],
    )


def corner_algebra(a: BoundQuiverAlgebra, verts: Iterable[str]) -> BoundQuiverAlgebra:
    """eAe for e the sum of e_v over `verts`, as a presented algebra (the zero algebra for no vertices)."""
    chosen = {a.check_vertex(v) for v in verts}
    if chosen == set(a.vertices):
        return a
    vertices = [v for v in a.vertices if v in chosen]
    keep = [i for i, p in enumerate(a.basis) if p.source in chosen and p.target in chosen]
    local = {k: i for i, k in enumerate(keep)}

    def reduce(prod: Vector) -> list:
        out = [a.field.zero] * len(keep)
        for k, c in prod.items():
            out[local[k]] = c
        return out

    s = _restricted_structure(a, keep, vertices, reduce)
    corner = present(s, "corner", name=f"{a.name or 'A'}[{','.join(vertices)}]", ambient=a)
    corner.origin.extra["embedding"] = keep
    log.info("corner on %s: dim %d", vertices, corner.dim)
    return corner


def idempotent_ideal(a: BoundQuiverAlgebra, verts: Iterable[str]) -> tuple[ExactMatrix, list[int]]:
    """Reduced basis (rows over A's basis) and pivots of the two-sided ideal AeA."""
    chosen = set(verts)
    vectors = []
    for i, x in enumerate(a.basis):
        if x.target not in chosen:
            continue
        for j, y in enumerate(a.basis):
            if y.source != x.target:
                continue
            prod = a.mult.get((i, j))
            if prod:
                row = [a.field.zero] * a.dim
                for k, c in prod.items():
                    row[k] = c
                vectors.append(row)
    if not vectors:
        return ExactMatrix.zeros(a.field, 0, a.dim), []
    reduced, pivots = rref(ExactMatrix(a.field, vectors, (len(vectors), a.dim)))
    return reduced.take_rows(range(len(pivots))), pivots


def reduce_modulo(ideal: ExactMatrix, pivots: Sequence[int], vector: Vector, dim: int, field: FieldSpec) -> list:
    """Dense normal form of `vector` modulo a reduced ideal basis (pivot coordinates cleared)."""
    out = [field.zero] * dim
    for k, c in vector.items():
        out[k] += c
    for row, p in zip(ideal.rows, pivots):
        c = out[p]
        if c:
            out = [x - c * y for x, y in zip(out, row)]
    return out


def quotient_by_idempotent_ideal(a: BoundQuiverAlgebra, verts: Iterable[str]) -> BoundQuiverAlgebra:
    """A/AeA for e the sum of e_v over `verts`; vertices are the complement."""
    chosen = {a.check_vertex(v) for v in verts}
    if not chosen:
        raise ValueError("the idempotent quotient needs at least one vertex")
    ideal, pivots = idempotent_ideal(a, chosen)
    pivot_set = set(pivots)
    keep = [i for i in range(a.dim) if i not in pivot_set]
    vertices = [v for v in a.vertices if v not in chosen]
    if len(keep) != a.dim - ideal.nrows:
        raise InvariantBreach("quotient dimension bookkeeping failed")

    def reduce(prod: Vector) -> list:
        dense = reduce_modulo(ideal, pivots, prod, a.dim, a.field)
        return [dense[k] for k in keep]

    s = _restricted_structure(a, keep, vertices, reduce)
    quotient = present(s, "quotient", name=f"{a.name or 'A'}/({','.join(sorted(chosen))})", ambient=a)
    quotient.origin.extra.update(embedding=keep, ideal=ideal, pivots=pivots)
    log.info("quotient by %s: dim %d (ideal dim %d)", sorted(chosen), quotient.dim, ideal.nrows)
    return quotient
