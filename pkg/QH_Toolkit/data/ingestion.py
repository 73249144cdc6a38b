"""Algebra and module file ingestion.

Algebra files (`*.alg`) are line oriented:

    # comment
    field GF(5)              (or QQ; default from QH_FIELD_CHAR)
    vertex 1
    arrow a 1 2
    relation 1 a*b + -1 c*d  (paths compose left to right)
    order 2 < 1              (chains like 2 < 1 < 3 are allowed)
    bound 12
    end

Module files (`*.mod`) list `dim <vertex> <n>` lines, then for each arrow
`map <arrow>` followed by dims[source] rows of dims[target] entries
(integers or fractions, reduced into the field). Unlisted arrows act by zero.
Every error is a ParseError carrying the offending line number, except a
module that violates a relation, which raises RelationViolation.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path as FilePath
from typing import Iterator

from QH_Toolkit import config
from QH_Toolkit.core.bqa import Arrow, BoundQuiverAlgebra, QuiverPresentation, Relation, build_algebra
from QH_Toolkit.core.exactla import ExactMatrix, FieldSpec
from QH_Toolkit.core.rep import Representation
from QH_Toolkit.errors import ParseError
from QH_Toolkit.theory.poset import WeightPoset


log = logging.getLogger(__name__)

LABEL = re.compile(r"^[A-Za-z0-9_]+$")
PATH = re.compile(r"^[A-Za-z0-9_]+(\*[A-Za-z0-9_]+)*$")
SCALAR = re.compile(r"^[+-]?\d+(/\d+)?$")


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    """(line number, tokens) for every non-blank, non-comment line."""
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield number, body.split()


def _label(token: str, line: int, what: str) -> str:
    if not LABEL.match(token):
        raise ParseError(line, f"bad {what} {token!r}: use letters, digits and _")
    return token


def default_field() -> FieldSpec:
    c = config.FIELD_CHARACTERISTIC
    return FieldSpec.rationals() if c == 0 else FieldSpec.prime(c)


# ─────────────────────────────────────────────
# 1️⃣ Relations
# ─────────────────────────────────────────────
def parse_relation(text: str, field: FieldSpec, line: int | None = None) -> Relation:
    """`c1 p1 + c2 p2 ...`; a term without coefficient has coefficient 1."""
    terms = []
    for chunk in text.split("+"):
        parts = chunk.split()
        if not parts:
            raise ParseError(line, f"empty term in relation {text.strip()!r}")
        if len(parts) == 1:
            coeff, path = "1", parts[0]
        elif len(parts) == 2:
            coeff, path = parts
        else:
            raise ParseError(line, f"cannot read term {chunk.strip()!r}; expected `coefficient path`")
        if coeff in ("-", "+"):
            coeff += "1"
        if not SCALAR.match(coeff):
            raise ParseError(line, f"bad coefficient {coeff!r}")
        if not PATH.match(path):
            raise ParseError(line, f"bad path {path!r}; write arrows joined by *")
        try:
            c = field.convert(coeff)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(line, str(exc)) from exc
        if c:
            terms.append((c, tuple(path.split("*"))))
    if not terms:
        raise ParseError(line, "relation reduces to zero over the field")
    return tuple(terms)


# ─────────────────────────────────────────────
# 2️⃣ Algebra files
# ─────────────────────────────────────────────
def parse_algebra_text(text: str, *, name: str = "") -> QuiverPresentation:
    field: FieldSpec | None = None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    raw_relations: list[tuple[int, str]] = []
    order: list[tuple[str, str]] = []
    bound = config.PATH_LENGTH_BOUND
    ended = False
    last = 0

    for number, tokens in _lines(text):
        last = number
        if ended:
            raise ParseError(number, "content after `end`")
        keyword, rest = tokens[0], tokens[1:]
        if keyword == "field":
            if field is not None:
                raise ParseError(number, "field given twice")
            if vertices or arrows:
                raise ParseError(number, "field must come before vertices and arrows")
            try:
                field = FieldSpec.parse("".join(rest))
            except ValueError as exc:
                raise ParseError(number, str(exc)) from exc
        elif keyword == "vertex":
            if len(rest) != 1:
                raise ParseError(number, "expected `vertex <label>`")
            v = _label(rest[0], number, "vertex label")
            if v in vertices:
                raise ParseError(number, f"vertex {v} declared twice")
            vertices.append(v)
        elif keyword == "arrow":
            if len(rest) != 3:
                raise ParseError(number, "expected `arrow <name> <source> <target>`")
            a, s, t = (_label(x, number, "arrow or vertex") for x in rest)
            if a in {x.name for x in arrows}:
                raise ParseError(number, f"arrow {a} declared twice")
            for v in (s, t):
                if v not in vertices:
                    raise ParseError(number, f"arrow {a} uses undeclared vertex {v}")
            arrows.append(Arrow(a, s, t))
        elif keyword == "relation":
            if not rest:
                raise ParseError(number, "empty relation")
            raw_relations.append((number, " ".join(rest)))
        elif keyword == "order":
            chain = [w.strip() for w in " ".join(rest).split("<")]
            if len(chain) < 2 or not all(chain):
                raise ParseError(number, "expected `order <a> < <b>`")
            for w in chain:
                if w not in vertices:
                    raise ParseError(number, f"order names undeclared vertex {w}")
            order.extend(zip(chain, chain[1:]))
        elif keyword == "bound":
            if len(rest) != 1 or not rest[0].isdigit() or int(rest[0]) < 1:
                raise ParseError(number, "expected `bound <positive integer>`")
            bound = int(rest[0])
        elif keyword == "end":
            if rest:
                raise ParseError(number, "`end` takes no arguments")
            ended = True
        else:
            raise ParseError(number, f"unknown keyword {keyword!r}")

    if not ended:
        raise ParseError(last + 1 if last else 1, "missing `end`" if last else "empty algebra file")
    if not vertices:
        raise ParseError(last, "an algebra needs at least one vertex")
    field = field or default_field()

    try:
        partial = QuiverPresentation(field, tuple(vertices), tuple(arrows), path_length_bound=bound)
    except ParseError as exc:
        raise ParseError(last, exc.message) from exc
    relations = []
    for number, body in raw_relations:
        rel = parse_relation(body, field, number)
        try:
            partial.relation_ends(rel)
        except ParseError as exc:
            raise ParseError(number, exc.message) from exc
        relations.append(rel)
    try:
        WeightPoset(vertices, order)
    except Exception as exc:
        raise ParseError(last, f"order is not a partial order: {exc}") from exc
    return QuiverPresentation(field, tuple(vertices), tuple(arrows), tuple(relations),
                              path_length_bound=bound, order=tuple(order), name=name)


def parse_algebra_file(path: str | FilePath) -> QuiverPresentation:
    path = FilePath(path)
    presentation = parse_algebra_text(path.read_text(encoding="utf-8"), name=path.stem)
    log.info("parsed %s: %d vertices, %d arrows, %d relations", path.name,
             len(presentation.vertices), len(presentation.arrows), len(presentation.relations))
    return presentation


def print_algebra(p: QuiverPresentation) -> str:
    """Canonical text of a presentation; parsing it gives back an equal presentation."""
    out = [f"field {p.field}"]
    out += [f"vertex {v}" for v in p.vertices]
    out += [f"arrow {a.name} {a.source} {a.target}" for a in p.arrows]
    out += [f"relation {p.relation_text(rel)}" for rel in p.relations]
    out += [f"order {lo} < {hi}" for lo, hi in p.order]
    if p.path_length_bound != config.PATH_LENGTH_BOUND:
        out.append(f"bound {p.path_length_bound}")
    out.append("end")
    return "\n".join(out) + "\n"


def presentation_order(p: QuiverPresentation) -> WeightPoset:
    return WeightPoset(p.vertices, p.order)


def load_algebra(path: str | FilePath) -> tuple[BoundQuiverAlgebra, WeightPoset]:
    """Parse, build, and return the algebra with the order from its file."""
    p = parse_algebra_file(path)
    return build_algebra(p), presentation_order(p)


# ─────────────────────────────────────────────
# 3️⃣ Module files
# ─────────────────────────────────────────────
def parse_module_text(text: str, a: BoundQuiverAlgebra, *, name: str = "") -> Representation:
    dims: dict[str, int] = {}
    action: dict[str, ExactMatrix] = {}
    lines = list(_lines(text))
    i = 0
    while i < len(lines):
        number, tokens = lines[i]
        keyword, rest = tokens[0], tokens[1:]
        i += 1
        if keyword == "dim":
            if action:
                raise ParseError(number, "`dim` lines must come before every `map`")
            if len(rest) != 2 or not rest[1].isdigit():
                raise ParseError(number, "expected `dim <vertex> <n>`")
            v = rest[0]
            if v not in a.idempotents:
                raise ParseError(number, f"unknown vertex {v}")
            if v in dims:
                raise ParseError(number, f"dimension at {v} given twice")
            dims[v] = int(rest[1])
        elif keyword == "map":
            if len(rest) != 1:
                raise ParseError(number, "expected `map <arrow>`")
            name_ = rest[0]
            if name_ not in a.arrows:
                raise ParseError(number, f"unknown arrow {name_}")
            if name_ in action:
                raise ParseError(number, f"arrow {name_} given twice")
            arrow = a.arrows[name_]
            nrows, ncols = dims.get(arrow.source, 0), dims.get(arrow.target, 0)
            rows = []
            for _ in range(nrows):
                if i >= len(lines):
                    raise ParseError(number, f"map {name_} needs {nrows} rows")
                row_number, row = lines[i]
                i += 1
                if len(row) != ncols or not all(SCALAR.match(x) for x in row):
                    raise ParseError(row_number, f"map {name_}: expected {ncols} numeric entries")
                rows.append(row)
            try:
                action[name_] = ExactMatrix.from_rows(a.field, rows, ncols)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(number, str(exc)) from exc
        elif keyword == "end" and not rest:
            if i < len(lines):
                raise ParseError(lines[i][0], "content after `end`")
        else:
            raise ParseError(number, f"unknown keyword {keyword!r}")
    if not lines:
        raise ParseError(1, "empty module file")
    return Representation(a, dims, action, name=name)


def parse_module_file(path: str | FilePath, a: BoundQuiverAlgebra) -> Representation:
    """Load a module over `a`; RelationViolation names the relation that fails."""
    path = FilePath(path)
    m = parse_module_text(path.read_text(encoding="utf-8"), a, name=path.stem)
    log.info("parsed %s: dimension vector %s", path.name, m.dimension_vector())
    return m


def print_module(m: Representation) -> str:
    out = [f"dim {v} {m.dims[v]}" for v in m.algebra.vertices]
    for name_, arrow in m.algebra.arrows.items():
        if m.action[name_].is_zero():
            continue
        out.append(f"map {name_}")
        out += [" ".join(row) for row in m.text_rows(name_)]
    return "\n".join(out) + "\n"
