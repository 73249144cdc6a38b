"""Exact linear algebra over prime fields and the rationals.

Everything above this module (Hom spaces, Ext groups, structure constants)
reduces to the handful of operations here: row reduction, kernels, and
verified solving. Matrices are immutable and row-major; vectors are rows,
matching the right-module convention used throughout the package.

Arithmetic is delegated to sympy's DomainMatrix over `GF(p)` or `QQ`.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np
from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from QH_Toolkit.errors import InvariantBreach


log = logging.getLogger(__name__)


# ─────────────────────────────────────────────
# Fields
# ─────────────────────────────────────────────
@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p) or the rationals (characteristic 0)."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or p == 1 or (p > 1 and not isprime(p)):
            raise ValueError(f"field characteristic must be 0 or a prime, got {p}")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(int(p))

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse `GF(p)` or `QQ`."""
        t = text.strip().replace(" ", "")
        if t.upper() == "QQ":
            return cls.rationals()
        if t.upper().startswith("GF(") and t.endswith(")"):
            digits = t[3:-1]
            if digits.isdigit():
                return cls.prime(int(digits))
        raise ValueError(f"unknown field {text!r}; expected GF(p) or QQ")

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def is_finite(self) -> bool:
        return self.characteristic > 0

    @property
    def size(self) -> int | None:
        return self.characteristic if self.is_finite else None

    @cached_property
    def domain(self):
        if self.is_finite:
            return GF(self.characteristic, symmetric=False)
        return QQ

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def convert(self, value):
        """Coerce an int, Fraction, or text like `-3` / `1/2` into the field."""
        K = self.domain
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return K(value)
        if isinstance(value, Fraction):
            if self.is_finite:
                if value.denominator % self.characteristic == 0:
                    raise ValueError(f"{value} has no image in {self}")
                return K(value.numerator) / K(value.denominator)
            return QQ(value.numerator, value.denominator)
        if K.of_type(value):
            return value
        return K.convert(value)

    def key(self, a):
        """Hashable canonical form of a scalar."""
        if self.is_finite:
            return int(a) % self.characteristic
        return (int(a.numerator), int(a.denominator))

    def to_text(self, a) -> str:
        if self.is_finite:
            return str(int(a) % self.characteristic)
        num, den = int(a.numerator), int(a.denominator)
        return str(num) if den == 1 else f"{num}/{den}"

    def elements(self) -> list:
        if not self.is_finite:
            raise ValueError("the rationals cannot be enumerated")
        return [self.domain(i) for i in range(self.characteristic)]

    def random(self, rng: np.random.Generator, *, nonzero: bool = False):
        if self.is_finite:
            low = 1 if nonzero else 0
            return self.domain(int(rng.integers(low, self.characteristic)))
        while True:
            a = QQ(int(rng.integers(-3, 4)))
            if a or not nonzero:
                return a


def projective_points(field: FieldSpec, d: int) -> Iterator[list]:
    """Nonzero vectors of length d up to scalars (leading nonzero entry is 1)."""
    elements = field.elements()
    for lead in range(d):
        for tail in itertools.product(elements, repeat=d - lead - 1):
            yield [field.zero] * lead + [field.one] + list(tail)


def projective_point_count(field: FieldSpec, d: int) -> int:
    q = field.characteristic
    return (q ** d - 1) // (q - 1) if d else 0


# ─────────────────────────────────────────────
# Matrices
# ─────────────────────────────────────────────
class ExactMatrix:
    """Immutable dense matrix with entries in a FieldSpec."""

    __slots__ = ("field", "shape", "_rows")

    def __init__(self, field: FieldSpec, rows: Iterable[Sequence], shape: tuple[int, int] | None = None):
        rows = tuple(tuple(r) for r in rows)
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
            raise ValueError(f"rows do not match shape {shape}")
        self.field = field
        self.shape = (int(shape[0]), int(shape[1]))
        self._rows = rows

    # constructors
    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence], ncols: int | None = None) -> "ExactMatrix":
        converted = [[field.convert(x) for x in row] for row in rows]
        width = ncols if ncols is not None else (len(converted[0]) if converted else 0)
        return cls(field, converted, (len(converted), width))

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "ExactMatrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], (nrows, ncols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "ExactMatrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], (n, n))

    @classmethod
    def unit_rows(cls, field: FieldSpec, indices: Sequence[int], ncols: int) -> "ExactMatrix":
        z, o = field.zero, field.one
        return cls(field, [[o if j == i else z for j in range(ncols)] for i in indices], (len(indices), ncols))

    @classmethod
    def from_domain_matrix(cls, field: FieldSpec, dm: DomainMatrix) -> "ExactMatrix":
        return cls(field, dm.to_list(), dm.shape)

    def to_domain_matrix(self) -> DomainMatrix:
        sparse = {}
        for i, row in enumerate(self._rows):
            nz = {j: a for j, a in enumerate(row) if a}
            if nz:
                sparse[i] = nz
        return DomainMatrix(sparse, self.shape, self.field.domain)

    # access
    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def take_rows(self, indices: Iterable[int]) -> "ExactMatrix":
        picked = [self._rows[i] for i in indices]
        return ExactMatrix(self.field, picked, (len(picked), self.ncols))

    def take_cols(self, indices: Sequence[int]) -> "ExactMatrix":
        indices = list(indices)
        return ExactMatrix(self.field, [[r[j] for j in indices] for r in self._rows], (self.nrows, len(indices)))

    def is_zero(self) -> bool:
        return not any(a for row in self._rows for a in row)

    def key(self) -> tuple:
        f = self.field
        return (self.shape, tuple(tuple(f.key(a) for a in row) for row in self._rows))

    def to_text_rows(self) -> list[list[str]]:
        return [[self.field.to_text(a) for a in row] for row in self._rows]

    # arithmetic
    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        m, n = self.nrows, other.ncols
        if m == 0 or n == 0 or self.ncols == 0:
            return ExactMatrix.zeros(self.field, m, n)
        product = self.to_domain_matrix() * other.to_domain_matrix()
        return ExactMatrix.from_domain_matrix(self.field, product)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return ExactMatrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.shape)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot subtract {other.shape} from {self.shape}")
        return ExactMatrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.shape)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.field, [[-a for a in r] for r in self._rows], self.shape)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix(self.field, [[c * a for a in r] for r in self._rows], self.shape)

    @property
    def T(self) -> "ExactMatrix":
        cols = [tuple(r[j] for r in self._rows) for j in range(self.ncols)]
        return ExactMatrix(self.field, cols, (self.ncols, self.nrows))

    def flatten(self) -> list:
        return [a for row in self._rows for a in row]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        body = "; ".join(" ".join(r) for r in self.to_text_rows())
        return f"ExactMatrix[{self.field}]{self.shape}({body})"


def hstack(field: FieldSpec, blocks: Sequence[ExactMatrix], nrows: int) -> ExactMatrix:
    """Concatenate side by side; `nrows` fixes the shape when `blocks` is empty."""
    rows = [sum((b.row(i) for b in blocks), ()) for i in range(nrows)]
    return ExactMatrix(field, rows, (nrows, sum(b.ncols for b in blocks)))


def vstack(field: FieldSpec, blocks: Sequence[ExactMatrix], ncols: int) -> ExactMatrix:
    rows = [r for b in blocks for r in b.rows]
    return ExactMatrix(field, rows, (len(rows), ncols))


def random_matrix(field: FieldSpec, nrows: int, ncols: int, rng: np.random.Generator) -> ExactMatrix:
    return ExactMatrix(field, [[field.random(rng) for _ in range(ncols)] for _ in range(nrows)], (nrows, ncols))


# ─────────────────────────────────────────────
# Row reduction and its consumers
# ─────────────────────────────────────────────
def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form and pivot columns (zero rows kept at the bottom)."""
    if m.nrows == 0 or m.ncols == 0:
        return ExactMatrix.zeros(m.field, m.nrows, m.ncols), []
    reduced, pivots = m.to_domain_matrix().rref()
    return ExactMatrix.from_domain_matrix(m.field, reduced), list(pivots)


def rank(m: ExactMatrix) -> int:
    return len(rref(m)[1])


def row_basis(m: ExactMatrix) -> ExactMatrix:
    """Reduced basis of the row space."""
    reduced, pivots = rref(m)
    return reduced.take_rows(range(len(pivots)))


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns spanning {x : m x = 0}; shape (ncols, nullity)."""
    field = m.field
    n = m.ncols
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    columns = []
    for f in free:
        x = [field.zero] * n
        x[f] = field.one
        for i, p in enumerate(pivots):
            x[p] = -reduced[i, f]
        columns.append(x)
    return ExactMatrix(field, columns, (len(columns), n)).T


def left_kernel(m: ExactMatrix) -> ExactMatrix:
    """Rows spanning {x : x m = 0}."""
    return kernel_basis(m.T).T


def solve(m: ExactMatrix, rhs: ExactMatrix) -> ExactMatrix | None:
    """Some X with m X = rhs, or None when the system is inconsistent.

    The returned solution is checked by substitution.
    """
    if m.nrows != rhs.nrows:
        raise ValueError(f"solve: {m.shape} against right-hand side {rhs.shape}")
    field = m.field
    c, s = m.ncols, rhs.ncols
    if m.nrows == 0:
        return ExactMatrix.zeros(field, c, s)
    augmented = hstack(field, [m, rhs], m.nrows)
    reduced, pivots = rref(augmented)
    if any(p >= c for p in pivots):
        return None
    x = [[field.zero] * s for _ in range(c)]
    for i, p in enumerate(pivots):
        x[p] = list(reduced.row(i)[c:])
    solution = ExactMatrix(field, x, (c, s))
    if m @ solution != rhs:
        raise InvariantBreach("solve produced a solution that does not satisfy the system")
    return solution


def solve_left(m: ExactMatrix, rhs: ExactMatrix) -> ExactMatrix | None:
    """Some X with X m = rhs, or None."""
    x = solve(m.T, rhs.T)
    return None if x is None else x.T


def complement_rows(basis: ExactMatrix, n: int) -> list[int]:
    """Coordinate indices whose unit rows complete the row space of `basis` to k^n."""
    if basis.nrows == 0:
        return list(range(n))
    pivots = set(rref(basis)[1])
    return [j for j in range(n) if j not in pivots]


def is_invertible(m: ExactMatrix) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows


def inverse(m: ExactMatrix) -> ExactMatrix:
    x = solve(m, ExactMatrix.identity(m.field, m.nrows)) if m.nrows == m.ncols else None
    if x is None:
        raise ValueError("matrix is not invertible")
    return x


def in_row_space(basis: ExactMatrix, vectors: ExactMatrix) -> bool:
    return vectors.nrows == 0 or solve_left(basis, vectors) is not None
