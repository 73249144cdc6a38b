"""
Exact linear algebra over GF(p) and QQ.
"""

from fractions import Fraction

import numpy as np
import pytest

from QH_Toolkit.core.exactla import (
    ExactMatrix,
    FieldSpec,
    inverse,
    kernel_basis,
    random_matrix,
    rank,
    rref,
    solve,
)


def M(field, rows, ncols=None):
    return ExactMatrix.from_rows(field, rows, ncols)


def test_field_parse_and_primality():
    assert FieldSpec.parse("GF(5)") == FieldSpec.prime(5)
    assert FieldSpec.parse("QQ") == FieldSpec.rationals()
    with pytest.raises(ValueError):
        FieldSpec.prime(6)
    with pytest.raises(ValueError):
        FieldSpec.parse("GF(x)")


def test_convert_reduces_fractions(gf5, qq):
    assert gf5.to_text(gf5.convert("-1")) == "4"
    assert gf5.to_text(gf5.convert("1/2")) == "3"
    assert qq.to_text(qq.convert(Fraction(6, -4))) == "-3/2"
    with pytest.raises(ValueError):
        gf5.convert("1/5")


def test_rref_examples(gf5):
    identity = ExactMatrix.identity(gf5, 2)
    assert rref(identity) == (identity, [0, 1])
    zero = ExactMatrix.zeros(gf5, 2, 2)
    assert rref(zero) == (zero, [])
    reduced, pivots = rref(M(gf5, [[2, 4], [1, 2]]))
    assert reduced == M(gf5, [[1, 2], [0, 0]])
    assert pivots == [0]


def test_kernel_examples(gf5):
    assert kernel_basis(ExactMatrix.identity(gf5, 3)).ncols == 0
    assert kernel_basis(ExactMatrix.zeros(gf5, 3, 3)).ncols == 3
    k = kernel_basis(M(gf5, [[1, 2]]))
    assert k.shape == (2, 1)
    assert k == M(gf5, [[3], [1]])


def test_solve_examples(gf5, qq):
    rhs = M(gf5, [[1], [4]])
    assert solve(ExactMatrix.identity(gf5, 2), rhs) == rhs
    assert solve(ExactMatrix.zeros(gf5, 2, 2), rhs) is None
    x = solve(M(qq, [[1, 1], [0, 1]]), M(qq, [[3], [1]]))
    assert x == M(qq, [[2], [1]])


def test_rank_nullity_fuzz(gf5):
    rng = np.random.default_rng(7)
    for _ in range(1000):
        r, c = (int(x) for x in rng.integers(1, 9, size=2))
        m = random_matrix(gf5, r, c, rng)
        k = kernel_basis(m)
        assert rank(m) + k.ncols == c
        assert (m @ k).is_zero()


def test_rref_is_idempotent(gf5):
    rng = np.random.default_rng(11)
    for _ in range(100):
        m = random_matrix(gf5, 4, 6, rng)
        once = rref(m)
        assert rref(once[0]) == once


def test_solve_then_verify(gf5):
    rng = np.random.default_rng(13)
    for _ in range(200):
        m = random_matrix(gf5, 5, 4, rng)
        rhs = random_matrix(gf5, 5, 2, rng)
        x = solve(m, rhs)
        if x is not None:
            assert m @ x == rhs
        # a consistent right-hand side always solves
        y = random_matrix(gf5, 4, 1, rng)
        assert solve(m, m @ y) is not None


def test_inverse_over_rationals(qq):
    m = M(qq, [[2, 1], [1, 1]])
    assert m @ inverse(m) == ExactMatrix.identity(qq, 2)
    with pytest.raises(ValueError):
        inverse(M(qq, [[1, 2], [2, 4]]))
