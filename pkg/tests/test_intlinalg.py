import random
from fractions import Fraction

import pytest

from bellcone.intlinalg import (
    ZeroVector,
    integer_kernel_basis,
    mat,
    matvec,
    primitive,
    rank,
    rank_with_rows,
)


def rank_oracle(rows):
    """Independent rank computation: plain Gaussian elimination over Fraction."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == n_rows:
            break
    return r


def test_rank_identity():
    assert rank(mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3


def test_rank_zero_matrix():
    assert rank(mat([[0, 0], [0, 0]])) == 0
    assert rank(mat([])) == 0


def test_rank_rectangular():
    assert rank(mat([[1, 2, 3], [2, 4, 6]])) == 1
    assert rank(mat([[1, 2], [3, 4], [5, 6]])) == 2


def test_rank_against_oracle_random():
    rng = random.Random(20240917)
    for _ in range(300):
        n_rows = rng.randint(1, 7)
        n_cols = rng.randint(1, 7)
        rows = [[rng.randint(-6, 6) for _ in range(n_cols)] for _ in range(n_rows)]
        assert rank(mat(rows)) == rank_oracle(rows)


def test_rank_big_entries():
    # entries that overflow 64-bit words during elimination
    rows = [[10**30, 1, 0], [1, 10**30, 1], [0, 1, 10**30]]
    assert rank(mat(rows)) == rank_oracle(rows)


def test_kernel_simple():
    basis = integer_kernel_basis(mat([[1, 1]]))
    assert len(basis) == 1
    assert basis[0] in ((1, -1), (-1, 1))


def test_kernel_identity_is_trivial():
    assert integer_kernel_basis(mat([[1, 0], [0, 1]])) == []


def test_kernel_properties_random():
    rng = random.Random(5)
    for _ in range(200):
        n_rows = rng.randint(1, 6)
        n_cols = rng.randint(1, 6)
        m = mat([[rng.randint(-5, 5) for _ in range(n_cols)] for _ in range(n_rows)])
        basis = integer_kernel_basis(m)
        assert len(basis) == n_cols - rank(m)
        for t in basis:
            assert matvec(m, t) == (0,) * n_rows
            assert primitive(t) == t
        if basis:
            assert rank(mat(basis)) == len(basis)


def test_kernel_deterministic():
    m = mat([[2, 4, 6, 0], [1, 2, 3, 0]])
    assert integer_kernel_basis(m) == integer_kernel_basis(m)


def test_primitive():
    assert primitive((2, 4, -6)) == (1, 2, -3)
    assert primitive((-2, -4)) == (-1, -2)
    assert primitive((0, 3, 0)) == (0, 1, 0)
    with pytest.raises(ZeroVector):
        primitive((0, 0, 0))


def test_primitive_idempotent():
    rng = random.Random(11)
    for _ in range(100):
        v = tuple(rng.randint(-20, 20) for _ in range(rng.randint(1, 6)))
        if not any(v):
            continue
        assert primitive(primitive(v)) == primitive(v)


def test_rank_with_rows():
    ident = mat([[1, 0], [0, 1]])
    assert rank_with_rows(ident, (1, 1)) == 2
    assert rank_with_rows(mat([]), (1, 0)) == 1
    m = mat([[1, 2], [0, 1]])
    assert rank_with_rows(m, (1, 3)) == rank(m)
    with pytest.raises(ValueError):
        rank_with_rows(ident, (1, 2, 3))
