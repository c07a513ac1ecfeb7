"""Exact integer linear algebra on plain tuples.

Vectors are tuples of Python ints, matrices are tuples of equal-length row
tuples.  Everything here is exact: elimination is fraction-free (Bareiss),
so intermediate entries stay integral and bounded by minors of the input.
No floating point, no fixed-width arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


class ZeroVector(ValueError):
    """Raised when an operation needs a nonzero vector."""


def vec(entries: Iterable[int]) -> Vec:
    return tuple(int(x) for x in entries)


def mat(rows: Iterable[Iterable[int]]) -> Mat:
    m = tuple(vec(r) for r in rows)
    if m:
        width = len(m[0])
        for r in m:
            if len(r) != width:
                raise ValueError("matrix rows must have equal length")
    return m


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def matvec(m: Mat, v: Sequence[int]) -> Vec:
    return tuple(dot(row, v) for row in m)


def primitive(v: Sequence[int]) -> Vec:
    """Divide by the positive gcd of the entries; direction is preserved."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVector("cannot normalize the zero vector")
    if g == 1:
        return tuple(v)
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the reduced rows and the list of pivot columns.  Pivoting is
    deterministic: for each column the first row (top to bottom) with a
    nonzero entry is used, so results are reproducible across runs.
    """
    if not rows:
        return rows, []
    n_rows, n_cols = len(rows), len(rows[0])
    piv_cols: list[int] = []
    r = 0
    prev = 1
    for c in range(n_cols):
        piv = None
        for i in range(r, n_rows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rr = rows[r]
        for i in range(r + 1, n_rows):
            ri = rows[i]
            f = ri[c]
            for j in range(c, n_cols):
                ri[j] = (pv * ri[j] - f * rr[j]) // prev
        piv_cols.append(c)
        prev = pv
        r += 1
        if r == n_rows:
            break
    return rows, piv_cols


def rank(m: Mat) -> int:
    """Rank over the rationals, computed exactly."""
    rows = [list(r) for r in m if any(r)]
    if not rows:
        return 0
    _, piv_cols = _bareiss_echelon(rows)
    return len(piv_cols)


def rank_with_rows(m: Mat, extra: Sequence[int]) -> int:
    """Rank of m with one extra row appended."""
    if m and len(extra) != len(m[0]):
        raise ValueError(f"row length {len(extra)} does not match {len(m[0])} columns")
    return rank(m + (tuple(extra),))


def integer_kernel_basis(m: Mat) -> list[Vec]:
    """Primitive integer basis of the right kernel of m.

    Returns cols(m) - rank(m) linearly independent primitive vectors t with
    m @ t = 0, in a deterministic order (one vector per free column, free
    columns ascending).  The vectors are not normalized beyond clearing the
    gcd; kernel elements keep integer coordinates throughout.
    """
    if not m:
        return []
    n_cols = len(m[0])
    rows = [list(r) for r in m if any(r)]
    echelon, piv_cols = _bareiss_echelon(rows)
    free_cols = [c for c in range(n_cols) if c not in piv_cols]
    basis: list[Vec] = []
    for fc in free_cols:
        sol: list[Fraction] = [Fraction(0)] * n_cols
        sol[fc] = Fraction(1)
        # back substitution over the echelon rows (pivot entries are nonzero)
        for i in range(len(piv_cols) - 1, -1, -1):
            pc = piv_cols[i]
            row = echelon[i]
            s = sum((Fraction(row[j]) * sol[j] for j in range(pc + 1, n_cols) if row[j] != 0), Fraction(0))
            sol[pc] = -s / row[pc]
        denom = 1
        for x in sol:
            denom = lcm(denom, x.denominator)
        basis.append(primitive(tuple(int(x * denom) for x in sol)))
    return basis


def kernel_dimension(m: Mat, n_cols: int | None = None) -> int:
    if n_cols is None:
        if not m:
            raise ValueError("column count needed for an empty matrix")
        n_cols = len(m[0])
    return n_cols - rank(m)
