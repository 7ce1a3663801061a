"""Exact dense linear algebra over Q.

Matrices are lists of rows. Ranks go through fraction-free (Bareiss)
elimination on integer matrices; canonical forms use reduced row echelon form
over :class:`~fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def clear_denominators(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (row space is unchanged)."""
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        m = 1
        for x in fr:
            m = lcm(m, x.denominator)
        out.append([int(x * m) for x in fr])
    return out


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free elimination."""
    a = clear_denominators(rows)
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            f = a[i][col]
            row_i, row_r = a[i], a[rank]
            for j in range(col + 1, ncols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        rank += 1
    return rank


def bareiss_det(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    fr = to_fraction_matrix(rows)
    scale = Fraction(1)
    for row in fr:
        m = 1
        for x in row:
            m = lcm(m, x.denominator)
        scale /= m
    a = clear_denominators(fr)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    a = to_fraction_matrix(rows)
    if not a:
        return [], []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    return a[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of ``{x : A x = 0}`` (right kernel), one vector per row."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pcol in zip(red, pivots):
            v[pcol] = -row[fcol]
        basis.append(v)
    return basis


def left_nullspace(rows: Sequence[Sequence]) -> Matrix:
    """Basis of ``{y : y A = 0}``."""
    if not rows:
        return []
    return nullspace(transpose(rows), len(rows))


def transpose(rows: Sequence[Sequence]) -> Matrix:
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def sparse_rank(rows: Sequence[dict[int, int]]) -> int:
    """Rank of an integer matrix given as sparse rows ``{col: value}``.

    Fraction-free elimination; each updated row is divided by the gcd of its
    entries so values stay small. Pivots are taken from the shortest row.
    """
    work = [dict(r) for r in rows if r]
    rank = 0
    while work:
        idx = min(range(len(work)), key=lambda i: len(work[i]))
        prow = work.pop(idx)
        col = min(prow)
        p = prow[col]
        rank += 1
        nxt = []
        for row in work:
            f = row.get(col)
            if f is None:
                nxt.append(row)
                continue
            new = {c: p * v for c, v in row.items()}
            for c, v in prow.items():
                nv = new.get(c, 0) - f * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            if new:
                cont = 0
                for v in new.values():
                    cont = gcd(cont, v)
                if cont > 1:
                    new = {c: v // cont for c, v in new.items()}
                nxt.append(new)
        work = nxt
    return rank


def inverse_mod_p(rows: Sequence[Sequence[int]], p: int) -> list[list[int]] | None:
    """Inverse of a square integer matrix modulo the prime ``p``, or ``None``
    when it is singular mod ``p``. Invertibility mod ``p`` certifies
    invertibility over Q."""
    n = len(rows)
    a = [[x % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [x * inv % p for x in a[col]]
        pr = a[col]
        for i in range(n):
            f = a[i][col]
            if i != col and f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], pr)]
    return [row[n:] for row in a]
