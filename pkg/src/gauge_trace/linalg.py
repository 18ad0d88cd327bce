"""Dense exact linear algebra over the rationals (lists of ``Fraction``)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def to_fractions(m: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def matpow(a: Sequence[Sequence], k: int) -> list[list]:
    n = len(a)
    result: list[list] = [[int(i == j) for j in range(n)] for i in range(n)]
    base = [list(row) for row in a]
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    r = to_fractions(m)
    rows = len(r)
    cols = len(r[0]) if rows else 0
    pivots: list[int] = []
    lead = 0
    for c in range(cols):
        if lead >= rows:
            break
        piv = next((i for i in range(lead, rows) if r[i][c] != 0), None)
        if piv is None:
            continue
        r[lead], r[piv] = r[piv], r[lead]
        inv = 1 / r[lead][c]
        r[lead] = [x * inv for x in r[lead]]
        for i in range(rows):
            if i != lead and r[i][c] != 0:
                f = r[i][c]
                r[i] = [x - f * y for x, y in zip(r[i], r[lead])]
        pivots.append(c)
        lead += 1
    return r, pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : m x = 0}``; ``ncols`` is needed when ``m`` has no rows."""
    if not m:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    r, pivots = rref(m)
    n = len(r[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in enumerate(pivots):
            x[p] = -r[row][f]
        basis.append(x)
    return basis


def column_space(m: Sequence[Sequence]) -> list[Vector]:
    """Basis of the image: the pivot columns of ``m`` itself."""
    if not m:
        return []
    _, pivots = rref(m)
    return [[Fraction(row[c]) for row in m] for c in pivots]


def solve(m: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of ``m x = b`` (free variables set to zero), or ``None``."""
    n = len(m[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    r, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in enumerate(pivots):
        x[p] = r[row][n]
    return x
