"""Exact vertex enumeration.

``extreme_rays`` runs the double description method on integer data, starting
from the nonnegative orthant and intersecting one constraint at a time.
Rays are kept as primitive integer vectors, so no rational arithmetic is
needed.  ``basic_feasible_points`` is the exhaustive alternative used as an
oracle on small inputs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .linalg import rank, solve


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _integer_row(row: Sequence) -> list[int]:
    fr = [Fraction(x) for x in row]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in fr]


def extreme_rays(n: int, equalities: Sequence[Sequence] = (),
                 inequalities: Sequence[Sequence] = ()) -> list[tuple[int, ...]]:
    """Extreme rays of ``{x >= 0 : E x = 0, G x >= 0}``.

    Rows may be rational; each is rescaled to integers.  The cone is pointed
    because it sits inside the orthant, so the combinatorial adjacency test
    (no third ray is tight on every constraint the pair shares) is exact.
    """
    if n == 0:
        return []
    rays: list[tuple[int, ...]] = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    tight: list[int] = [((1 << n) - 1) & ~(1 << i) for i in range(n)]
    next_bit = n
    constraints = [(_integer_row(r), True) for r in equalities]
    constraints += [(_integer_row(r), False) for r in inequalities]
    for row, is_eq in constraints:
        vals = [_dot(row, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        bit = 0 if is_eq else (1 << next_bit)
        if not is_eq:
            next_bit += 1
        new_rays: list[tuple[int, ...]] = []
        new_tight: list[int] = []
        for i in zero:
            new_rays.append(rays[i])
            new_tight.append(tight[i] | bit)
        if not is_eq:
            for i in pos:
                new_rays.append(rays[i])
                new_tight.append(tight[i])
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if any(k != p and k != q and (tight[k] & common) == common
                       for k in range(len(rays))):
                    continue
                vp, vq = vals[p], vals[q]
                combo = _primitive([vp * b - vq * a for a, b in zip(rays[p], rays[q])])
                new_rays.append(combo)
                new_tight.append(common | bit)
        dedup: dict[tuple[int, ...], int] = {}
        for r, t in zip(new_rays, new_tight):
            dedup.setdefault(r, t)
        rays = list(dedup)
        tight = [dedup[r] for r in rays]
        if not rays:
            break
    return sorted(rays)


def basic_feasible_points(equalities: Sequence[Sequence], rhs: Sequence,
                          inequalities: Sequence[Sequence], bounds: Sequence) -> list[tuple[Fraction, ...]]:
    """Vertices of ``{x : E x = rhs, G x <= bounds}`` by trying every tight subset.

    Exponential; intended for cross-checking on small inputs.
    """
    n = len(equalities[0]) if equalities else len(inequalities[0])
    eq = [[Fraction(x) for x in r] for r in equalities]
    ineq = [[Fraction(x) for x in r] for r in inequalities]
    found = set()
    need = n - (rank(eq) if eq else 0)
    for tight in combinations(range(len(ineq)), need):
        rows = eq + [ineq[i] for i in tight]
        if rank(rows) < n:
            continue
        x = solve(rows, list(rhs) + [Fraction(bounds[i]) for i in tight])
        if x is None:
            continue
        if all(sum(a * b for a, b in zip(r, x)) <= Fraction(bd) for r, bd in zip(ineq, bounds)):
            found.add(tuple(x))
    return sorted(found)
