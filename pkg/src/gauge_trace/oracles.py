"""Brute-force path counting, independent of the automaton in ``structure``.

Paths with source ``v`` are listed explicitly by prepending edges at the
range end.  With ``P`` the number of live matcher states (``|V|`` times the
number of matcher positions), any listed path of length ``>= P`` repeats a
state and can be pumped, so its range has infinitely many paths; conversely
an infinite count shows up at some length in ``[P, 3P)``.  Finite counts
only involve paths shorter than ``P``.
"""

from __future__ import annotations

from .config import max_paths
from .errors import SizeLimit
from .graph import Graph, LoopClass, Path
from .structure import INFINITE, Count


def brute_force_counts(g: Graph, v: str, avoid_suffix: tuple[str, ...] = (),
                       min_length: int = 12, cap: int | None = None) -> dict[str, Count]:
    cap = max_paths() if cap is None else cap
    k = len(avoid_suffix)
    pump = len(g.vertices) * (k + 1)
    horizon = max(min_length, 3 * pump - 1)
    short: dict[str, int] = {w: 0 for w in g.vertices}
    long: set[str] = set()
    stack = [Path((), v, v)]
    listed = 0
    while stack:
        p = stack.pop()
        if k and p.edges[-k:] == avoid_suffix:
            continue
        listed += 1
        if listed > cap:
            raise SizeLimit(f"brute-force enumeration exceeded {cap} paths")
        if len(p) < pump:
            short[p.range] += 1
        else:
            long.add(p.range)
        if len(p) < horizon:
            for e in g.edges_out(p.range):
                stack.append(Path((e.id,) + p.edges, e.rng, p.source))
    return {w: (INFINITE if w in long else short[w]) for w in g.vertices}


def brute_paths_into_vertex(g: Graph, v: str, **kw) -> dict[str, Count]:
    return brute_force_counts(g, v, (), **kw)


def brute_E_star_alpha(g: Graph, alpha: LoopClass, **kw) -> dict[str, Count]:
    rep = alpha.representative
    return brute_force_counts(g, rep.range, rep.edges, **kw)
