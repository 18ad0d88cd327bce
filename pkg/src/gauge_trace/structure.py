"""Cycle taxonomy, path-count finiteness, freeness and gauge-invariance verdicts."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Union

from .errors import InternalInconsistency
from .graph import Graph, LoopClass, Path, check_loop_in


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()
Count = Union[int, _Infinite]


def is_finite(c: Count) -> bool:
    return c is not INFINITE


def total(counts: dict[str, Count]) -> Count:
    if any(c is INFINITE for c in counts.values()):
        return INFINITE
    return sum(counts.values())


def _tarjan(nodes: Iterable[Hashable], succ: Callable[[Hashable], Iterable[Hashable]]) -> list[list]:
    """Iterative Tarjan; components come out in reverse topological order."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    comps: list[list] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(succ(nxt))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.append(x)
                    if x == node:
                        break
                comps.append(comp)
    return comps


def scc(g: Graph) -> list[frozenset[str]]:
    """Strongly connected components, ordered by their least vertex id."""
    comps = _tarjan(g.vertices, lambda v: [e.rng for e in g.edges_out(v)])
    return sorted((frozenset(c) for c in comps), key=min)


def enumerate_isolated_loop_classes(g: Graph) -> list[LoopClass]:
    """One class per component that is exactly a simple cycle.

    In a finite graph a loop is isolated iff it is primitive and every loop
    based at its range vertex is one of its powers, which happens iff its
    component carries no edges besides the cycle itself.
    """
    found = []
    for comp in scc(g):
        internal = [e for e in g.edges if e.src in comp and e.rng in comp]
        if len(internal) != len(comp):
            continue
        into = defaultdict(list)
        outof = defaultdict(list)
        for e in internal:
            into[e.rng].append(e)
            outof[e.src].append(e)
        if any(len(into[v]) != 1 or len(outof[v]) != 1 for v in comp):
            continue
        start = min(comp)
        edges = []
        cur = start
        while True:
            e = into[cur][0]
            edges.append(e.id)
            cur = e.src
            if cur == start:
                break
        found.append(LoopClass.of(g, g.path(edges)))
    return sorted(found, key=lambda a: (a.base, a.representative.edges))


_ESCAPED = -1


def _walk_counts(g: Graph, start: str, forbidden_walk_prefix: tuple[str, ...] = ()) -> dict[str, Count]:
    """Count paths with source ``start``, grouped by range vertex.

    Paths are explored as ``src -> rng`` walks from ``start``.  When
    ``forbidden_walk_prefix`` is non-empty, walks beginning with exactly that
    edge sequence are discarded; a product node is ``(vertex, state)`` where
    ``state`` is the matched length so far or ``_ESCAPED``.  Reaching the full
    length is the dead state, which is never materialised.
    """
    k = len(forbidden_walk_prefix)
    start_node = (start, 0 if k else _ESCAPED)

    def succ(node):
        v, s = node
        out = []
        for e in g.edges_out(v):
            if s == _ESCAPED:
                out.append((e.rng, _ESCAPED))
            elif e.id == forbidden_walk_prefix[s]:
                if s + 1 < k:
                    out.append((e.rng, s + 1))
            else:
                out.append((e.rng, _ESCAPED))
        return out

    succ_cache: dict = {}
    reach = [start_node]
    seen = {start_node}
    queue = deque([start_node])
    while queue:
        node = queue.popleft()
        nxt = succ(node)
        succ_cache[node] = nxt
        for y in nxt:
            if y not in seen:
                seen.add(y)
                reach.append(y)
                queue.append(y)

    comps = _tarjan(reach, lambda x: succ_cache[x])
    cyclic = set()
    for comp in comps:
        if len(comp) > 1 or comp[0] in succ_cache[comp[0]]:
            cyclic.update(comp)
    infinite = set(cyclic)
    queue = deque(cyclic)
    while queue:
        x = queue.popleft()
        for y in succ_cache[x]:
            if y not in infinite:
                infinite.add(y)
                queue.append(y)

    finite_nodes = [x for x in reach if x not in infinite]
    indeg = {x: 0 for x in finite_nodes}
    for x in finite_nodes:
        for y in succ_cache[x]:
            if y in indeg:
                indeg[y] += 1
    ways = {x: 0 for x in finite_nodes}
    if start_node in ways:
        ways[start_node] = 1
    queue = deque(x for x in finite_nodes if indeg[x] == 0)
    while queue:
        x = queue.popleft()
        for y in succ_cache[x]:
            if y not in ways:
                continue
            ways[y] += ways[x]
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)

    counts: dict[str, Count] = {v: 0 for v in g.vertices}
    for x in infinite:
        counts[x[0]] = INFINITE
    for x, n in ways.items():
        if counts[x[0]] is not INFINITE:
            counts[x[0]] += n
    return counts


def count_paths_into_vertex(g: Graph, v: str) -> dict[str, Count]:
    """``w -> |w E* v|``: paths with source ``v`` and range ``w``."""
    g.vertex_path(v)
    return _walk_counts(g, v)


def count_E_star_alpha(g: Graph, alpha: LoopClass | Path) -> dict[str, Count]:
    """``w -> |w E*_alpha|`` for the given rotation of ``alpha``.

    ``E*_alpha`` holds the paths with source ``r(alpha)`` that do not end in
    ``alpha``.  Ending in ``alpha`` means the walk read from the source end
    starts with ``alpha`` reversed.
    """
    if isinstance(alpha, Path):
        alpha = LoopClass.of(g, alpha)
    check_loop_in(g, alpha)
    rep = alpha.representative
    return _walk_counts(g, rep.range, tuple(reversed(rep.edges)))


def is_isolated(g: Graph, alpha: LoopClass) -> bool:
    return alpha in enumerate_isolated_loop_classes(g)


def is_summable(g: Graph, alpha: LoopClass) -> bool:
    if not is_isolated(g, alpha):
        return False
    return all(is_finite(c) for c in count_E_star_alpha(g, alpha).values())


def summable_loop_classes(g: Graph) -> list[LoopClass]:
    return [a for a in enumerate_isolated_loop_classes(g)
            if all(is_finite(c) for c in count_E_star_alpha(g, a).values())]


def is_free(g: Graph) -> bool:
    return not enumerate_isolated_loop_classes(g)


def _simple_loops_at(g: Graph, v: str) -> list[tuple[str, ...]]:
    """Loops ``l1 ... ln`` with ``r(l1) = v`` and pairwise distinct ranges."""
    loops = []

    def grow(edges: list[str], ranges: set[str], cur_source: str) -> None:
        for e in g.edges_into(cur_source):
            if e.src == v:
                loops.append(tuple(edges) + (e.id,))
            elif e.src not in ranges:
                ranges.add(e.src)
                edges.append(e.id)
                grow(edges, ranges, e.src)
                edges.pop()
                ranges.discard(e.src)

    grow([], {v}, v)
    return loops


def _reachable_ranges(g: Graph, v: str) -> set[str]:
    """``{r(beta) : beta in E* v}``."""
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for e in g.edges_out(x):
            if e.rng not in seen:
                seen.add(e.rng)
                stack.append(e.rng)
    return seen


def is_free_direct(g: Graph) -> bool:
    """Freeness from the vertex conditions (F1)-(F3).

    (F3) asks that ``v`` be isolated in a subset of the vertex space, which
    always holds for the discrete topology and is not checked.
    """
    for v in g.vertices:
        reach = _reachable_ranges(g, v)
        for loop in _simple_loops_at(g, v):
            loop_edge_at = {g.edge(l).rng: l for l in loop}
            ok = all(e.id == loop_edge_at[e.rng]
                     for e in g.edges
                     if e.src in reach and e.rng in loop_edge_at)
            if ok:
                return False
    return True


@dataclass(frozen=True)
class Verdict:
    free: bool
    states_gauge_invariant: bool
    weights_gauge_invariant: bool
    witnesses: list[LoopClass] = field(default_factory=list)


def gauge_invariance_verdict(g: Graph) -> Verdict:
    isolated = enumerate_isolated_loop_classes(g)
    counts = {a: count_E_star_alpha(g, a) for a in isolated}
    summable = [a for a in isolated if all(is_finite(c) for c in counts[a].values())]
    state_witnesses = [a for a in summable if is_finite(total(counts[a]))]
    weights_gi = not summable
    states_gi = not state_witnesses
    if weights_gi != states_gi:
        raise InternalInconsistency("state and weight verdicts differ on a finite graph")
    verdict = Verdict(not isolated, states_gi, weights_gi, summable)
    if verdict.free and not verdict.weights_gauge_invariant:
        raise InternalInconsistency("free graph with a non gauge-invariant weight")
    return verdict
