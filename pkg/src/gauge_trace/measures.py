"""Vertex measures, the transfer operator, Riesz decomposition and extremal measures.

All arithmetic is exact.  A vertex measure ``mu`` is vertex-invariant when
``(A mu)_v <= mu_v`` with equality at regular vertices, where
``A[v][w] = #{e : rng(e) = v, src(e) = w}``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Union

from .config import DEFAULT_MAX_POLYTOPE_VERTICES, max_paths
from .errors import (InternalInconsistency, NegativeDefect, NotInvariant, ParseError, SizeLimit,
                     ValidationError)
from .graph import Graph, LoopClass, Path, regular_vertices, singular_vertices
from .linalg import column_space, matpow, nullspace, solve
from .pathspace import AtomicMeasure, BoundaryPath
from .polytope import extreme_rays
from .structure import (count_E_star_alpha, count_paths_into_vertex, is_finite,
                        summable_loop_classes)

log = logging.getLogger(__name__)


class VertexMeasure(Mapping[str, Fraction]):
    """Immutable nonnegative rational vector over vertex ids; missing ids weigh 0."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[str, object] | None = None):
        clean: dict[str, Fraction] = {}
        for v, q in (entries or {}).items():
            q = Fraction(q)
            if q < 0:
                raise ValidationError(f"negative mass {q} at {v!r}")
            clean[v] = q
        self._entries = dict(sorted(clean.items()))

    @classmethod
    def from_vector(cls, g: Graph, vec) -> VertexMeasure:
        return cls(dict(zip(g.vertices, vec)))

    def __getitem__(self, v: str) -> Fraction:
        return self._entries.get(v, Fraction(0))

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mapping):
            return NotImplemented
        keys = set(self) | set(other)
        return all(self[k] == Fraction(other.get(k, 0)) for k in keys)

    def __hash__(self) -> int:
        return hash(tuple((k, q) for k, q in self._entries.items() if q))

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {q}" for k, q in self._entries.items())
        return f"VertexMeasure({{{inner}}})"

    def vector(self, g: Graph) -> list[Fraction]:
        return [self[v] for v in g.vertices]

    def total(self) -> Fraction:
        return sum(self._entries.values(), Fraction(0))

    def support(self) -> set[str]:
        return {v for v, q in self._entries.items() if q}

    def scaled(self, c) -> VertexMeasure:
        return VertexMeasure({v: q * c for v, q in self._entries.items()})

    def normalized(self) -> VertexMeasure:
        t = self.total()
        if t == 0:
            raise ValueError("cannot normalise the zero measure")
        return self.scaled(1 / t)

    def __add__(self, other: VertexMeasure) -> VertexMeasure:
        keys = set(self) | set(other)
        return VertexMeasure({k: self[k] + other[k] for k in keys})

    def to_dict(self) -> dict[str, str]:
        return {v: str(q) for v, q in self._entries.items()}


def measure_from_dict(g: Graph, doc: object) -> VertexMeasure:
    if not isinstance(doc, dict) or not isinstance(doc.get("measure"), dict):
        raise ParseError("measure document needs a 'measure' object")
    entries = {}
    for v, raw in doc["measure"].items():
        if not g.has_vertex(v):
            raise ValidationError(f"measure mentions unknown vertex {v!r}")
        if isinstance(raw, bool) or not isinstance(raw, (str, int)):
            raise ParseError(f"mass at {v!r} must be a rational string or integer")
        try:
            entries[v] = Fraction(str(raw))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"cannot read {raw!r} as a rational") from None
    return VertexMeasure.from_vector(g, [entries.get(v, 0) for v in g.vertices])


def parse_measure(g: Graph, text: str) -> VertexMeasure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return measure_from_dict(g, doc)


@dataclass(frozen=True)
class TransferMatrix:
    vertices: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, vw: tuple[str, str]) -> int:
        v, w = vw
        return self.rows[self.vertices.index(v)][self.vertices.index(w)]


def vertex_matrix(g: Graph) -> TransferMatrix:
    idx = g.index
    n = len(g.vertices)
    a = [[0] * n for _ in range(n)]
    for e in g.edges:
        a[idx[e.rng]][idx[e.src]] += 1
    return TransferMatrix(g.vertices, tuple(tuple(r) for r in a))


def apply_T(a: TransferMatrix, mu: Mapping[str, Fraction]) -> VertexMeasure:
    vec = [Fraction(mu.get(v, 0)) for v in a.vertices]
    out = [sum((x * y for x, y in zip(row, vec)), Fraction(0)) for row in a.rows]
    return VertexMeasure(dict(zip(a.vertices, out)))


def _t_vec(a: TransferMatrix, vec: list[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, vec)), Fraction(0)) for row in a.rows]


def is_vertex_invariant(g: Graph, mu: Mapping[str, Fraction]) -> bool:
    a = vertex_matrix(g)
    t = apply_T(a, mu)
    reg = regular_vertices(g)
    for v in g.vertices:
        m = Fraction(mu.get(v, 0))
        if m < 0 or t[v] > m or (v in reg and t[v] != m):
            return False
    return True


def _require_invariant(g: Graph, mu: Mapping[str, Fraction]) -> None:
    unknown = [v for v in mu if not g.has_vertex(v)]
    if unknown:
        raise ValidationError(f"measure mentions unknown vertices {unknown}")
    if not is_vertex_invariant(g, mu):
        a = vertex_matrix(g)
        t = apply_T(a, mu)
        reg = regular_vertices(g)
        bad = [v for v in g.vertices
               if t[v] > mu.get(v, 0) or (v in reg and t[v] != mu.get(v, 0))]
        raise NotInvariant(f"(A mu)_v vs mu_v fails at {bad}")


def l1_trace(g: Graph, mu: Mapping[str, Fraction], steps: int) -> list[Fraction]:
    """``||T^k mu||_1`` for ``k = 0 .. steps``."""
    a = vertex_matrix(g)
    vec = [Fraction(mu.get(v, 0)) for v in g.vertices]
    out = [sum(vec, Fraction(0))]
    for _ in range(steps):
        vec = _t_vec(a, vec)
        out.append(sum(vec, Fraction(0)))
    return out


def riesz_decompose(g: Graph, mu: Mapping[str, Fraction]) -> tuple[VertexMeasure, VertexMeasure]:
    """Split ``mu = mu1 + mu2`` with ``T mu1 = mu1`` and ``T^n mu2 -> 0``.

    ``mu1`` is the component of ``mu`` in ``ker (A - I)^d`` along the
    decomposition ``ker (A - I)^d + im (A - I)^d`` of the whole space
    (``d`` = number of vertices).  The limit of the decreasing sequence
    ``T^n mu`` is exactly this component, but iterating never terminates in
    exact arithmetic when the harmonic part sits on cycles.
    """
    _require_invariant(g, mu)
    n = len(g.vertices)
    if n == 0:
        return VertexMeasure(), VertexMeasure()
    a = vertex_matrix(g)
    shifted = [[a.rows[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    b = matpow(shifted, n)
    ker = nullspace(b)
    im = column_space(b)
    basis = ker + im
    if len(basis) != n:
        raise InternalInconsistency("kernel and image of (A - I)^d do not span")
    vec = [Fraction(mu.get(v, 0)) for v in g.vertices]
    cols = [[basis[j][i] for j in range(n)] for i in range(n)]
    coeff = solve(cols, vec)
    if coeff is None:
        raise InternalInconsistency("kernel/image split is singular")
    h = [sum((coeff[j] * ker[j][i] for j in range(len(ker))), Fraction(0)) for i in range(n)]
    t = [x - y for x, y in zip(vec, h)]
    if _t_vec(a, h) != h:
        raise InternalInconsistency("harmonic part is not fixed by T")
    if any(x < 0 for x in h) or any(x < 0 for x in t):
        raise InternalInconsistency("Riesz parts are not nonnegative")
    mu1 = VertexMeasure.from_vector(g, h)
    mu2 = VertexMeasure.from_vector(g, t)
    norms = l1_trace(g, mu2, 2 * n + 2)
    if any(later > earlier for earlier, later in zip(norms, norms[1:])):
        raise InternalInconsistency("||T^k mu2||_1 increases")
    return mu1, mu2


def defect(g: Graph, mu2: Mapping[str, Fraction], *, strict: bool = False) -> VertexMeasure:
    """``eta = mu2 - T mu2``.

    With ``strict`` a defect charging a regular vertex is rejected as a
    non-invariant input.
    """
    a = vertex_matrix(g)
    t = apply_T(a, mu2)
    diff = {v: Fraction(mu2.get(v, 0)) - t[v] for v in g.vertices}
    neg = [v for v, q in diff.items() if q < 0]
    if neg:
        raise NegativeDefect(f"T mu2 exceeds mu2 at {neg}")
    eta = VertexMeasure(diff)
    if strict:
        reg = regular_vertices(g)
        bad = sorted(v for v in eta.support() if v in reg)
        if bad:
            raise NotInvariant(f"defect charges regular vertices {bad}")
    return eta


@dataclass(frozen=True)
class Boundary:
    vertex: str

    def to_dict(self) -> dict:
        return {"kind": "Boundary", "vertex": self.vertex}


@dataclass(frozen=True)
class CyclicHarmonic:
    loop: LoopClass

    def to_dict(self) -> dict:
        return {"kind": "CyclicHarmonic", "loop": list(self.loop.representative.edges)}


@dataclass(frozen=True)
class HarmonicOther:
    def to_dict(self) -> dict:
        return {"kind": "HarmonicOther"}


Kind = Union[Boundary, CyclicHarmonic]


def paths_with_source(g: Graph, v: str, avoid_suffix: tuple[str, ...] = (),
                      cap: int | None = None) -> Iterator[Path]:
    """Paths with source ``v`` (grown at the range end), skipping those ending in ``avoid_suffix``.

    Terminates only when the set is finite; ``cap`` guards the rest.
    """
    cap = max_paths() if cap is None else cap
    k = len(avoid_suffix)
    stack = [Path((), v, v)]
    produced = 0
    while stack:
        p = stack.pop()
        if k and p.edges[-k:] == avoid_suffix:
            continue
        produced += 1
        if produced > cap:
            raise SizeLimit(f"more than {cap} paths with source {v}")
        yield p
        for e in reversed(g.edges_out(p.range)):
            stack.append(Path((e.id,) + p.edges, e.rng, p.source))


@dataclass(frozen=True)
class AtomicInvariantMeasure:
    """``scale`` times the counting measure on ``E* v`` or on ``{b alpha^inf : b in E*_alpha}``."""

    kind: Kind
    scale: Fraction
    pushforward: VertexMeasure
    graph: Graph = field(compare=False, repr=False)

    def atoms(self) -> list[BoundaryPath]:
        g = self.graph
        if isinstance(self.kind, Boundary):
            return [BoundaryPath(p, None) for p in paths_with_source(g, self.kind.vertex)]
        rep = self.kind.loop.representative
        return [BoundaryPath.eventually_cyclic(g, p, rep)
                for p in paths_with_source(g, rep.range, rep.edges)]

    def to_atomic(self) -> AtomicMeasure:
        return AtomicMeasure.from_pairs((x, self.scale) for x in self.atoms())

    def total_mass(self) -> Fraction:
        return self.pushforward.total()

    @property
    def per_group(self) -> int:
        return 0 if isinstance(self.kind, Boundary) else len(self.kind.loop)

    def with_scale(self, scale) -> AtomicInvariantMeasure:
        scale = Fraction(scale)
        if scale <= 0:
            raise ValidationError("scale must be positive")
        push = self.pushforward.scaled(scale / self.scale)
        return AtomicInvariantMeasure(self.kind, scale, push, self.graph)


def boundary_measure(g: Graph, v: str) -> AtomicInvariantMeasure:
    if v not in singular_vertices(g):
        raise ValidationError(f"{v!r} is not singular")
    counts = count_paths_into_vertex(g, v)
    if not all(is_finite(c) for c in counts.values()):
        raise ValidationError(f"|E* {v}| is infinite")
    return AtomicInvariantMeasure(Boundary(v), Fraction(1), VertexMeasure(counts), g)


def cyclic_harmonic_measure(g: Graph, alpha: LoopClass) -> AtomicInvariantMeasure:
    if alpha not in summable_loop_classes(g):
        raise ValidationError(f"loop {alpha} is not summable")
    counts = count_E_star_alpha(g, alpha)
    return AtomicInvariantMeasure(CyclicHarmonic(alpha), Fraction(1), VertexMeasure(counts), g)


def enumerate_extremal_boundary(g: Graph) -> list[AtomicInvariantMeasure]:
    out = []
    for v in sorted(singular_vertices(g)):
        counts = count_paths_into_vertex(g, v)
        if all(is_finite(c) for c in counts.values()):
            out.append(AtomicInvariantMeasure(Boundary(v), Fraction(1), VertexMeasure(counts), g))
    return out


def enumerate_extremal_cyclic_harmonic(g: Graph) -> list[AtomicInvariantMeasure]:
    return [AtomicInvariantMeasure(CyclicHarmonic(a), Fraction(1),
                                   VertexMeasure(count_E_star_alpha(g, a)), g)
            for a in summable_loop_classes(g)]


def cylinder_mass(g: Graph, mu: Mapping[str, Fraction], beta: Path) -> Fraction:
    """Mass of the cylinder ``Z(beta)`` under the invariant measure over ``mu``: ``mu(s(beta))``."""
    _require_invariant(g, mu)
    return Fraction(mu.get(beta.source, 0))


@dataclass(frozen=True)
class VertexCylinders:
    """Cylinder masses read off a vertex measure, for the brute-force oracle.

    Point masses ``{beta}`` come from the defect of the boundary part.
    """

    graph: Graph
    mu: VertexMeasure
    eta: VertexMeasure

    @classmethod
    def of(cls, g: Graph, mu: VertexMeasure) -> VertexCylinders:
        try:
            _, mu2 = riesz_decompose(g, mu)
            eta = defect(g, mu2)
        except (NotInvariant, NegativeDefect):
            eta = VertexMeasure({v: mu[v] for v in singular_vertices(g)})
        return cls(g, mu, eta)

    def cylinder(self, beta: Path) -> Fraction:
        return self.mu[beta.source]

    def point(self, beta: Path) -> Fraction:
        return self.eta[beta.source]


def polytope_constraints(g: Graph) -> tuple[list[list[int]], list[list[int]]]:
    """Rows of ``(I - A) mu``: equalities at regular vertices, ``>= 0`` at singular ones."""
    a = vertex_matrix(g).rows
    n = len(g.vertices)
    reg = regular_vertices(g)
    eq, ineq = [], []
    for i, v in enumerate(g.vertices):
        row = [int(i == j) - a[i][j] for j in range(n)]
        (eq if v in reg else ineq).append(row)
    return eq, ineq


def enumerate_polytope_vertices(g: Graph, max_vertices: int = DEFAULT_MAX_POLYTOPE_VERTICES
                                ) -> list[VertexMeasure]:
    """Extreme points of the vertex-invariant probability measures.

    The enumeration is exponential in the worst case, hence the vertex cap.
    """
    n = len(g.vertices)
    if n > max_vertices:
        raise SizeLimit(f"polytope enumeration is capped at {max_vertices} vertices (graph has {n})")
    eq, ineq = polytope_constraints(g)
    points = []
    for ray in extreme_rays(n, eq, ineq):
        s = sum(ray)
        points.append(VertexMeasure.from_vector(g, [Fraction(x, s) for x in ray]))
    return sorted(points, key=lambda m: m.vector(g))


def classify_extreme_point(g: Graph, mu: Mapping[str, Fraction],
                           candidates: list[AtomicInvariantMeasure] | None = None
                           ) -> Boundary | CyclicHarmonic | HarmonicOther:
    target = VertexMeasure(mu).normalized()
    if candidates is None:
        candidates = enumerate_extremal_boundary(g) + enumerate_extremal_cyclic_harmonic(g)
    for m in candidates:
        if m.pushforward.normalized() == target:
            return m.kind
    log.warning("extreme point %r matches no boundary or cyclic-harmonic measure", dict(target))
    return HarmonicOther()
