"""Boundary paths, the backwards shift, and a brute-force invariance oracle.

The boundary path space of a finite graph is the disjoint union of the
finite paths whose source is singular and the infinite paths.  Only
eventually cyclic infinite paths ``p c c c ...`` are representable; they are
kept in a reduced form (primitive ``c``, and ``p`` never ends with the last
edge of ``c``) so that equal infinite words compare equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Protocol

from .config import max_paths
from .errors import NotALoop, ParseError, ShiftOfVertex, SizeLimit, ValidationError
from .graph import (Graph, LoopClass, Path, _smallest_period, check_loop_in, is_prefix, path_from_json,
                    path_to_json, singular_vertices)


@dataclass(frozen=True)
class BoundaryPath:
    prefix: Path
    cycle: Path | None = None

    @classmethod
    def finite(cls, g: Graph, p: Path) -> BoundaryPath:
        if p.source not in singular_vertices(g):
            raise ValidationError(f"finite boundary path {p} must have a singular source")
        return cls(p, None)

    @classmethod
    def eventually_cyclic(cls, g: Graph, prefix: Path, cycle: Path | LoopClass) -> BoundaryPath:
        if isinstance(cycle, LoopClass):
            cycle = cycle.representative
        if cycle.is_vertex or cycle.range != cycle.source:
            raise ValidationError(f"{cycle} is not a loop")
        if prefix.source != cycle.range:
            raise ValidationError(f"source of {prefix} is not the range of {cycle}")
        edges = cycle.edges[: _smallest_period(cycle.edges)]
        pre = prefix.edges
        while pre and pre[-1] == edges[-1]:
            edges = edges[-1:] + edges[:-1]
            pre = pre[:-1]
        loop = g.path(edges)
        head = g.path(pre) if pre else g.vertex_path(loop.range)
        return cls(head, loop)

    @property
    def is_finite(self) -> bool:
        return self.cycle is None

    @property
    def range(self) -> str:
        return self.prefix.range

    def __len__(self) -> int:
        if self.cycle is not None:
            raise TypeError("eventually cyclic path has infinite length")
        return len(self.prefix)

    def edge_at(self, i: int) -> str:
        if i < len(self.prefix.edges):
            return self.prefix.edges[i]
        if self.cycle is None:
            raise IndexError(i)
        c = self.cycle.edges
        return c[(i - len(self.prefix.edges)) % len(c)]

    def has_prefix(self, beta: Path) -> bool:
        """Membership of this point in the cylinder ``Z(beta)``."""
        if beta.is_vertex:
            return self.range == beta.range
        if self.cycle is None:
            return is_prefix(beta, self.prefix)
        return all(self.edge_at(i) == e for i, e in enumerate(beta.edges))

    def loop_class(self, g: Graph) -> LoopClass | None:
        return None if self.cycle is None else LoopClass.of(g, self.cycle)

    def __str__(self) -> str:
        if self.cycle is None:
            return str(self.prefix)
        head = " ".join(self.prefix.edges)
        tail = f"({' '.join(self.cycle.edges)})^inf"
        return f"{head} {tail}" if head else tail


def shift(g: Graph, x: BoundaryPath, k: int = 1) -> BoundaryPath:
    """Drop the first ``k`` edges (the backwards shift applied ``k`` times)."""
    for _ in range(k):
        x = _shift_once(g, x)
    return x


def _shift_once(g: Graph, x: BoundaryPath) -> BoundaryPath:
    p = x.prefix
    if x.cycle is None and p.is_vertex:
        raise ShiftOfVertex(f"cannot shift the vertex path {p}")
    if not p.is_vertex:
        first = g.edge(p.edges[0])
        return BoundaryPath(Path(p.edges[1:], first.src, p.source), x.cycle)
    c = x.cycle.edges
    v = g.edge(c[0]).src
    return BoundaryPath(Path((), v, v), Path(c[1:] + c[:1], v, v))


def per_group(x: BoundaryPath) -> int:
    """Generator ``d`` of ``Per(x) = dZ``; ``0`` encodes the trivial group."""
    return 0 if x.cycle is None else len(x.cycle)


def is_eventually_cyclic(g: Graph, p: Path, candidate: LoopClass) -> bool:
    """Whether ``p candidate^inf`` is a well-formed infinite path of ``g``."""
    try:
        check_loop_in(g, candidate)
    except NotALoop:
        return False
    return g.has_vertex(p.source) and p.source == candidate.representative.range


def iter_paths(g: Graph, length: int) -> Iterator[Path]:
    """All paths of exactly ``length`` edges, in lexicographic edge order."""
    if length == 0:
        for v in g.vertices:
            yield Path((), v, v)
        return

    def grow(p: Path, left: int) -> Iterator[Path]:
        if left == 0:
            yield p
            return
        for e in g.edges_into(p.source):
            yield from grow(Path(p.edges + (e.id,), p.range, e.src), left - 1)

    for e in g.edges:
        yield from grow(Path((e.id,), e.rng, e.src), length - 1)


def truncated_space(g: Graph, n: int, cap: int | None = None) -> list[Path]:
    """Paths of length ``< n`` with singular source together with all paths of length ``n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    cap = max_paths() if cap is None else cap
    sing = singular_vertices(g)
    out: list[Path] = []
    for k in range(n + 1):
        for p in iter_paths(g, k):
            if k == n or p.source in sing:
                out.append(p)
                if len(out) > cap:
                    raise SizeLimit(f"truncated space of depth {n} exceeds {cap} paths")
    return out


def project(g: Graph, p: Path, n: int) -> Path:
    """Depth ``n + 1`` to depth ``n``: cut a path back to its first ``n`` edges."""
    if len(p) <= n:
        return p
    if n == 0:
        return g.vertex_path(p.range)
    return Path(p.edges[:n], p.range, g.edge(p.edges[n - 1]).src)


class CylinderMeasure(Protocol):
    def cylinder(self, beta: Path) -> Fraction: ...


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite weighted list of boundary-path atoms."""

    atoms: tuple[tuple[BoundaryPath, Fraction], ...]

    @classmethod
    def from_pairs(cls, pairs) -> AtomicMeasure:
        merged: dict[BoundaryPath, Fraction] = {}
        for x, w in pairs:
            w = Fraction(w)
            if w < 0:
                raise ValidationError(f"negative atom weight {w}")
            merged[x] = merged.get(x, Fraction(0)) + w
        return cls(tuple((x, w) for x, w in merged.items() if w != 0))

    def cylinder(self, beta: Path) -> Fraction:
        return sum((w for x, w in self.atoms if x.has_prefix(beta)), Fraction(0))

    def mass(self, points) -> Fraction:
        pts = set(points)
        return sum((w for x, w in self.atoms if x in pts), Fraction(0))

    def total(self) -> Fraction:
        return sum((w for _, w in self.atoms), Fraction(0))

    def weight(self, x: BoundaryPath) -> Fraction:
        for y, w in self.atoms:
            if y == x:
                return w
        return Fraction(0)

    def per_groups(self) -> set[int]:
        return {per_group(x) for x, _ in self.atoms}

    def perturbed(self, x: BoundaryPath, extra: Fraction = Fraction(1)) -> AtomicMeasure:
        return AtomicMeasure.from_pairs(list(self.atoms) + [(x, extra)])


@dataclass(frozen=True)
class Violation:
    kind: str
    path: Path
    lhs: Fraction
    rhs: Fraction

    def to_dict(self) -> dict:
        return {"kind": self.kind, "path": path_to_json(self.path),
                "lhs": _frac(self.lhs), "rhs": _frac(self.rhs)}


@dataclass
class InvarianceReport:
    depth: int
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"depth": self.depth, "checked": self.checked, "ok": self.ok,
                "violations": [v.to_dict() for v in self.violations]}


def _frac(q: Fraction) -> str:
    return str(Fraction(q))


def check_invariance_bruteforce(g: Graph, nu, depth: int, cap: int | None = None) -> InvarianceReport:
    """Exhaustively test shift invariance on cylinder pieces up to ``depth``.

    ``shift`` is injective on every cylinder ``Z(beta)`` with ``|beta| >= 1``
    and maps it onto ``Z(shift(beta))``; in a finite graph the single-point
    pieces ``{beta}`` coincide with such cylinders (a singular vertex receives
    no edge), so the cylinder identities are the complete list.  The oracle
    also checks the partition ``Z(beta) = {beta} + sum_e Z(beta e)``, which
    catches inconsistent cylinder data coming from vertex measures.
    """
    if hasattr(nu, "to_atomic"):
        nu = nu.to_atomic()
    cap = max_paths() if cap is None else cap
    sing = singular_vertices(g)
    report = InvarianceReport(depth)
    seen = 0
    for k in range(depth + 1):
        for beta in iter_paths(g, k):
            seen += 1
            if seen > cap:
                raise SizeLimit(f"invariance check at depth {depth} exceeds {cap} paths")
            here = nu.cylinder(beta)
            if k >= 1:
                tail = Path(beta.edges[1:], g.edge(beta.edges[0]).src, beta.source)
                there = nu.cylinder(tail)
                report.checked += 1
                if here != there:
                    report.violations.append(Violation("shift", beta, here, there))
            if k < depth:
                point = _point_mass(nu, beta) if beta.source in sing else Fraction(0)
                parts = point + sum((nu.cylinder(Path(beta.edges + (e.id,), beta.range, e.src))
                                     for e in g.edges_into(beta.source)), Fraction(0))
                report.checked += 1
                if here != parts:
                    report.violations.append(Violation("additivity", beta, here, parts))
    return report


def _point_mass(nu, beta: Path) -> Fraction:
    if hasattr(nu, "point"):
        return nu.point(beta)
    return nu.mass([BoundaryPath(beta, None)])


def atom_to_json(x: BoundaryPath) -> dict:
    if x.cycle is None:
        return {"path": path_to_json(x.prefix)}
    return {"prefix": path_to_json(x.prefix), "cycle": list(x.cycle.edges)}


def atom_from_json(g: Graph, obj: dict) -> BoundaryPath:
    if "path" in obj:
        return BoundaryPath.finite(g, path_from_json(g, obj["path"]))
    if "cycle" in obj:
        prefix = path_from_json(g, obj.get("prefix", {"vertex": g.path(obj["cycle"]).range}))
        return BoundaryPath.eventually_cyclic(g, prefix, g.path(obj["cycle"]))
    raise ParseError("atom needs 'path' or 'cycle'")


def atomic_from_dict(g: Graph, doc: object) -> AtomicMeasure:
    if not isinstance(doc, dict) or not isinstance(doc.get("atoms"), list):
        raise ParseError("atomic measure document needs an 'atoms' list")
    pairs = []
    for a in doc["atoms"]:
        if not isinstance(a, dict):
            raise ParseError("each atom must be an object")
        try:
            w = Fraction(str(a.get("weight", "1")))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad weight {a.get('weight')!r}") from None
        pairs.append((atom_from_json(g, a), w))
    return AtomicMeasure.from_pairs(pairs)


def atomic_to_dict(nu: AtomicMeasure) -> dict:
    return {"atoms": [{**atom_to_json(x), "weight": _frac(w)} for x, w in nu.atoms]}


def parse_atomic(g: Graph, text: str) -> AtomicMeasure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return atomic_from_dict(g, doc)
