"""Finite directed multigraphs, paths and loop classes.

Orientation convention: an edge ``e`` has a source ``src`` and a range
``rng``.  A path is written ``e1 e2 ... en`` with ``src(e_i) == rng(e_{i+1})``,
so its range is ``rng(e1)`` and its source is ``src(en)``.  A path is
extended by *appending* an edge whose range equals the current source.
Read from the source end, a path is an ordinary ``src -> rng`` walk taken
in reverse order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CompositionError, NotALoop, ParseError, ValidationError


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    rng: str


@dataclass(frozen=True)
class Path:
    """A finite path; ``edges`` is empty for the vertex path at ``range == source``."""

    edges: tuple[str, ...]
    range: str
    source: str

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    @property
    def base(self) -> str:
        return self.range

    def __str__(self) -> str:
        return " ".join(self.edges) if self.edges else self.range


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            dup = sorted({v for v in verts if verts.count(v) > 1})
            raise ValidationError(f"duplicate vertex ids: {dup}")
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        ids = [e.id for e in edges]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise ValidationError(f"duplicate edge ids: {dup}")
        known = set(verts)
        for e in edges:
            for end in (e.src, e.rng):
                if end not in known:
                    raise ValidationError(f"edge {e.id!r} references undeclared vertex {end!r}")
        object.__setattr__(self, "vertices", tuple(sorted(verts)))
        object.__setattr__(self, "edges", tuple(sorted(edges, key=lambda e: e.id)))

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, str] | Edge],
              name: str | None = None) -> Graph:
        """``edges`` as ``(id, src, rng)`` triples."""
        return cls(tuple(vertices), tuple(edges), name)

    @cached_property
    def _edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _into(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.rng].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def _out(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_map[edge_id]
        except KeyError:
            raise ValidationError(f"unknown edge {edge_id!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self.index

    def edges_into(self, v: str) -> tuple[Edge, ...]:
        """Edges with ``rng == v``; these extend a path whose source is ``v``."""
        return self._into[v]

    def edges_out(self, v: str) -> tuple[Edge, ...]:
        return self._out[v]

    def vertex_path(self, v: str) -> Path:
        if v not in self.index:
            raise ValidationError(f"unknown vertex {v!r}")
        return Path((), v, v)

    def path(self, edge_ids: Sequence[str]) -> Path:
        edge_ids = tuple(edge_ids)
        if not edge_ids:
            raise ValidationError("empty edge list; use vertex_path for length-0 paths")
        es = [self.edge(i) for i in edge_ids]
        for a, b in zip(es, es[1:]):
            if a.src != b.rng:
                raise CompositionError(
                    f"{a.id} then {b.id}: src({a.id})={a.src} != rng({b.id})={b.rng}")
        return Path(edge_ids, es[0].rng, es[-1].src)

    def extend(self, p: Path, edge_id: str) -> Path:
        """Append one edge at the source end of ``p``."""
        e = self.edge(edge_id)
        if e.rng != p.source:
            raise CompositionError(f"cannot append {edge_id}: rng={e.rng} != source={p.source}")
        return Path(p.edges + (edge_id,), p.range, e.src)

    def loop(self, edge_ids: Sequence[str]) -> LoopClass:
        return LoopClass.of(self, self.path(edge_ids))


def compose(p: Path, q: Path) -> Path:
    """Concatenate ``p`` then ``q``; requires ``source(p) == range(q)``."""
    if p.source != q.range:
        raise CompositionError(f"source({p})={p.source} != range({q})={q.range}")
    return Path(p.edges + q.edges, p.range, q.source)


def is_prefix(p: Path, q: Path) -> bool:
    """True when ``q = p x`` for some path ``x``."""
    if p.is_vertex:
        return p.range == q.range
    return len(p) <= len(q) and q.edges[: len(p)] == p.edges


def strip_prefix(p: Path, q: Path) -> Path:
    """The path ``x`` with ``q = p x``; caller checks ``is_prefix(p, q)``."""
    rest = q.edges[len(p):]
    if not rest:
        return Path((), p.source, p.source)
    return Path(rest, p.source, q.source)


def _smallest_period(seq: tuple[str, ...]) -> int:
    n = len(seq)
    for d in range(1, n + 1):
        if n % d == 0 and seq == seq[d:] + seq[:d]:
            return d
    return n


@dataclass(frozen=True, eq=False)
class LoopClass:
    """A loop together with its rotation class.

    ``representative`` is one particular rotation; equality and hashing use
    ``canonical``, the rotation whose first edge has the least range vertex
    (ties broken by the edge-id sequence).
    """

    representative: Path
    primitive: bool
    canonical: tuple[str, ...]

    @classmethod
    def of(cls, g: Graph, p: Path) -> LoopClass:
        if p.is_vertex or p.range != p.source:
            raise NotALoop(f"{p} is not a loop")
        edges = p.edges
        rots = [edges[k:] + edges[:k] for k in range(len(edges))]
        canon = min(rots, key=lambda r: (g.edge(r[0]).rng, r))
        return cls(p, _smallest_period(edges) == len(edges), canon)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LoopClass):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)

    def __len__(self) -> int:
        return len(self.representative)

    @property
    def base(self) -> str:
        return self.representative.range

    def rotations(self, g: Graph) -> list[LoopClass]:
        edges = self.representative.edges
        return [LoopClass.of(g, g.path(edges[k:] + edges[:k])) for k in range(len(edges))]

    def canonical_form(self, g: Graph) -> LoopClass:
        return LoopClass.of(g, g.path(self.canonical))

    def __str__(self) -> str:
        return " ".join(self.representative.edges)


def check_loop_in(g: Graph, alpha: LoopClass) -> None:
    p = alpha.representative
    try:
        rebuilt = g.path(p.edges)
    except (ValidationError, CompositionError) as exc:
        raise NotALoop(f"{alpha} is not a loop of this graph: {exc}") from None
    if rebuilt.range != rebuilt.source:
        raise NotALoop(f"{alpha} is not a loop of this graph")


def regular_vertices(g: Graph) -> frozenset[str]:
    """Vertices receiving at least one edge (``0 < |r^-1(v)|``; the graph is finite)."""
    return frozenset(v for v in g.vertices if g.edges_into(v))


def singular_vertices(g: Graph) -> frozenset[str]:
    return frozenset(v for v in g.vertices if not g.edges_into(v))


_EDGE_KEYS = {"id", "src", "rng"}


def graph_from_dict(doc: object) -> Graph:
    if not isinstance(doc, dict):
        raise ParseError("graph document must be a JSON object")
    if "vertices" not in doc or "edges" not in doc:
        raise ParseError("graph document needs 'vertices' and 'edges'")
    verts = doc["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise ParseError("'vertices' must be a list of strings")
    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise ParseError("'edges' must be a list")
    edges = []
    for i, e in enumerate(raw_edges):
        if not isinstance(e, dict):
            raise ParseError(f"edge #{i} must be an object")
        if "from" in e or "to" in e:
            raise ParseError(f"edge #{i}: use 'src'/'rng', not 'from'/'to'")
        if set(e) != _EDGE_KEYS:
            raise ParseError(f"edge #{i} must have exactly the keys id, src, rng")
        if not all(isinstance(e[k], str) for k in _EDGE_KEYS):
            raise ParseError(f"edge #{i}: id, src and rng must be strings")
        edges.append(Edge(e["id"], e["src"], e["rng"]))
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("'name' must be a string")
    return Graph(tuple(verts), tuple(edges), name)


def parse_graph(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return graph_from_dict(doc)


def graph_to_dict(g: Graph) -> dict:
    doc: dict = {}
    if g.name is not None:
        doc["name"] = g.name
    doc["vertices"] = list(g.vertices)
    doc["edges"] = [{"id": e.id, "src": e.src, "rng": e.rng} for e in g.edges]
    return doc


def serialize_graph(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


def path_from_json(g: Graph, obj: object) -> Path:
    """Edge-id list, or ``{"vertex": v}`` for a length-0 path."""
    if isinstance(obj, dict):
        if set(obj) != {"vertex"} or not isinstance(obj["vertex"], str):
            raise ParseError("vertex path must be {\"vertex\": <id>}")
        return g.vertex_path(obj["vertex"])
    if isinstance(obj, list) and obj and all(isinstance(x, str) for x in obj):
        return g.path(obj)
    raise ParseError(f"cannot read a path from {obj!r}")


def path_to_json(p: Path) -> list[str] | dict[str, str]:
    return list(p.edges) if p.edges else {"vertex": p.range}
