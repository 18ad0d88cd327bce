"""Named test graphs shipped with the package, plus a seeded random generator."""

from __future__ import annotations

import random
from importlib import resources

from .graph import Edge, Graph, parse_graph

CANONICAL = ("G1", "G2", "G3", "G4", "G5")


def names() -> list[str]:
    files = resources.files(__package__).joinpath("corpus")
    keys = [f.name[:-5] for f in files.iterdir() if f.name.endswith(".json")]
    return sorted(keys, key=lambda k: int(k[1:]))


def load(key: str) -> Graph:
    text = resources.files(__package__).joinpath("corpus").joinpath(f"{key}.json").read_text()
    return parse_graph(text)


def all_graphs() -> dict[str, Graph]:
    return {k: load(k) for k in names()}


def disjoint_union(*graphs: Graph, tags: list[str] | None = None) -> Graph:
    """Tag every id with ``_<tag>`` so the pieces cannot collide."""
    tags = tags or [str(i) for i in range(len(graphs))]
    verts: list[str] = []
    edges: list[Edge] = []
    for g, t in zip(graphs, tags):
        verts += [f"{v}_{t}" for v in g.vertices]
        edges += [Edge(f"{e.id}_{t}", f"{e.src}_{t}", f"{e.rng}_{t}") for e in g.edges]
    return Graph(tuple(verts), tuple(edges))


def random_graph(rng: random.Random, max_vertices: int = 8, max_edges: int = 16) -> Graph:
    """Random multigraph; edge counts are skewed low so that simple cycles and
    singular vertices are common."""
    n = rng.randint(1, max_vertices)
    cap = min(max_edges, 2 * n + 2)
    m = rng.choice([rng.randint(0, cap), rng.randint(0, n + 1)])
    verts = [f"v{i}" for i in range(n)]
    edges = [(f"e{j:02d}", rng.choice(verts), rng.choice(verts)) for j in range(m)]
    return Graph.build(verts, edges)
