import random

import pytest
from hypothesis import strategies as st

from gauge_trace import corpus


@pytest.fixture(scope="session")
def graphs():
    return corpus.all_graphs()


@pytest.fixture
def G1(graphs):
    return graphs["G1"]


@pytest.fixture
def G2(graphs):
    return graphs["G2"]


@pytest.fixture
def G3(graphs):
    return graphs["G3"]


@pytest.fixture
def G4(graphs):
    return graphs["G4"]


@pytest.fixture
def G5(graphs):
    return graphs["G5"]


random_graphs = st.integers(min_value=0, max_value=2**32 - 1).map(
    lambda seed: corpus.random_graph(random.Random(seed)))

small_random_graphs = st.integers(min_value=0, max_value=2**32 - 1).map(
    lambda seed: corpus.random_graph(random.Random(seed), max_vertices=5, max_edges=8))


def paths_by_source(g, max_len=4):
    from gauge_trace.pathspace import iter_paths
    out = {}
    for n in range(max_len + 1):
        for p in iter_paths(g, n):
            out.setdefault(p.source, []).append(p)
    return out


def random_functional(g, rng, by_source=None, max_terms=3, max_len=4):
    """A short random list of cylinder terms with Gaussian-integer coefficients."""
    from gauge_trace.gaussian import Gaussian
    from gauge_trace.traces import CylinderTerm
    by_source = by_source or paths_by_source(g, max_len)
    sources = sorted(by_source)
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        ps = by_source[rng.choice(sources)]
        coeff = Gaussian(rng.randint(-3, 3), rng.randint(-3, 3))
        terms.append(CylinderTerm(rng.choice(ps), rng.choice(ps), coeff))
    return terms
