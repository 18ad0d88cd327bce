"""Invariant measures, tracial weights and gauge invariance for finite directed graphs.

Paths follow the range/source convention: ``a1 a2 ... an`` is a path when
``src(a_i) == rng(a_{i+1})``, so a path grows by appending an edge whose
range is the current source.
"""

from .errors import (CompositionError, GaugeTraceError, InternalInconsistency, MalformedFunctional,
                     NegativeDefect, NotALoop, NotInvariant, ParseError, ShiftOfVertex, SizeLimit,
                     ValidationError)
from .graph import Edge, Graph, LoopClass, Path, compose, parse_graph, regular_vertices, singular_vertices
from .measures import (AtomicInvariantMeasure, Boundary, CyclicHarmonic, HarmonicOther, TransferMatrix,
                       VertexMeasure, apply_T, classify_extreme_point, cylinder_mass, defect,
                       enumerate_extremal_boundary, enumerate_extremal_cyclic_harmonic,
                       enumerate_polytope_vertices, is_vertex_invariant, riesz_decompose, vertex_matrix)
from .pathspace import (BoundaryPath, check_invariance_bruteforce, is_eventually_cyclic, per_group, shift,
                        truncated_space)
from .structure import (INFINITE, Verdict, count_E_star_alpha, count_paths_into_vertex,
                        enumerate_isolated_loop_classes, gauge_invariance_verdict, is_free, is_free_direct,
                        is_summable, scc)
from .traces import (Character, CylinderTerm, Mixture, TraceFunctional, convolve, evaluate_trace,
                     gauge_rotate, is_gauge_invariant_functional)

__version__ = "0.1.0"
