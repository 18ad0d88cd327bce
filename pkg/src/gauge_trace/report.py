"""The ``analyze`` report: every structural and measure-theoretic result for one graph."""

from __future__ import annotations

from .config import DEFAULT_MAX_POLYTOPE_VERTICES
from .errors import InternalInconsistency
from .graph import Graph, LoopClass, regular_vertices, singular_vertices
from .measures import (Boundary, HarmonicOther, classify_extreme_point,
                       enumerate_extremal_boundary, enumerate_extremal_cyclic_harmonic,
                       enumerate_polytope_vertices)
from .structure import (Count, count_E_star_alpha, enumerate_isolated_loop_classes,
                        gauge_invariance_verdict, is_finite, is_free, is_free_direct, total)


def count_to_json(c: Count) -> int | str:
    return c if is_finite(c) else "inf"


def loop_to_json(a: LoopClass) -> list[str]:
    return list(a.representative.edges)


def analyze(g: Graph, max_polytope_vertices: int = DEFAULT_MAX_POLYTOPE_VERTICES) -> dict:
    free = is_free(g)
    free_direct = is_free_direct(g)
    if free != free_direct:
        raise InternalInconsistency("the two freeness tests disagree")
    verdict = gauge_invariance_verdict(g)

    isolated = []
    for a in enumerate_isolated_loop_classes(g):
        counts = count_E_star_alpha(g, a)
        summable = all(is_finite(c) for c in counts.values())
        isolated.append({
            "loop": loop_to_json(a),
            "base": a.base,
            "primitive": a.primitive,
            "summable": summable,
            "counts": {w: count_to_json(c) for w, c in counts.items()},
            "total": count_to_json(total(counts)),
        })

    boundary = enumerate_extremal_boundary(g)
    cyclic = enumerate_extremal_cyclic_harmonic(g)
    points = enumerate_polytope_vertices(g, max_polytope_vertices)
    kinds = [classify_extreme_point(g, p, boundary + cyclic) for p in points]

    return {
        "graph": {
            "name": g.name,
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "regular": sorted(regular_vertices(g)),
            "singular": sorted(singular_vertices(g)),
        },
        "loops": {
            "isolated": isolated,
            "summable": [loop_to_json(a) for a in verdict.witnesses],
        },
        "freeness": {"free": free, "free_direct": free_direct},
        "verdict": {
            "states_gauge_invariant": verdict.states_gauge_invariant,
            "weights_gauge_invariant": verdict.weights_gauge_invariant,
            "witnesses": [loop_to_json(a) for a in verdict.witnesses],
        },
        "extremal": {
            "boundary": [{"vertex": m.kind.vertex, "pushforward": m.pushforward.to_dict(),
                          "total_mass": str(m.total_mass())} for m in boundary],
            "cyclic_harmonic": [{"loop": loop_to_json(m.kind.loop),
                                 "pushforward": m.pushforward.to_dict(),
                                 "total_mass": str(m.total_mass())} for m in cyclic],
        },
        "polytope": [{"point": p.to_dict(), "classification": k.to_dict()}
                     for p, k in zip(points, kinds)],
        "diagnostics": _diagnostics(boundary, kinds),
    }


def _diagnostics(boundary, kinds) -> dict:
    """Flag the case where the only extreme point is a single boundary class.

    The algebra is then the compact operators on ``l^2(E* v)`` provided it is
    simple; simplicity is not decided here, so this is only a hint.
    """
    out = {"harmonic_other": sum(isinstance(k, HarmonicOther) for k in kinds)}
    if boundary and len(kinds) == 1 and isinstance(kinds[0], Boundary):
        v = kinds[0].vertex
        size = next(m.total_mass() for m in boundary if m.kind.vertex == v)
        out["compact_operators"] = {"flag": True, "vertex": v, "size": str(size),
                                    "note": f"~ K(l^2(E* {v})) if the algebra is simple"}
    else:
        out["compact_operators"] = {"flag": False}
    return out


def render_text(report: dict) -> str:
    g = report["graph"]
    lines = [
        f"graph: {g['name'] or '-'} |V|={g['vertices']} |E|={g['edges']}",
        f"regular: {' '.join(g['regular']) or '-'}",
        f"singular: {' '.join(g['singular']) or '-'}",
        f"free: {str(report['freeness']['free']).lower()}",
    ]
    for item in report["loops"]["isolated"]:
        tag = "summable" if item["summable"] else "isolated"
        counts = " ".join(f"{w}:{c}" for w, c in item["counts"].items())
        lines.append(f"loop {' '.join(item['loop'])}: {tag} |E*_a| by range: {counts}")
    v = report["verdict"]
    lines.append(f"states gauge-invariant: {str(v['states_gauge_invariant']).lower()}")
    lines.append(f"weights gauge-invariant: {str(v['weights_gauge_invariant']).lower()}")
    for m in report["extremal"]["boundary"]:
        lines.append(f"boundary measure at {m['vertex']}: {_fmt_measure(m['pushforward'])}")
    for m in report["extremal"]["cyclic_harmonic"]:
        lines.append(f"cyclic-harmonic measure on {' '.join(m['loop'])}: "
                     f"{_fmt_measure(m['pushforward'])}")
    if not report["polytope"]:
        lines.append("polytope: empty")
    for p in report["polytope"]:
        lines.append(f"extreme point {_fmt_measure(p['point'])} -> {_fmt_kind(p['classification'])}")
    diag = report["diagnostics"]["compact_operators"]
    if diag["flag"]:
        lines.append(f"diagnostic: {diag['note']} (|E* {diag['vertex']}| = {diag['size']})")
    return "\n".join(lines) + "\n"


def _fmt_measure(m: dict) -> str:
    return "(" + ", ".join(f"{k}:{q}" for k, q in m.items()) + ")"


def _fmt_kind(k: dict) -> str:
    if k["kind"] == "Boundary":
        return f"Boundary({k['vertex']})"
    if k["kind"] == "CyclicHarmonic":
        return f"CyclicHarmonic({' '.join(k['loop'])})"
    return "HarmonicOther"

