"""Cylinder-pair calculus, tracial weights built from an atomic invariant measure
and a character of the period group, and the gauge action.

A term ``(beta, gamma, c)`` stands for ``c`` times the indicator of the
groupoid cylinder ``{(beta y, |beta| - |gamma|, gamma y)}``.  Its degree is
``|beta| - |gamma|``; the gauge action multiplies it by ``z**degree``.

Scalars are exact Gaussian rationals whenever every input is; a floating
``complex`` anywhere switches the computation to floating point.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import InternalInconsistency, MalformedFunctional, ParseError, ValidationError
from .gaussian import I, ONE, ZERO, Gaussian, Scalar, as_scalar, format_scalar, parse_scalar, power
from .graph import Graph, Path, compose, is_prefix, path_from_json, path_to_json, strip_prefix
from .measures import AtomicInvariantMeasure, enumerate_extremal_boundary, enumerate_extremal_cyclic_harmonic
from .pathspace import AtomicMeasure, BoundaryPath, iter_paths, shift

FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class CylinderTerm:
    beta: Path
    gamma: Path
    coeff: Scalar = ONE

    def __post_init__(self) -> None:
        if self.beta.source != self.gamma.source:
            raise ValidationError(f"term sources differ: s({self.beta}) != s({self.gamma})")
        object.__setattr__(self, "coeff", as_scalar(self.coeff))

    @property
    def degree(self) -> int:
        return len(self.beta) - len(self.gamma)

    def star(self) -> CylinderTerm:
        c = self.coeff.conjugate()
        return CylinderTerm(self.gamma, self.beta, c)

    def scaled(self, c: Scalar) -> CylinderTerm:
        return CylinderTerm(self.beta, self.gamma, self.coeff * c)


def convolve(t1: CylinderTerm, t2: CylinderTerm) -> list[CylinderTerm]:
    """Product of two terms: empty when the inner pair is incomparable."""
    c = t1.coeff * t2.coeff
    if is_prefix(t1.gamma, t2.beta):
        delta = strip_prefix(t1.gamma, t2.beta)
        return [CylinderTerm(compose(t1.beta, delta), t2.gamma, c)]
    if is_prefix(t2.beta, t1.gamma):
        eps = strip_prefix(t2.beta, t1.gamma)
        return [CylinderTerm(t1.beta, compose(t2.gamma, eps), c)]
    return []


def multiply(f: Sequence[CylinderTerm], g: Sequence[CylinderTerm]) -> list[CylinderTerm]:
    """Bilinear expansion of ``f * g``."""
    return [t for a in f for b in g for t in convolve(a, b)]


def star(f: Sequence[CylinderTerm]) -> list[CylinderTerm]:
    return [t.star() for t in f]


def gauge_rotate(f: Sequence[CylinderTerm], z: Scalar) -> list[CylinderTerm]:
    return [t.scaled(power(z, t.degree)) for t in f]


@dataclass(frozen=True)
class Character:
    """``phi(u_{d m}) = zeta**m`` on ``H = d Z``; ``d = 0`` is the trivial group."""

    d: int
    zeta: Scalar = ONE

    def __post_init__(self) -> None:
        if self.d < 0:
            raise ValidationError("d must be non-negative")
        z = as_scalar(self.zeta)
        if self.d == 0:
            z = ONE
        if isinstance(z, Gaussian):
            if z.norm2() != 1:
                raise ValidationError(f"zeta={z} is not a unit")
        elif abs(abs(z) - 1) > FLOAT_TOL:
            raise ValidationError(f"zeta={z} is not a unit")
        object.__setattr__(self, "zeta", z)

    def value(self, k: int) -> Scalar:
        if self.d == 0:
            return ONE if k == 0 else ZERO
        if k % self.d:
            return ZERO
        return power(self.zeta, k // self.d)

    @property
    def components(self) -> list[tuple[Fraction, Character]]:
        return [(Fraction(1), self)]


@dataclass(frozen=True)
class Mixture:
    """Finite convex combination of characters sharing one ``d``."""

    parts: tuple[tuple[Fraction, Character], ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValidationError("empty mixture")
        ds = {c.d for _, c in self.parts}
        if len(ds) != 1:
            raise ValidationError("mixture components disagree on d")
        if any(w < 0 for w, _ in self.parts) or sum(w for w, _ in self.parts) != 1:
            raise ValidationError("mixture weights must be non-negative and sum to 1")

    @property
    def d(self) -> int:
        return self.parts[0][1].d

    def value(self, k: int) -> Scalar:
        out: Scalar = ZERO
        for w, c in self.parts:
            out = out + c.value(k) * w
        return out

    @property
    def components(self) -> list[tuple[Fraction, Character]]:
        return list(self.parts)


State = Union[Character, Mixture]


@dataclass(frozen=True)
class TraceFunctional:
    nu: AtomicMeasure
    phi: State

    @classmethod
    def of(cls, nu: AtomicMeasure | AtomicInvariantMeasure, phi: State) -> TraceFunctional:
        if hasattr(nu, "to_atomic"):
            nu = nu.to_atomic()
        return cls(nu, phi)

    def check(self) -> None:
        groups = self.nu.per_groups()
        if groups and groups != {self.phi.d}:
            raise MalformedFunctional(
                f"character has d={self.phi.d} but the measure lives on period groups {sorted(groups)}")


def _diagonal_hit(g: Graph, x: BoundaryPath, t: CylinderTerm) -> bool:
    if not (x.has_prefix(t.beta) and x.has_prefix(t.gamma)):
        return False
    if x.is_finite:
        return t.beta == t.gamma
    return shift(g, x, len(t.beta)) == shift(g, x, len(t.gamma))


def evaluate_trace(g: Graph, psi: TraceFunctional, f: Iterable[CylinderTerm]) -> Scalar:
    psi.check()
    out: Scalar = ZERO
    for t in f:
        k = t.degree
        phi_k = psi.phi.value(k)
        if phi_k == 0:
            continue
        for x, w in psi.nu.atoms:
            if _diagonal_hit(g, x, t):
                out = out + t.coeff * phi_k * w
    return out


def close(a: Scalar, b: Scalar, tol: float = FLOAT_TOL) -> bool:
    if isinstance(a, Gaussian) and isinstance(b, Gaussian):
        return a == b
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(a)), abs(complex(b)))


GAUGE_TEST_Z: tuple[Scalar, ...] = (I, -ONE, -I, cmath.exp(1j))


def basis_terms(g: Graph, bound: int) -> list[CylinderTerm]:
    by_source: dict[str, list[Path]] = {}
    for n in range(bound + 1):
        for p in iter_paths(g, n):
            by_source.setdefault(p.source, []).append(p)
    return [CylinderTerm(b, c) for ps in by_source.values() for b in ps for c in ps]


def _effective_bound(psi: TraceFunctional, bound: int) -> int:
    """Raise ``bound`` so that a nonzero-degree witness fits when one exists.

    An atom ``p c^inf`` sees the degree ``d m`` term ``(p c^m, p)``; a mixture
    of ``n`` distinct characters cannot vanish at all of ``m = 1..n``
    (Vandermonde), so ``|p| + d n`` edges suffice.
    """
    if psi.phi.d == 0 or not psi.nu.atoms:
        return bound
    longest = max(len(x.prefix) for x, _ in psi.nu.atoms)
    return max(bound, longest + psi.phi.d * len(psi.phi.components))


def gauge_witness(g: Graph, psi: TraceFunctional, test_degree_bound: int = 2
                  ) -> tuple[CylinderTerm, Scalar] | None:
    psi.check()
    bound = _effective_bound(psi, test_degree_bound)
    for t in basis_terms(g, bound):
        if t.degree == 0:
            continue
        base = evaluate_trace(g, psi, [t])
        for z in GAUGE_TEST_Z:
            if not close(base, evaluate_trace(g, psi, gauge_rotate([t], z))):
                return t, z
    return None


def is_gauge_invariant_structural(psi: TraceFunctional) -> bool:
    d = psi.phi.d
    if d == 0 or not psi.nu.atoms:
        return True
    n = len(psi.phi.components)
    return all(close(psi.phi.value(d * m), ZERO) for m in range(1, n + 1))


def is_gauge_invariant_functional(g: Graph, psi: TraceFunctional, test_degree_bound: int = 2) -> bool:
    brute = gauge_witness(g, psi, test_degree_bound) is None
    if brute != is_gauge_invariant_structural(psi):
        raise InternalInconsistency("gauge test disagrees with the character-based criterion")
    return brute


def enumerate_trace_functionals(g: Graph, zetas: Sequence[Scalar] = (ONE, -ONE, I)
                                ) -> list[TraceFunctional]:
    """One functional per extremal measure and test character."""
    out = [TraceFunctional.of(m, Character(0)) for m in enumerate_extremal_boundary(g)]
    for m in enumerate_extremal_cyclic_harmonic(g):
        out += [TraceFunctional.of(m, Character(m.per_group, z)) for z in zetas]
    return out


def parse_character(text: str) -> Character:
    """``"D:ZETA"``, e.g. ``"1:-1"`` or ``"2:i"``."""
    d, sep, z = text.partition(":")
    try:
        d_int = int(d)
    except ValueError:
        raise ParseError(f"bad character {text!r}; expected D:ZETA") from None
    return Character(d_int, parse_scalar(z) if sep else ONE)


def term_from_json(g: Graph, obj: object) -> CylinderTerm:
    if not isinstance(obj, dict) or "beta" not in obj or "gamma" not in obj:
        raise ParseError("each term needs 'beta' and 'gamma'")
    beta = path_from_json(g, obj["beta"])
    gamma = path_from_json(g, obj["gamma"])
    return CylinderTerm(beta, gamma, parse_scalar(obj.get("coeff", "1")))


def functional_from_dict(g: Graph, doc: object) -> list[CylinderTerm]:
    if not isinstance(doc, dict) or not isinstance(doc.get("terms"), list):
        raise ParseError("functional document needs a 'terms' list")
    return [term_from_json(g, t) for t in doc["terms"]]


def parse_functional(g: Graph, text: str) -> list[CylinderTerm]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return functional_from_dict(g, doc)


def functional_to_dict(f: Sequence[CylinderTerm]) -> dict:
    return {"terms": [{"beta": path_to_json(t.beta), "gamma": path_to_json(t.gamma),
                       "coeff": format_scalar(t.coeff)} for t in f]}
