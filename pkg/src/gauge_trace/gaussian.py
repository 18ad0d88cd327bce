"""Exact Gaussian rationals ``a + b i`` with a floating-complex escape hatch.

Mixed arithmetic with a Python ``complex`` degrades to ``complex``; equality
between the two kinds compares numerically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Union

from .errors import ParseError


@dataclass(frozen=True)
class Gaussian:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __add__(self, other):
        if isinstance(other, Gaussian):
            return Gaussian(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> Gaussian:
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Gaussian):
            return Gaussian(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> Gaussian:
        return Gaussian(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> Gaussian:
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("inverse of 0")
        return Gaussian(self.re / n, -self.im / n)

    def __pow__(self, k: int) -> Gaussian:
        base = self if k >= 0 else self.inverse()
        out = Gaussian(1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == complex(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        im = "i" if abs(self.im) == 1 else f"{abs(self.im)}i"
        if self.re == 0:
            return im if self.im > 0 else f"-{im}"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{im}"


Scalar = Union[Gaussian, complex]

I = Gaussian(0, 1)
ONE = Gaussian(1)
ZERO = Gaussian(0)

_EXACT_UNITS = {ONE, -ONE, I, -I}

_GAUSS_RE = re.compile(
    r"^\s*(?:(?P<re>[+-]?\d+(?:/\d+)?)(?=\s*$|\s*[+-]))?"
    r"\s*(?:(?P<im>[+-]?\s*(?:\d+(?:/\d+)?)?)\s*i)?\s*$"
)


def parse_scalar(text: object) -> Scalar:
    """Read ``"1"``, ``"-1/2"``, ``"i"``, ``"1/2-3i"`` exactly, else a Python complex literal."""
    if isinstance(text, bool):
        raise ParseError(f"bad scalar {text!r}")
    if isinstance(text, int):
        return Gaussian(text)
    if isinstance(text, float):
        return complex(text)
    if not isinstance(text, str) or not text.strip():
        raise ParseError(f"bad scalar {text!r}")
    m = _GAUSS_RE.match(text)
    if m and (m.group("re") is not None or m.group("im") is not None):
        re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
        im_raw = m.group("im")
        if im_raw is None:
            im_part = Fraction(0)
        else:
            im_raw = im_raw.replace(" ", "")
            im_part = Fraction(im_raw + "1") if im_raw in ("", "+", "-") else Fraction(im_raw)
        return Gaussian(re_part, im_part)
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ParseError(f"bad scalar {text!r}") from None


def is_exact_unit(z: Scalar) -> bool:
    return isinstance(z, Gaussian) and z in _EXACT_UNITS


def power(z: Scalar, k: int) -> Scalar:
    if isinstance(z, Gaussian):
        return z ** k
    return complex(z) ** k


def format_scalar(z: Scalar) -> str:
    if isinstance(z, Gaussian):
        return str(z)
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}i"


def as_scalar(x) -> Scalar:
    if isinstance(x, Gaussian):
        return x
    if isinstance(x, (int, Fraction)):
        return Gaussian(x)
    if isinstance(x, Number):
        return complex(x)
    return parse_scalar(x)
