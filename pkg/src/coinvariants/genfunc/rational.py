# src/coinvariants/genfunc/rational.py
"""
Exact univariate rational functions in z.

Coefficients are stored lowest degree first as tuples of ints. The canonical
form has gcd(num, den) = 1, integer coefficients with no common factor and a
positive lowest-degree coefficient in the denominator (den(0) > 0 whenever
the function has a series at 0); the zero function is 0/1.
Arithmetic goes through sympy polynomials over QQ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Dict, List, Sequence, Tuple

import sympy

from coinvariants.errors import DomainError

z = sympy.Symbol("z")

Coeffs = Tuple[int, ...]


def _to_fraction(c: sympy.Expr) -> Fraction:
    r = sympy.Rational(c)
    return Fraction(int(r.p), int(r.q))


def to_poly(coeffs: Sequence[int | Fraction]) -> sympy.Poly:
    """Poly in z from coefficients listed lowest degree first."""
    terms = [sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in coeffs]
    return sympy.Poly(list(reversed(terms)) or [0], z, domain="QQ")


def from_poly(poly: sympy.Poly) -> List[Fraction]:
    """Coefficients lowest degree first; the zero polynomial is []."""
    if poly.is_zero:
        return []
    return [_to_fraction(c) for c in reversed(poly.all_coeffs())]


def _canonical(num: sympy.Poly, den: sympy.Poly) -> Tuple[Coeffs, Coeffs]:
    if den.is_zero:
        raise DomainError("rational function with zero denominator")
    if num.is_zero:
        return (), (1,)
    g = sympy.gcd(num, den)
    num, den = num.exquo(g), den.exquo(g)
    n, d = from_poly(num), from_poly(den)
    scale = reduce(lcm, (c.denominator for c in n + d), 1)
    ni = [int(c * scale) for c in n]
    di = [int(c * scale) for c in d]
    content = reduce(gcd, ni + di, 0)
    if next(c for c in di if c) < 0:
        content = -content
    return tuple(c // content for c in ni), tuple(c // content for c in di)


@dataclass(frozen=True)
class RationalFunction:
    """num/den in canonical form; build through `make` or the arithmetic operators."""

    num: Coeffs
    den: Coeffs

    @classmethod
    def make(cls, num: Sequence[int | Fraction], den: Sequence[int | Fraction] = (1,)) -> "RationalFunction":
        return cls.from_polys(to_poly(num), to_poly(den))

    @classmethod
    def from_polys(cls, num: sympy.Poly, den: sympy.Poly) -> "RationalFunction":
        n, d = _canonical(num, den)
        return cls(n, d)

    @classmethod
    def constant(cls, c: int | Fraction) -> "RationalFunction":
        return cls.make([c])

    @classmethod
    def variable(cls) -> "RationalFunction":
        return cls.make([0, 1])

    @property
    def num_poly(self) -> sympy.Poly:
        return to_poly(self.num)

    @property
    def den_poly(self) -> sympy.Poly:
        return to_poly(self.den)

    def __add__(self, other: "RationalFunction | int") -> "RationalFunction":
        o = _coerce(other)
        return RationalFunction.from_polys(self.num_poly * o.den_poly + o.num_poly * self.den_poly,
                                           self.den_poly * o.den_poly)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(tuple(-c for c in self.num), self.den)

    def __sub__(self, other: "RationalFunction | int") -> "RationalFunction":
        return self + (-_coerce(other))

    def __rsub__(self, other: "RationalFunction | int") -> "RationalFunction":
        return _coerce(other) - self

    def __mul__(self, other: "RationalFunction | int") -> "RationalFunction":
        o = _coerce(other)
        return RationalFunction.from_polys(self.num_poly * o.num_poly, self.den_poly * o.den_poly)

    __rmul__ = __mul__

    def __truediv__(self, other: "RationalFunction | int") -> "RationalFunction":
        o = _coerce(other)
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction.from_polys(self.num_poly * o.den_poly, self.den_poly * o.num_poly)

    def __rtruediv__(self, other: "RationalFunction | int") -> "RationalFunction":
        return _coerce(other) / self

    def reciprocal(self) -> "RationalFunction":
        return 1 / self

    def to_dict(self) -> Dict[str, List[int]]:
        return {"num": list(self.num), "den": list(self.den)}

    @classmethod
    def from_dict(cls, doc: Dict[str, Sequence[int]]) -> "RationalFunction":
        return cls.make(doc["num"], doc["den"])

    def __str__(self) -> str:
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def _coerce(x: "RationalFunction | int | Fraction") -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction.constant(x)


def format_poly(coeffs: Sequence[int]) -> str:
    """Human form lowest degree first, e.g. ``1 - z - z^2``."""
    parts: List[str] = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts) if parts else "0"


def rf_equal(a: RationalFunction, b: RationalFunction) -> bool:
    """True iff a.num·b.den = b.num·a.den as polynomials."""
    return (a.num_poly * b.den_poly - b.num_poly * a.den_poly).is_zero


def series(rf: RationalFunction, count: int) -> List[Fraction]:
    """First ``count`` Maclaurin coefficients by power-series long division."""
    if not rf.den or rf.den[0] == 0:
        raise DomainError("series expansion at 0 needs den(0) != 0")
    d0 = Fraction(rf.den[0])
    out: List[Fraction] = []
    for k in range(count):
        acc = Fraction(rf.num[k]) if k < len(rf.num) else Fraction(0)
        for i in range(1, min(k, len(rf.den) - 1) + 1):
            acc -= rf.den[i] * out[k - i]
        out.append(acc / d0)
    return out


def series_coeff(rf: RationalFunction, n: int) -> Fraction:
    """Coefficient of z^n in the expansion at 0."""
    if n < 0:
        raise ValueError(f"coefficient index must be >= 0, got {n}")
    return series(rf, n + 1)[n]
