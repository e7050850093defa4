# src/coinvariants/divisor/divisor_class.py
"""
Divisor classes on the moduli space of stable n-pointed genus-g curves.

A class is stored as

    λ·λ + Σ ψ_i·ψ_i - b_irr·δ_irr - Σ b_{h:I}·δ_{h:I}

so the boundary coefficients are the b's themselves. Points are numbered
0..n-1 internally; the JSON document numbers them 1..n.

Boundary keys are canonical under (h, I) ~ (g - h, I^c): the smaller h wins,
and for h = g - h the side containing point 0. Valid keys need |I| >= 2 when
h = 0 and |I^c| >= 2 when h = g.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import pydantic

from coinvariants.errors import DomainError
from coinvariants.fusion.spec import format_fraction, parse_fraction

BoundaryKey = Tuple[int, FrozenSet[int]]


def canonical_key(g: int, n: int, h: int, points: Iterable[int]) -> Optional[BoundaryKey]:
    """Canonical representative of δ_{h:I}, or None when it is not a boundary divisor."""
    subset = frozenset(points)
    if not 0 <= h <= g or any(not 0 <= p < n for p in subset):
        raise DomainError(f"boundary index (h={h}, I={sorted(subset)}) outside g={g}, n={n}")
    rest = frozenset(range(n)) - subset
    if (h == 0 and len(subset) < 2) or (h == g and len(rest) < 2):
        return None
    if h > g - h or (h == g - h and 0 not in subset):
        return g - h, rest
    return h, subset


def boundary_keys(g: int, n: int) -> List[BoundaryKey]:
    """Every boundary divisor δ_{h:I} once, sorted by (h, |I|, I)."""
    keys = set()
    for h in range(g + 1):
        for k in range(n + 1):
            for subset in itertools.combinations(range(n), k):
                key = canonical_key(g, n, h, subset)
                if key is not None:
                    keys.add(key)
    return sorted(keys, key=_key_order)


def _key_order(key: BoundaryKey) -> Tuple[int, int, Tuple[int, ...]]:
    return key[0], len(key[1]), tuple(sorted(key[1]))


def is_stable(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


@dataclass(frozen=True)
class DivisorClass:
    g: int
    n: int
    lambda_coeff: Fraction
    psi: Tuple[Fraction, ...]
    b_irr: Optional[Fraction]
    boundary: Dict[BoundaryKey, Fraction] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        if len(self.psi) != self.n:
            raise ValueError(f"expected {self.n} psi coefficients, got {len(self.psi)}")
        for h, subset in self.boundary:
            if canonical_key(self.g, self.n, h, subset) != (h, subset):
                raise ValueError(f"boundary key (h={h}, I={sorted(subset)}) is not canonical")

    @classmethod
    def zero(cls, g: int, n: int) -> "DivisorClass":
        return cls(
            g=g, n=n,
            lambda_coeff=Fraction(0),
            psi=tuple(Fraction(0) for _ in range(n)),
            b_irr=Fraction(0) if g >= 1 else None,
            boundary={key: Fraction(0) for key in boundary_keys(g, n)},
        )

    def b(self, h: int, points: Iterable[int]) -> Fraction:
        """b_{h:I} read through the canonical key; 0 when δ_{h:I} is not a boundary divisor."""
        key = canonical_key(self.g, self.n, h, points)
        if key is None:
            return Fraction(0)
        return self.boundary.get(key, Fraction(0))

    def _check_compatible(self, other: "DivisorClass") -> None:
        if (self.g, self.n) != (other.g, other.n):
            raise DomainError(f"cannot combine classes on M_{self.g},{self.n} and M_{other.g},{other.n}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_compatible(other)
        keys = set(self.boundary) | set(other.boundary)
        return DivisorClass(
            g=self.g, n=self.n,
            lambda_coeff=self.lambda_coeff + other.lambda_coeff,
            psi=tuple(a + b for a, b in zip(self.psi, other.psi)),
            b_irr=None if self.b_irr is None else self.b_irr + (other.b_irr or 0),
            boundary={k: self.boundary.get(k, Fraction(0)) + other.boundary.get(k, Fraction(0)) for k in keys},
        )

    def scale(self, factor: int | Fraction) -> "DivisorClass":
        f = Fraction(factor)
        return DivisorClass(
            g=self.g, n=self.n,
            lambda_coeff=f * self.lambda_coeff,
            psi=tuple(f * p for p in self.psi),
            b_irr=None if self.b_irr is None else f * self.b_irr,
            boundary={k: f * v for k, v in self.boundary.items()},
        )

    __rmul__ = scale

    def coefficients_equal(self, other: "DivisorClass") -> bool:
        """Coefficientwise equality, absent boundary keys read as 0."""
        if (self.g, self.n) != (other.g, other.n):
            return False
        keys = set(self.boundary) | set(other.boundary)
        return (
            self.lambda_coeff == other.lambda_coeff
            and self.psi == other.psi
            and (self.b_irr or 0) == (other.b_irr or 0)
            and all(self.boundary.get(k, 0) == other.boundary.get(k, 0) for k in keys)
        )

    def to_document(self) -> "DivisorDocument":
        return DivisorDocument(
            g=self.g,
            n=self.n,
            lambda_=format_fraction(self.lambda_coeff),
            psi=[format_fraction(p) for p in self.psi],
            b_irr=None if self.b_irr is None else format_fraction(self.b_irr),
            boundary=[
                BoundaryEntry(h=h, I=[p + 1 for p in sorted(subset)], b=format_fraction(self.boundary[(h, subset)]))
                for h, subset in sorted(self.boundary, key=_key_order)
            ],
        )

    def to_json(self) -> str:
        return self.to_document().model_dump_json(by_alias=True, indent=2)


class BoundaryEntry(pydantic.BaseModel):
    h: int = pydantic.Field(ge=0)
    I: List[int] = pydantic.Field(description="Points on the genus-h side, numbered from 1")
    b: str


class DivisorDocument(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(populate_by_name=True)

    g: int = pydantic.Field(ge=0)
    n: int = pydantic.Field(ge=0)
    lambda_: str = pydantic.Field(alias="lambda")
    psi: List[str]
    b_irr: Optional[str]
    boundary: List[BoundaryEntry]

    def to_class(self) -> DivisorClass:
        boundary: Dict[BoundaryKey, Fraction] = {}
        for entry in self.boundary:
            key = canonical_key(self.g, self.n, entry.h, [p - 1 for p in entry.I])
            if key is None:
                raise DomainError(f"(h={entry.h}, I={entry.I}) is not a boundary divisor of M_{self.g},{self.n}")
            boundary[key] = parse_fraction(entry.b)
        return DivisorClass(
            g=self.g, n=self.n,
            lambda_coeff=parse_fraction(self.lambda_),
            psi=tuple(parse_fraction(p) for p in self.psi),
            b_irr=None if self.b_irr is None else parse_fraction(self.b_irr),
            boundary=boundary,
        )
