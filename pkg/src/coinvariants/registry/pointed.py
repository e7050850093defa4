# src/coinvariants/registry/pointed.py
"""
Pointed VOAs: the fusion ring is the group ring of a finite abelian group G.

`PointedData` holds the group table plus the per-element conformal weights
and the central charge. The derived VoaSpec has S(a, b, c) = [a·b·c = e] and
dual(a) = a⁻¹.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Tuple

from coinvariants.errors import SpecValidationError
from coinvariants.fusion.engine import is_pointed
from coinvariants.fusion.spec import VoaSpec, tensor_from_rule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointedData:
    labels: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    weights: Tuple[Fraction, ...]
    central_charge: Fraction
    strongly_generated_degree_one: Optional[bool] = None
    name: str = ""

    def __post_init__(self) -> None:
        validate_group(self)

    @property
    def order(self) -> int:
        return len(self.labels)

    @cached_property
    def identity(self) -> int:
        return next(e for e in range(self.order) if all(self.table[e][a] == a for a in range(self.order)))

    @cached_property
    def inverse(self) -> Tuple[int, ...]:
        e = self.identity
        return tuple(next(b for b in range(self.order) if self.table[a][b] == e) for a in range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, elements: Sequence[int]) -> int:
        acc = self.identity
        for g in elements:
            acc = self.table[acc][g]
        return acc

    @property
    def a_average(self) -> Fraction:
        return sum(self.weights, Fraction(0)) / self.order

    @property
    def a_max(self) -> Fraction:
        return max(self.weights)

    @property
    def display_name(self) -> str:
        return self.name or f"pointed[{self.order}]"


def validate_group(data: PointedData) -> None:
    """Raise SpecValidationError unless the table is a finite abelian group with dual-invariant weights."""
    m = len(data.labels)
    if m < 1:
        raise SpecValidationError("group-shape", "a group needs at least one element")
    if len(data.table) != m or any(len(row) != m for row in data.table) or len(data.weights) != m:
        raise SpecValidationError("group-shape", f"table must be {m}x{m} with {m} weights")
    if any(not isinstance(x, int) or not 0 <= x < m for row in data.table for x in row):
        raise SpecValidationError("group-closure", "table entries must be element indices")
    if len(set(data.labels)) != m:
        raise SpecValidationError("labels-unique", "element labels must be distinct")
    t = data.table
    ids = [e for e in range(m) if all(t[e][a] == a and t[a][e] == a for a in range(m))]
    if not ids:
        raise SpecValidationError("group-identity", "table has no identity element")
    e = ids[0]
    for a, b in itertools.product(range(m), repeat=2):
        if t[a][b] != t[b][a]:
            raise SpecValidationError("group-abelian", "fusion of a pointed VOA is commutative", (a, b))
    for a, b, c in itertools.product(range(m), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            raise SpecValidationError("group-associative", "table is not associative", (a, b, c))
    for a in range(m):
        inv = [b for b in range(m) if t[a][b] == e]
        if len(inv) != 1:
            raise SpecValidationError("group-inverse", "every element needs a unique inverse", a)
        if data.weights[a] != data.weights[inv[0]]:
            raise SpecValidationError("dual-weights", "g and g⁻¹ must have the same weight", (a, inv[0]))


def pointed(data: PointedData) -> VoaSpec:
    """VoaSpec of a pointed VOA with S(a, b, c) = 1 iff a·b·c = e."""
    e, t = data.identity, data.table
    return VoaSpec(
        labels=data.labels,
        vacuum=e,
        dual=data.inverse,
        three_point=tensor_from_rule(data.order, lambda a, b, c: t[t[a][b]][c] == e),
        weights=data.weights,
        central_charge=data.central_charge,
        strongly_generated_degree_one=data.strongly_generated_degree_one,
        name=data.name or f"pointed[{data.order}]",
    )


def pointed_data_from_spec(voa: VoaSpec) -> Optional[PointedData]:
    """Recover the group data of a pointed spec, or None when some fusion matrix is not a permutation."""
    table = is_pointed(voa)
    if table is None:
        return None
    return PointedData(
        labels=voa.labels,
        table=tuple(tuple(row) for row in table),
        weights=voa.weights,
        central_charge=voa.central_charge,
        strongly_generated_degree_one=voa.strongly_generated_degree_one,
        name=voa.display_name,
    )


# ---------------------------------------------------------------------------
# group helpers
# ---------------------------------------------------------------------------

def _cyclic_labels(m: int) -> Tuple[str, ...]:
    return tuple("e" if k == 0 else ("x" if k == 1 else f"x{k}") for k in range(m))


def cyclic_group(m: int, weights: Sequence[Fraction | int | str], central_charge: Fraction | int | str,
                 *, strongly_generated_degree_one: Optional[bool] = None, name: str = "") -> PointedData:
    """Z/m with elements e, x, x2, ..., x{m-1}."""
    if m < 1:
        raise ValueError(f"cyclic group order must be >= 1, got {m}")
    return PointedData(
        labels=_cyclic_labels(m),
        table=tuple(tuple((a + b) % m for b in range(m)) for a in range(m)),
        weights=tuple(Fraction(w) for w in weights),
        central_charge=Fraction(central_charge),
        strongly_generated_degree_one=strongly_generated_degree_one,
        name=name or f"Z/{m}",
    )


def product_group(d1: PointedData, d2: PointedData) -> PointedData:
    """G1 × G2 in lexicographic order; weights and central charges add."""
    m2 = d2.order

    def flag() -> Optional[bool]:
        f1, f2 = d1.strongly_generated_degree_one, d2.strongly_generated_degree_one
        if f1 is False or f2 is False:
            return False
        return True if f1 and f2 else None

    pairs = list(itertools.product(range(d1.order), range(m2)))
    return PointedData(
        labels=tuple(f"{d1.labels[a]}*{d2.labels[x]}" for a, x in pairs),
        table=tuple(
            tuple(d1.table[a][b] * m2 + d2.table[x][y] for b, y in pairs)
            for a, x in pairs
        ),
        weights=tuple(d1.weights[a] + d2.weights[x] for a, x in pairs),
        central_charge=d1.central_charge + d2.central_charge,
        strongly_generated_degree_one=flag(),
        name=f"{d1.display_name}x{d2.display_name}",
    )


def holomorphic(central_charge: Fraction | int | str) -> VoaSpec:
    """Holomorphic VOA: a single module (the trivial group)."""
    c = Fraction(central_charge)
    return pointed(cyclic_group(1, [0], c, strongly_generated_degree_one=None, name=f"holomorphic:{c}"))
