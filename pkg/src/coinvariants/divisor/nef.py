# src/coinvariants/divisor/nef.py
"""
F-curve checks and the pointed positivity report.

Each check returns an `FCurveCheck` (truthy when it holds) carrying the
intersection number it tested and, on failure, the offending F-curve.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Any, Dict, FrozenSet, List, Literal, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_partitions

from coinvariants.divisor.divisor_class import DivisorClass
from coinvariants.errors import DomainError
from coinvariants.fusion.spec import format_fraction
from coinvariants.registry.pointed import PointedData

logger = logging.getLogger(__name__)

Status = Literal["equivalent-holds", "equivalent-fails", "sufficient-holds", "unknown"]


@dataclass(frozen=True)
class FCurveCheck:
    holds: bool
    degree: Optional[Fraction] = None
    witness: Optional[Any] = None

    def __bool__(self) -> bool:
        return self.holds


def degree_on_M04(d: DivisorClass) -> Fraction:
    """Σψ_i - (b_{0,{1,2}} + b_{0,{1,3}} + b_{0,{1,4}}) on M_{0,4}."""
    if (d.g, d.n) != (0, 4):
        raise DomainError(f"degree_on_M04 needs g = 0 and n = 4, got g={d.g}, n={d.n}")
    return sum(d.psi, Fraction(0)) - (d.b(0, {0, 1}) + d.b(0, {0, 2}) + d.b(0, {0, 3}))


def f_check_type1(d: DivisorClass) -> FCurveCheck:
    """λ - 12·b_irr + b_{1:∅} >= 0; b_{1:∅} is 0 when δ_{1:∅} is not a boundary divisor."""
    if d.g == 0:
        raise DomainError("type 1 F-curves need g >= 1")
    value = d.lambda_coeff - 12 * (d.b_irr or 0) + d.b(1, ())
    return FCurveCheck(value >= 0, value, None if value >= 0 else "type 1")


def f_check_type2(d: DivisorClass) -> FCurveCheck:
    """b_irr >= 0 (meaningful for g >= 3, evaluated for any g >= 1)."""
    if d.g == 0:
        raise DomainError("type 2 F-curves need g >= 1")
    value = d.b_irr or Fraction(0)
    return FCurveCheck(value >= 0, value, None if value >= 0 else "type 2")


def _genus0_b(d: DivisorClass, part: FrozenSet[int]) -> Fraction:
    """b_{0,S}, with b_{0,{i}} = ψ_i and b_{0,S} = b_{0,S^c}."""
    if len(part) == 1:
        return d.psi[next(iter(part))]
    if len(part) == d.n - 1:
        (i,) = set(range(d.n)) - part
        return d.psi[i]
    return d.b(0, part)


def f_check_genus0(d: DivisorClass) -> FCurveCheck:
    """
    For every partition I ⊔ J ⊔ K ⊔ L of the points into four non-empty parts:
    b_I + b_J + b_K + b_L >= b_{I∪J} + b_{I∪K} + b_{I∪L}.

    The reported degree is the minimum over all partitions; the witness is
    the first partition reaching a negative value (points numbered from 1).
    """
    if d.g != 0:
        raise DomainError(f"f_check_genus0 needs g = 0, got g={d.g}")
    worst: Optional[Fraction] = None
    witness = None
    for parts in multiset_partitions(list(range(d.n)), 4):
        a, b, c, e = (frozenset(p) for p in parts)
        value = (sum((_genus0_b(d, p) for p in (a, b, c, e)), Fraction(0))
                 - _genus0_b(d, a | b) - _genus0_b(d, a | c) - _genus0_b(d, a | e))
        if worst is None or value < worst:
            worst = value
        if value < 0 and witness is None:
            witness = [sorted(p + 1 for p in part) for part in parts]
    return FCurveCheck(witness is None, worst, witness)


# ---------------------------------------------------------------------------
# pointed report
# ---------------------------------------------------------------------------

@dataclass
class NefReport:
    subject: str
    central_charge: Fraction
    a_average: Fraction
    a_max: Fraction
    types: Dict[int, Status] = field(default_factory=dict)
    d_g1_nef: bool = False
    holomorphic_c: Optional[Fraction] = None
    padding_exponent: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "central_charge": format_fraction(self.central_charge),
            "a_average": format_fraction(self.a_average),
            "a_max": format_fraction(self.a_max),
            "types": {str(t): s for t, s in sorted(self.types.items())},
            "d_g1_nef": self.d_g1_nef,
            "holomorphic_c": None if self.holomorphic_c is None else format_fraction(self.holomorphic_c),
            "padding_exponent": self.padding_exponent,
        }


def _equivalence(ok: bool) -> Status:
    return "equivalent-holds" if ok else "equivalent-fails"


def _sufficient(ok: bool) -> Status:
    return "sufficient-holds" if ok else "unknown"


def padding_exponent(data: PointedData, holomorphic_c: Fraction | int) -> int:
    """Smallest r >= 0 with c_V + r·c_H >= 24·a_average."""
    c_h = Fraction(holomorphic_c)
    if c_h <= 0:
        raise DomainError(f"holomorphic central charge must be positive, got {c_h}")
    return max(0, ceil((24 * data.a_average - data.central_charge) / c_h))


def pointed_nef_report(data: PointedData, holomorphic_c: Fraction | int | None = None) -> NefReport:
    """
    Types 1 and 2 are equivalences (c >= 24·a_average, a_average >= 0);
    types 3 to 5 are sufficient conditions (non-negative weights,
    2·a_average >= a_max, subadditive weights); type 6 follows the
    strongly-generated-in-degree-one flag.
    """
    m = data.order
    w = data.weights
    avg = data.a_average
    subadditive = all(w[a] + w[b] >= w[data.mul(a, b)] for a in range(m) for b in range(m))
    flag = data.strongly_generated_degree_one
    report = NefReport(
        subject=data.display_name,
        central_charge=data.central_charge,
        a_average=avg,
        a_max=data.a_max,
        types={
            1: _equivalence(data.central_charge >= 24 * avg),
            2: _equivalence(avg >= 0),
            3: _sufficient(all(x >= 0 for x in w)),
            4: _sufficient(2 * avg >= data.a_max),
            5: _sufficient(subadditive),
            6: "sufficient-holds" if flag else "unknown",
        },
        d_g1_nef=data.central_charge >= 24 * avg >= 0,
    )
    if holomorphic_c is not None:
        report.holomorphic_c = Fraction(holomorphic_c)
        report.padding_exponent = padding_exponent(data, holomorphic_c)
    logger.info("nef report for %s: %s", data.display_name, report.types)
    return report


def nef_checks(d: DivisorClass) -> List[Tuple[str, FCurveCheck]]:
    """Every check that applies to the class's genus."""
    if d.g == 0:
        return [("genus0", f_check_genus0(d))] if d.n >= 4 else []
    return [("type1", f_check_type1(d)), ("type2", f_check_type2(d))]


def all_hold(checks: Sequence[Tuple[str, FCurveCheck]]) -> bool:
    return all(bool(c) for _, c in checks)
