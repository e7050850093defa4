# src/coinvariants/registry/affine.py
"""
Affine sl₂ VOAs L(ℓ, 0).

Module W_p has highest weight pα/2 for p = 0..ℓ; all modules are self-dual.
Two equivalent closed forms of the fusion rule are kept side by side and
the constructor asserts they agree.
"""

from __future__ import annotations

import logging
from fractions import Fraction

from coinvariants.errors import DomainError
from coinvariants.fusion.spec import Rows, VoaSpec, tensor_from_rule

logger = logging.getLogger(__name__)


def fusion_by_band(level: int, p: int) -> Rows:
    """
    R_{W_p} as a band: entry (i, j) is 1 iff i + j ≡ p (mod 2),
    |i - j| <= p and p <= i + j <= 2ℓ - p.
    """
    size = level + 1
    return tuple(
        tuple(int((i + j - p) % 2 == 0 and abs(i - j) <= p and p <= i + j <= 2 * level - p) for j in range(size))
        for i in range(size)
    )


def fusion_by_half_sum(level: int, p: int) -> Rows:
    """
    R_{W_p} from N_{p,i}^{j} = 1 iff p + i + j = 2m for some m <= ℓ
    with p, i, j <= m.
    """
    size = level + 1

    def entry(i: int, j: int) -> int:
        total = p + i + j
        if total % 2:
            return 0
        m = total // 2
        return int(m <= level and max(p, i, j) <= m)

    return tuple(tuple(entry(i, j) for j in range(size)) for i in range(size))


def fusion_coefficient(level: int, a: int, b: int, c: int) -> int:
    """Even sum, sum <= 2ℓ and the triangle inequalities."""
    return int(
        (a + b + c) % 2 == 0
        and a + b + c <= 2 * level
        and a <= b + c and b <= a + c and c <= a + b
    )


def affine_sl2(level: int) -> VoaSpec:
    """L_{sl₂}(ℓ, 0): ℓ + 1 modules, weights p(p+2)/(4(ℓ+2)), c = 3ℓ/(ℓ+2)."""
    if level < 1:
        raise DomainError(f"affine_sl2 needs level >= 1, got {level}")
    size = level + 1
    three_point = tensor_from_rule(size, lambda a, b, c: fusion_coefficient(level, a, b, c))
    for p in range(size):
        rows = tuple(tuple(three_point[p][i][j] for j in range(size)) for i in range(size))
        band, half_sum = fusion_by_band(level, p), fusion_by_half_sum(level, p)
        if not rows == band == half_sum:
            raise AssertionError(f"sl2 level {level}: closed forms disagree for W{p}")
    logger.debug("built affine sl2 at level %d", level)
    return VoaSpec(
        labels=("V",) + tuple(f"W{p}" for p in range(1, size)),
        vacuum=0,
        dual=tuple(range(size)),
        three_point=three_point,
        weights=tuple(Fraction(p * (p + 2), 4 * (level + 2)) for p in range(size)),
        central_charge=Fraction(3 * level, level + 2),
        name=f"sl2:{level}",
    )
