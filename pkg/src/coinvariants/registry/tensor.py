# src/coinvariants/registry/tensor.py
"""Tensor products V1 ⊗ V2; modules W_a ⊗ M_x in lexicographic order (index a·l2 + x)."""

from __future__ import annotations

import itertools
import logging
from typing import Optional

from coinvariants.fusion.spec import VoaSpec, tensor_from_rule

logger = logging.getLogger(__name__)


def _combined_flag(f1: Optional[bool], f2: Optional[bool]) -> Optional[bool]:
    if f1 is False or f2 is False:
        return False
    if f1 and f2:
        return True
    return None


def tensor(v1: VoaSpec, v2: VoaSpec) -> VoaSpec:
    """S((a,x),(b,y),(c,z)) = S1(a,b,c)·S2(x,y,z); weights and central charges add."""
    l2 = v2.size
    pairs = list(itertools.product(range(v1.size), range(l2)))

    def rule(i: int, j: int, k: int) -> int:
        (a, x), (b, y), (c, z) = pairs[i], pairs[j], pairs[k]
        s1 = v1.S(a, b, c)
        return s1 * v2.S(x, y, z) if s1 else 0

    logger.debug("building %s (x) %s with %d modules", v1.display_name, v2.display_name, len(pairs))
    return VoaSpec(
        labels=tuple(f"{v1.labels[a]}*{v2.labels[x]}" for a, x in pairs),
        vacuum=v1.vacuum * l2 + v2.vacuum,
        dual=tuple(v1.dual[a] * l2 + v2.dual[x] for a, x in pairs),
        three_point=tensor_from_rule(len(pairs), rule),
        weights=tuple(v1.weights[a] + v2.weights[x] for a, x in pairs),
        central_charge=v1.central_charge + v2.central_charge,
        strongly_generated_degree_one=_combined_flag(v1.strongly_generated_degree_one,
                                                     v2.strongly_generated_degree_one),
        name=f"tensor:({v1.display_name},{v2.display_name})",
        factors=(v1, v2),
    )
