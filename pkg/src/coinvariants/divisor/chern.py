# src/coinvariants/divisor/chern.py
"""
First Chern classes of coinvariant bundles.

With r = rank V_{g,n}(ins):

    λ   = r·c/2
    ψ_i = r·a_{ins[i]}
    b_irr   = Σ_γ a_γ · rank V_{g-1,n+2}(ins, W_γ, W_γ')
    b_{h:I} = Σ_γ a_γ · rank V_{h,|I|+1}(ins_I, W_γ) · rank V_{g-h,|I^c|+1}(ins_{I^c}, W_γ')

For pointed VOAs the sums collapse to the closed form in
`c1_pointed_closed_form`.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Sequence

from coinvariants.divisor.divisor_class import BoundaryKey, DivisorClass, boundary_keys, is_stable
from coinvariants.errors import InstabilityError
from coinvariants.fusion.engine import rank
from coinvariants.fusion.spec import Insertion, VoaSpec, as_insertion
from coinvariants.registry.pointed import PointedData

logger = logging.getLogger(__name__)


def _require_stable(g: int, n: int) -> None:
    if not is_stable(g, n):
        raise InstabilityError(f"c1 needs 2g - 2 + n > 0, got g={g}, n={n}")


def c1(voa: VoaSpec, ins: Insertion | Sequence[int], genus: int) -> DivisorClass:
    """c1 of V_{g,n}(V, ins) for an ordered insertion."""
    insertion = as_insertion(ins).check(voa)
    n = insertion.n
    _require_stable(genus, n)
    r = rank(voa, insertion, genus)
    lam = r * voa.central_charge / 2
    psi = tuple(r * voa.weights[p] for p in insertion.points)

    b_irr = None
    if genus >= 1:
        b_irr = sum(
            (voa.weights[gam] * rank(voa, insertion + (gam, voa.dual[gam]), genus - 1) for gam in range(voa.size)),
            Fraction(0),
        )

    boundary: Dict[BoundaryKey, Fraction] = {}
    for h, subset in boundary_keys(genus, n):
        inside = insertion.restrict(sorted(subset))
        outside = insertion.restrict(p for p in range(n) if p not in subset)
        total = Fraction(0)
        for gam in range(voa.size):
            if not voa.weights[gam]:
                continue
            left = rank(voa, inside + (gam,), h)
            if left:
                total += voa.weights[gam] * left * rank(voa, outside + (voa.dual[gam],), genus - h)
        boundary[(h, subset)] = total

    logger.debug("c1 of %s at g=%d, n=%d: rank %d", voa.display_name, genus, n, r)
    return DivisorClass(g=genus, n=n, lambda_coeff=lam, psi=psi, b_irr=b_irr, boundary=boundary)


def c1_pointed_closed_form(data: PointedData, beta: Sequence[int], genus: int) -> DivisorClass:
    """
    Pointed closed form: every coefficient carries m^g; b_irr = m^g·a_average
    and b_{h:I} = m^g·a_{∏_{i∈I} β_i}. The zero class when ∏β != e.
    """
    n = len(beta)
    _require_stable(genus, n)
    if data.product(beta) != data.identity:
        return DivisorClass.zero(genus, n)
    mg = data.order ** genus
    return DivisorClass(
        g=genus,
        n=n,
        lambda_coeff=mg * data.central_charge / 2,
        psi=tuple(mg * data.weights[b] for b in beta),
        b_irr=mg * data.a_average if genus >= 1 else None,
        boundary={
            (h, subset): mg * data.weights[data.product([beta[i] for i in sorted(subset)])]
            for h, subset in boundary_keys(genus, n)
        },
    )
