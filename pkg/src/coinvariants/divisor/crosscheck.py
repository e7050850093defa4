# src/coinvariants/divisor/crosscheck.py
"""Divisor suites: pointed closed form against generic c1, and the tensor c1 law."""

from __future__ import annotations

import logging

from coinvariants.divisor.chern import c1, c1_pointed_closed_form
from coinvariants.divisor.divisor_class import is_stable
from coinvariants.divisor.nef import f_check_genus0, f_check_type1, f_check_type2
from coinvariants.fusion.engine import rank
from coinvariants.fusion.properties import VerificationReport, multisets, split_insertion
from coinvariants.fusion.spec import VoaSpec
from coinvariants.registry.pointed import PointedData, pointed

logger = logging.getLogger(__name__)


def verify_pointed_closed_form(data: PointedData, max_n: int = 4, max_g: int = 2) -> VerificationReport:
    """
    c1_pointed_closed_form equals c1 coefficientwise for every β inside the
    bounds, one ordering per multiset (reordering β relabels the points).
    """
    voa = pointed(data)
    report = VerificationReport(data.display_name)
    check = report.check("pointed-closed-form")
    for beta in multisets(data.order, max_n):
        n = len(beta)
        for g in range(max_g + 1):
            if not is_stable(g, n):
                continue
            check.record(
                c1(voa, beta, g).coefficients_equal(c1_pointed_closed_form(data, beta, g)),
                lambda: f"c1 {[data.labels[b] for b in beta]}, g={g} differs from the closed form",
            )
    return report


def verify_tensor_c1(voa: VoaSpec, max_n: int = 3, max_g: int = 1) -> VerificationReport:
    """
    For V1 ⊗ V2 and S ⊗ T, one ordering per multiset:

    - c1-law: c1(S ⊗ T) = rank(T)·c1(S) + rank(S)·c1(T);
    - nef-combination: a check passed by both factor classes passes on the tensor class.
    """
    if voa.factors is None:
        raise ValueError(f"{voa.display_name} is not a tensor product")
    v1, v2 = voa.factors
    report = VerificationReport(voa.display_name)
    law = report.check("c1-law")
    combo = report.check("nef-combination")
    for ins in multisets(voa.size, max_n):
        n = len(ins)
        s, t = split_insertion(voa, ins)
        for g in range(max_g + 1):
            if not is_stable(g, n):
                continue
            d1, d2 = c1(v1, s, g), c1(v2, t, g)
            whole = c1(voa, ins, g)
            law.record(
                whole.coefficients_equal(rank(v2, t, g) * d1 + rank(v1, s, g) * d2),
                lambda: f"c1{list(ins)}, g={g} is not rank(T)·c1(S) + rank(S)·c1(T)",
            )
            checks = [f_check_type1, f_check_type2] if g >= 1 else ([f_check_genus0] if n >= 4 else [])
            for fn in checks:
                if fn(d1) and fn(d2):
                    combo.record(bool(fn(whole)), lambda: f"{fn.__name__} fails on c1{list(ins)}, g={g}")
    return report
