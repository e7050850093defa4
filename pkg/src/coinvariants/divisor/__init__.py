"""First Chern classes of coinvariant bundles and F-nefness checks."""

from coinvariants.divisor.chern import c1, c1_pointed_closed_form
from coinvariants.divisor.divisor_class import DivisorClass, DivisorDocument, boundary_keys, canonical_key
from coinvariants.divisor.nef import (
    FCurveCheck,
    NefReport,
    degree_on_M04,
    f_check_genus0,
    f_check_type1,
    f_check_type2,
    padding_exponent,
    pointed_nef_report,
)

__all__ = [
    "DivisorClass",
    "DivisorDocument",
    "FCurveCheck",
    "NefReport",
    "boundary_keys",
    "c1",
    "c1_pointed_closed_form",
    "canonical_key",
    "degree_on_M04",
    "f_check_genus0",
    "f_check_type1",
    "f_check_type2",
    "padding_exponent",
    "pointed_nef_report",
]
