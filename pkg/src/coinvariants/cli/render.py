# src/coinvariants/cli/render.py
"""Plain-text renderers; every function yields lines so large matrices stream."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable, Iterator, List, Sequence, Tuple

from coinvariants.divisor.divisor_class import DivisorClass
from coinvariants.divisor.nef import FCurveCheck, NefReport
from coinvariants.fusion.properties import VerificationReport
from coinvariants.fusion.spec import FAMatrix, VoaSpec
from coinvariants.genfunc.rational import RationalFunction


def number(x: int | Fraction) -> str:
    """Integers print bare, other rationals as p/q."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2)


def matrix_lines(voa: VoaSpec, m: FAMatrix, order: Sequence[int]) -> Iterator[str]:
    width = max([len(voa.labels[i]) for i in order] + [len(str(x)) for row in m.entries for x in row])
    yield " " * width + " | " + " ".join(voa.labels[j].rjust(width) for j in order)
    for i in order:
        yield voa.labels[i].rjust(width) + " | " + " ".join(str(m[i, j]).rjust(width) for j in order)


def rational_lines(rf: RationalFunction, coeffs: Sequence[Fraction]) -> Iterator[str]:
    yield f"f(z) = {rf}"
    yield "series: " + ", ".join(number(c) for c in coeffs)


def divisor_lines(labels: Sequence[str], d: DivisorClass) -> Iterator[str]:
    yield f"c1 on M_{d.g},{d.n}  insertions: [{', '.join(labels)}]"
    yield f"  lambda      {number(d.lambda_coeff)}"
    for i, p in enumerate(d.psi, start=1):
        yield f"  psi_{i:<8} {number(p)}"
    if d.b_irr is not None:
        yield f"  delta_irr   {number(-d.b_irr)}"
    for (h, subset), b in sorted(d.boundary.items(), key=lambda kv: (kv[0][0], len(kv[0][1]), sorted(kv[0][1]))):
        points = "{" + ",".join(str(p + 1) for p in sorted(subset)) + "}"
        yield f"  delta_{h}:{points:<6} {number(-b)}"


def check_lines(checks: Iterable[Tuple[str, FCurveCheck]]) -> Iterator[str]:
    for name, check in checks:
        verdict = "holds" if check else "FAILS"
        degree = "" if check.degree is None else f" (degree {number(check.degree)})"
        witness = "" if check.witness is None or check else f" witness {check.witness}"
        yield f"{name}: {verdict}{degree}{witness}"


def report_lines(reports: Iterable[VerificationReport]) -> Iterator[str]:
    for report in reports:
        for name, c in report.checks.items():
            status = "ok" if c.passed else "FAIL"
            line = f"[{status}] {report.subject} {name} ({c.checked} cases)"
            if not c.passed:
                line += f": {c.witness}"
            yield line


def nef_lines(report: NefReport) -> Iterator[str]:
    yield f"{report.subject}: c = {number(report.central_charge)}, a_average = {number(report.a_average)}, " \
          f"a_max = {number(report.a_max)}"
    for t, status in sorted(report.types.items()):
        yield f"type {t}: {status}"
    yield f"D_g,1(V, {{V}}) nef: {'yes' if report.d_g1_nef else 'no'}"
    if report.padding_exponent is not None:
        yield f"padding exponent r0 for c_H = {number(report.holomorphic_c)}: {report.padding_exponent}"


def coefficients_json(coeffs: Sequence[Fraction]) -> List[int | str]:
    return [int(c) if c.denominator == 1 else number(c) for c in coeffs]
