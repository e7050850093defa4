# src/coinvariants/fusion/properties.py
"""
Property suites over small bounds.

`verify_fa_properties` checks the FA identities on the state-sum oracle's
matrices (so they test the fusion data, not the matrix engine) and checks
that the engine agrees with the oracle. `verify_tensor_laws` checks the
Kronecker and rank-multiplicativity laws of a tensor-product spec.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from coinvariants.errors import CoinvariantsError
from coinvariants.fusion.engine import averaging_matrix, fa_matrix, fusion_matrix, rank
from coinvariants.fusion.oracle import frame_matrix, rank_oracle, state_sum
from coinvariants.fusion.spec import Insertion, Rows, VoaSpec, matmul

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    """Outcome of one law over every case inside the bounds."""

    name: str
    passed: bool = True
    checked: int = 0
    witness: Optional[str] = None

    def record(self, ok: bool, witness: Callable[[], str]) -> None:
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.witness = witness()


@dataclass
class VerificationReport:
    subject: str
    checks: Dict[str, CheckResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def check(self, name: str) -> CheckResult:
        return self.checks.setdefault(name, CheckResult(name))

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks.values() if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": {
                name: {"passed": c.passed, "checked": c.checked, "witness": c.witness}
                for name, c in self.checks.items()
            },
        }


def multisets(size: int, max_n: int) -> Iterator[Tuple[int, ...]]:
    """All multisets over [0, size) with at most ``max_n`` elements, smallest first."""
    for k in range(max_n + 1):
        yield from itertools.combinations_with_replacement(range(size), k)


def _fmt(ins: Tuple[int, ...], voa: VoaSpec) -> str:
    return "{" + ",".join(voa.labels[i] for i in ins) + "}"


def verify_fa_properties(voa: VoaSpec, max_n: int = 3, max_g: int = 1) -> VerificationReport:
    """
    Check the FA laws for every insertion multiset with at most ``max_n``
    points and genus sums up to ``max_g``:

    - commutativity: R_a R_b = R_b R_a;
    - engine: fa_matrix(β, g) equals the state-sum matrix;
    - FA1: M(β, g1) · M(γ, g2) = M(β + γ, g1 + g2);
    - FA2: Tr M(β, g) = state sum at genus g + 1;
    - V3: M(∅, 1) = Σ_λ Tr(M(λ', 0)) · M(λ, 0);
    - oracle: rank agrees with both state-sum layouts.

    Here M is the caterpillar state-sum FA-matrix.
    """
    report = VerificationReport(voa.display_name)
    n = voa.size
    frames: Dict[Tuple[Tuple[int, ...], int], Rows] = {}

    def M(ins: Tuple[int, ...], g: int) -> Rows:
        key = (tuple(sorted(ins)), g)
        if key not in frames:
            frames[key] = frame_matrix(voa, Insertion(key[0]), g)
        return frames[key]

    comm = report.check("commutativity")
    for a in range(n):
        for b in range(a + 1, n):
            ra, rb = fusion_matrix(voa, a), fusion_matrix(voa, b)
            comm.record((ra @ rb).entries == (rb @ ra).entries,
                        lambda: f"R_{voa.labels[a]} R_{voa.labels[b]} != R_{voa.labels[b]} R_{voa.labels[a]}")

    engine = report.check("engine")
    for beta in multisets(n, max_n):
        for g in range(max_g + 1):
            engine.record(fa_matrix(voa, beta, g).entries == M(beta, g),
                          lambda: f"fa_matrix{_fmt(beta, voa)}, g={g} differs from the state sum")

    fa1 = report.check("FA1")
    for beta in multisets(n, max_n):
        for gamma in multisets(n, max_n - len(beta)):
            if gamma < beta and len(gamma) == len(beta):
                continue
            for g1 in range(max_g + 1):
                for g2 in range(max_g + 1 - g1):
                    if not fa1.passed:
                        break
                    fa1.record(
                        matmul(M(beta, g1), M(gamma, g2)) == M(beta + gamma, g1 + g2),
                        lambda: f"M{_fmt(beta, voa)},g={g1} · M{_fmt(gamma, voa)},g={g2} != M(sum)",
                    )

    fa2 = report.check("FA2")
    for beta in multisets(n, max_n):
        for g in range(max_g + 1):
            tr = sum(M(beta, g)[i][i] for i in range(n))
            fa2.record(tr == state_sum(voa, Insertion(beta), g + 1),
                       lambda: f"Tr M{_fmt(beta, voa)},g={g} != state sum at genus {g + 1}")

    v3 = report.check("V3")
    expected = [[0] * n for _ in range(n)]
    for lam in range(n):
        tr = sum(M((voa.dual[lam],), 0)[i][i] for i in range(n))
        m = M((lam,), 0)
        for i in range(n):
            for j in range(n):
                expected[i][j] += tr * m[i][j]
    v3.record(tuple(tuple(r) for r in expected) == M((), 1), lambda: "M(∅, 1) != Σ Tr(M(λ')) M(λ)")
    v3.record(averaging_matrix(voa).entries == M((), 1), lambda: "averaging_matrix != M(∅, 1)")

    oracle = report.check("oracle")
    for beta in multisets(n, max_n):
        for g in range(max_g + 2):
            try:
                ok = rank(voa, beta, g) == rank_oracle(voa, beta, g)
                detail = f"rank{_fmt(beta, voa)}, g={g} != oracle"
            except CoinvariantsError as e:
                ok, detail = False, str(e)
            oracle.record(ok, lambda: detail)

    for name, result in report.checks.items():
        logger.info("%s %s: %s after %d cases", voa.display_name, name,
                    "pass" if result.passed else "FAIL", result.checked)
    return report


def tensor_index(voa: VoaSpec, a: int, x: int) -> int:
    """Index of W_a ⊗ M_x in a tensor spec (lexicographic order)."""
    if voa.factors is None:
        raise ValueError(f"{voa.display_name} is not a tensor product")
    return a * voa.factors[1].size + x


def split_insertion(voa: VoaSpec, ins: Tuple[int, ...]) -> Tuple[Insertion, Insertion]:
    if voa.factors is None:
        raise ValueError(f"{voa.display_name} is not a tensor product")
    l2 = voa.factors[1].size
    return Insertion(tuple(p // l2 for p in ins)), Insertion(tuple(p % l2 for p in ins))


def verify_tensor_laws(voa: VoaSpec, max_n: int = 3, max_g: int = 1) -> VerificationReport:
    """
    For a tensor spec V1 ⊗ V2:

    - kronecker: fa_matrix(S ⊗ T, g) = fa_matrix(S, g) ⊗ fa_matrix(T, g);
    - rank-multiplicativity: rank(S ⊗ T, g) = rank(S, g) · rank(T, g).
    """
    if voa.factors is None:
        raise ValueError(f"{voa.display_name} is not a tensor product")
    v1, v2 = voa.factors
    report = VerificationReport(voa.display_name)
    kron = report.check("kronecker")
    mult = report.check("rank-multiplicativity")
    for ins in multisets(voa.size, max_n):
        s, t = split_insertion(voa, ins)
        for g in range(max_g + 1):
            kron.record(
                fa_matrix(voa, ins, g).entries == fa_matrix(v1, s, g).kron(fa_matrix(v2, t, g)).entries,
                lambda: f"fa_matrix{_fmt(ins, voa)}, g={g} is not the Kronecker product of its factors",
            )
        for g in range(max_g + 2):
            mult.record(rank(voa, ins, g) == rank(v1, s, g) * rank(v2, t, g),
                        lambda: f"rank{_fmt(ins, voa)}, g={g} is not multiplicative")
    return report


def verify_oracle_samples(voa: VoaSpec, samples: int = 50, seed: int = 0,
                          max_n: int = 5, max_g: int = 2) -> VerificationReport:
    """
    Random rank queries: the caterpillar and balanced state sums agree with
    each other and with the matrix engine. Seeded, so runs repeat exactly.
    """
    rng = random.Random(seed)
    report = VerificationReport(voa.display_name)
    check = report.check("oracle-random")
    for _ in range(samples):
        n = rng.randint(0, max_n)
        g = rng.randint(0, max_g)
        ins = tuple(sorted(rng.randrange(voa.size) for _ in range(n)))
        try:
            ok = rank(voa, ins, g) == rank_oracle(voa, ins, g)
            detail = f"rank{_fmt(ins, voa)}, g={g} != oracle"
        except CoinvariantsError as e:
            ok, detail = False, str(e)
        check.record(ok, lambda: detail)
    return report
