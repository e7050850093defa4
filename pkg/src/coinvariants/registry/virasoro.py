# src/coinvariants/registry/virasoro.py
"""
Discrete-series Virasoro VOAs V_{p,q}.

Modules are labelled by (m, n), 1 <= m <= p-1, 1 <= n <= q-1, modulo
(m, n) ~ (p-m, q-n). The stored representative is the lexicographically
smaller of the two. Internal order is by representative, so the vacuum
(1, 1) is index 0; `VoaSpec.paper_order` gives the weight-increasing order.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd
from typing import List, Tuple

from coinvariants.errors import DomainError
from coinvariants.fusion.spec import Rows, VoaSpec, tensor_from_rule

logger = logging.getLogger(__name__)

Label = Tuple[int, int]


def central_charge(p: int, q: int) -> Fraction:
    """c_{p,q} = 1 - 6(p - q)² / (pq)."""
    return 1 - Fraction(6 * (p - q) ** 2, p * q)


def conformal_weight(p: int, q: int, m: int, n: int) -> Fraction:
    """h_{m,n} = ((np - mq)² - (p - q)²) / (4pq)."""
    return Fraction((n * p - m * q) ** 2 - (p - q) ** 2, 4 * p * q)


def canonical_label(p: int, q: int, m: int, n: int) -> Label:
    return min((m, n), (p - m, q - n))


def canonical_labels(p: int, q: int) -> List[Label]:
    """The (p-1)(q-1)/2 canonical labels in increasing order."""
    return sorted({canonical_label(p, q, m, n) for m in range(1, p) for n in range(1, q)})


def label_text(label: Label) -> str:
    return "V" if label == (1, 1) else f"W{label[0]}_{label[1]}"


def _admissible(k: int, a: int, b: int, c: int) -> bool:
    """|a-b|+1 <= c <= min(a+b-1, 2k-1-a-b) and a+b+c odd."""
    return abs(a - b) + 1 <= c <= min(a + b - 1, 2 * k - 1 - a - b) and (a + b + c) % 2 == 1


def fusion_coefficient(p: int, q: int, x: Label, y: Label, z: Label) -> int:
    """
    Truncated fusion rule N_{x,y}^{z} for V_{p,q}: 1 iff one of the two
    representatives of z is admissible with x and y in both coordinates.
    """
    for m, n in (z, (p - z[0], q - z[1])):
        if _admissible(p, x[0], y[0], m) and _admissible(q, x[1], y[1], n):
            return 1
    return 0


def _check_pq(p: int, q: int) -> None:
    if p < 2 or q < 2:
        raise DomainError(f"virasoro(p, q) needs p, q >= 2, got ({p}, {q})")
    if p == q or gcd(p, q) != 1:
        raise DomainError(f"virasoro(p, q) needs coprime p != q, got ({p}, {q})")


def virasoro(p: int, q: int) -> VoaSpec:
    """The discrete-series Virasoro VOA of central charge c_{p,q}."""
    _check_pq(p, q)
    labels = canonical_labels(p, q)
    size = len(labels)
    weights = tuple(conformal_weight(p, q, m, n) for m, n in labels)
    three_point = tensor_from_rule(size, lambda a, b, c: fusion_coefficient(p, q, labels[a], labels[b], labels[c]))
    logger.debug("built virasoro(%d, %d) with %d modules", p, q, size)
    return VoaSpec(
        labels=tuple(label_text(lab) for lab in labels),
        vacuum=labels.index((1, 1)),
        dual=tuple(range(size)),
        three_point=three_point,
        weights=weights,
        central_charge=central_charge(p, q),
        name=f"virasoro:{p},{q}",
    )


# ---------------------------------------------------------------------------
# V_{2,2t+1}: closed form of the fusion matrices in weight order
# ---------------------------------------------------------------------------

def boundary_fusion_closed_form(t: int, k: int) -> Rows:
    """
    Fusion matrix of W_k for V_{2,2t+1}, modules numbered 1..t by increasing
    weight: entry (i, j) is 1 iff i + j <= t - k + 2, or i + j has the parity
    of k + 1 (t odd) / k (t even) with |i - j| <= t - k + 1 and
    i + j <= t + k + 1.
    """
    if t < 1 or not 1 <= k <= t:
        raise DomainError(f"need t >= 1 and 1 <= k <= t, got t={t}, k={k}")
    parity = (k + 1) % 2 if t % 2 else k % 2

    def entry(i: int, j: int) -> int:
        if i + j <= t - k + 2:
            return 1
        return int((i + j) % 2 == parity and abs(i - j) <= t - k + 1 and i + j <= t + k + 1)

    return tuple(tuple(entry(i, j) for j in range(1, t + 1)) for i in range(1, t + 1))


def min_weight_module(voa: VoaSpec) -> int:
    """Index of W_min, the module of smallest conformal weight (ties: lowest index)."""
    return voa.paper_order[0]


def max_weight_module(voa: VoaSpec) -> int:
    """Index of W_max, the module of largest conformal weight (ties: lowest index)."""
    top = max(voa.weights)
    return next(i for i in voa.paper_order if voa.weights[i] == top)
