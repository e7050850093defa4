# src/coinvariants/registry/lattice.py
"""
Pointed data of root-lattice VOAs V_L.

The irreducible modules are the cosets of L in its dual lattice L*. With
the Cartan matrix G as Gram matrix of L, a vector v of fundamental-weight
coordinates lies in the coset keyed by the fractional parts of G⁻¹v, and has
norm vᵀG⁻¹v. Every coset of an ADE root lattice contains a minuscule weight
(or 0), so the minimal norm is reached with coordinates in {-1, 0, 1}.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Tuple

import sympy

from coinvariants.errors import DomainError
from coinvariants.registry.pointed import PointedData

logger = logging.getLogger(__name__)

Key = Tuple[Fraction, ...]


def _edges(kind: str, rank: int) -> List[Tuple[int, int]]:
    if kind == "A" and rank >= 1:
        return [(i, i + 1) for i in range(rank - 1)]
    if kind == "D" and rank >= 4:
        return [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    if kind == "E" and rank in (6, 7, 8):
        # Bourbaki numbering: 1-3-4-5-...-r with 2 attached to 4
        return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, rank - 1)]
    raise DomainError(f"no root lattice of type {kind}{rank}; use A_r (r >= 1), D_r (r >= 4) or E6/E7/E8")


def cartan_matrix(kind: str, rank: int) -> sympy.Matrix:
    g = sympy.eye(rank) * 2
    for i, j in _edges(kind.upper(), rank):
        g[i, j] = g[j, i] = -1
    return g


def root_lattice(kind: str, rank: int) -> PointedData:
    """Discriminant group, minimal coset norms / 2 and c = rank for the ADE root lattice."""
    kind = kind.upper()
    inverse = cartan_matrix(kind, rank).inv()
    ginv = [[Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(rank)] for i in range(rank)]

    def unit(v: Tuple[int, ...]) -> int | None:
        return v.index(1) if sorted(v) == [0] * (rank - 1) + [1] else None

    best: Dict[Key, Tuple[Fraction, Tuple[int, ...]]] = {}
    for v in itertools.product((0, 1, -1), repeat=rank):
        x = [sum(ginv[i][j] * v[j] for j in range(rank)) for i in range(rank)]
        key = tuple(c % 1 for c in x)
        norm = sum(v[i] * x[i] for i in range(rank))
        # ties prefer a fundamental weight as representative
        if key not in best or (norm, unit(v) is None) < (best[key][0], unit(best[key][1]) is None):
            best[key] = (norm, v)

    zero: Key = tuple(Fraction(0) for _ in range(rank))

    def order_key(key: Key) -> Tuple[int, int, Key]:
        if key == zero:
            return (0, 0, key)
        u = unit(best[key][1])
        return (1, u, key) if u is not None else (2, 0, key)

    keys = sorted(best, key=order_key)
    index = {k: i for i, k in enumerate(keys)}
    labels: List[str] = []
    for k in keys:
        u = unit(best[k][1])
        labels.append("e" if k == zero else (f"w{u + 1}" if u is not None else f"c{index[k]}"))

    def add(a: Key, b: Key) -> Key:
        return tuple((x + y) % 1 for x, y in zip(a, b))

    logger.debug("root lattice %s%d: discriminant group of order %d", kind, rank, len(keys))
    return PointedData(
        labels=tuple(labels),
        table=tuple(tuple(index[add(a, b)] for b in keys) for a in keys),
        weights=tuple(best[k][0] / 2 for k in keys),
        central_charge=Fraction(rank),
        strongly_generated_degree_one=True,
        name=f"lattice:{kind}{rank}",
    )
