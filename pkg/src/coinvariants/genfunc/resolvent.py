# src/coinvariants/genfunc/resolvent.py
"""
Indexing functions as resolvent entries.

For a prefix P and a step matrix A,

    Σ_n (P · A^{n+3})_{ij} z^n = (P · A³ · adj(Id - zA))_{ij} / det(Id - zA).

det(Id - zA) and the adjugate depend only on A and are kept per step matrix,
so sweeping every frame (i, j) expands them once.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Sequence, Tuple

import sympy

from coinvariants.errors import DomainError
from coinvariants.fusion.engine import fa_matrix
from coinvariants.fusion.spec import FAMatrix, Insertion, Rows, VoaSpec, as_insertion, matmul, matpow
from coinvariants.genfunc.rational import RationalFunction, z

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def _det_and_adjugate(step: Rows) -> Tuple[sympy.Poly, sympy.ImmutableMatrix]:
    n = len(step)
    m = sympy.eye(n) - z * sympy.Matrix(step)
    det = sympy.Poly(m.det(method="berkowitz"), z)
    if det.eval(0) != 1:
        raise AssertionError(f"det(Id - zA) has constant term {det.eval(0)}")
    adj = sympy.ones(1, 1) if n == 1 else m.adjugate(method="berkowitz")
    logger.debug("expanded det and adjugate of a %dx%d step", n, n)
    return det, sympy.ImmutableMatrix(adj)


def resolvent_entry(prefix: FAMatrix, step: FAMatrix, i: int, j: int) -> RationalFunction:
    """(prefix · step³ · (Id - z·step)⁻¹)_{ij} as a canonical rational function."""
    n = step.size
    if prefix.size != n:
        raise DomainError(f"prefix is {prefix.size}x{prefix.size} but step is {n}x{n}")
    if not (0 <= i < n and 0 <= j < n):
        raise DomainError(f"frame ({i}, {j}) outside a {n}x{n} matrix")
    if any(x < 0 for row in step.entries for x in row):
        raise DomainError("step matrix must have non-negative entries")

    det, adj = _det_and_adjugate(step.entries)
    head = matmul(prefix.entries, matpow(step.entries, 3))
    num = sympy.expand(sum((head[i][k] * adj[k, j] for k in range(n) if head[i][k]), sympy.Integer(0)))
    return RationalFunction.from_polys(sympy.Poly(num, z, domain="QQ"), sympy.Poly(det.as_expr(), z, domain="QQ"))


def indexing_function(voa: VoaSpec, deviation: Insertion | Sequence[int] | None,
                      step: Insertion | Sequence[int], i: int, j: int, genus: int = 0) -> RationalFunction:
    """
    f(z) = Σ_n rank V_{g,·}(deviation + (n+3)·step, W_i, W_j') z^n.

    The prefix is fa_matrix(deviation, genus), which already carries the
    averaging power; the step matrix is fa_matrix(step, 0).
    """
    step_ins = as_insertion(step)
    if step_ins.n == 0:
        raise DomainError("indexing_function needs a non-empty step insertion")
    voa.check_index(i)
    voa.check_index(j)
    prefix = fa_matrix(voa, deviation, genus)
    return resolvent_entry(prefix, fa_matrix(voa, step_ins, 0), i, j)
