# src/coinvariants/fusion/oracle.py
"""
Brute-force factorization oracle.

Ranks are recomputed as state sums over a trivalent graph of genus g with n
legs: a tree whose leaves are the legs plus one tadpole (a vertex carrying a
self-loop) per unit of genus. Each internal edge is summed over all module
labels; the two ends of an edge see a label and its dual, and every vertex
contributes S of the three labels it sees.

Two tree shapes are contracted: a left-deep caterpillar and a balanced tree.
The factorization theorem makes the result independent of the shape, so a
disagreement means the fusion data is inconsistent.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import List, Literal, Sequence, Tuple, Union

from coinvariants.config.loader import get_section
from coinvariants.errors import OracleDisagreementError
from coinvariants.fusion.spec import Insertion, Rows, VoaSpec, as_insertion

logger = logging.getLogger(__name__)

Layout = Literal["caterpillar", "balanced"]
LAYOUTS: Tuple[Layout, ...] = ("caterpillar", "balanced")

# A tree is a leaf (attachment position) or a pair of subtrees.
Tree = Union[int, Tuple["Tree", "Tree"]]
Vector = List[int]


# ---------------------------------------------------------------------------
# attachments and subtree contraction
# ---------------------------------------------------------------------------

def _tadpole_vector(voa: VoaSpec) -> Vector:
    """F(y) for a tadpole hanging off an edge whose parent end sees y."""
    n = voa.size
    loop = [sum(voa.S(x, lam, voa.dual[lam]) for lam in range(n)) for x in range(n)]
    return [loop[voa.dual[y]] for y in range(n)]


def _leg_vector(voa: VoaSpec, label: int) -> Vector:
    return [1 if y == label else 0 for y in range(voa.size)]


def _attachments(voa: VoaSpec, legs: Sequence[int], tadpoles: int) -> List[Vector]:
    return [_leg_vector(voa, a) for a in legs] + [_tadpole_vector(voa) for _ in range(tadpoles)]


def _join(voa: VoaSpec, left: Vector, right: Vector) -> Vector:
    """
    Vector of a new vertex joining two subtrees; its upward edge is seen as
    z by the vertex and y = dual(z) by the parent.
    """
    n = voa.size
    out = [0] * n
    for u in range(n):
        if not left[u]:
            continue
        for w in range(n):
            if not right[w]:
                continue
            lw = left[u] * right[w]
            for y in range(n):
                s = voa.S(u, w, voa.dual[y])
                if s:
                    out[y] += lw * s
    return out


def _contract(voa: VoaSpec, tree: Tree, vectors: List[Vector]) -> Vector:
    if isinstance(tree, int):
        return vectors[tree]
    left, right = tree
    return _join(voa, _contract(voa, left, vectors), _contract(voa, right, vectors))


def _caterpillar(positions: Sequence[int]) -> Tree:
    tree: Tree = positions[0]
    for p in positions[1:]:
        tree = (tree, p)
    return tree


def _balanced(positions: Sequence[int]) -> Tree:
    if len(positions) == 1:
        return positions[0]
    mid = len(positions) // 2
    return (_balanced(positions[:mid]), _balanced(positions[mid:]))


def _split_root(positions: Sequence[int], layout: Layout) -> Tuple[Tree, Tree, Tree]:
    """Three subtrees meeting at the root vertex; needs len(positions) >= 3."""
    if layout == "caterpillar":
        return _caterpillar(positions[:-2]), positions[-2], positions[-1]
    k = len(positions)
    a, b = (k + 2) // 3, (2 * k + 2) // 3
    return _balanced(positions[:a]), _balanced(positions[a:b]), _balanced(positions[b:])


@lru_cache(maxsize=1)
def _oracle_limits() -> Tuple[int, int, int]:
    try:
        cfg = get_section("oracle")
    except FileNotFoundError:
        cfg = {}
    return int(cfg.get("max_legs", 8)), int(cfg.get("max_genus", 3)), int(cfg.get("max_modules", 8))


def _warn_limits(voa: VoaSpec, n: int, genus: int) -> None:
    max_legs, max_genus, max_modules = _oracle_limits()
    if n > max_legs or genus > max_genus or voa.size > max_modules:
        logger.warning("oracle query beyond soft limits: n=%d genus=%d l=%d", n, genus, voa.size)


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

def state_sum(voa: VoaSpec, ins: Insertion | Sequence[int] | None, genus: int,
              layout: Layout = "caterpillar") -> int:
    """
    Closed state sum of genus ``genus`` with the given legs.

    Vacuum legs are appended until there are at least three attachments;
    inserting the vacuum does not change ranks.
    """
    if genus < 0:
        raise ValueError(f"genus must be >= 0, got {genus}")
    legs = list(as_insertion(ins).check(voa).points)
    while len(legs) + genus < 3:
        legs.append(voa.vacuum)
    vectors = _attachments(voa, legs, genus)
    a, b, c = (_contract(voa, t, vectors) for t in _split_root(list(range(len(vectors))), layout))
    n = voa.size
    total = 0
    for x in range(n):
        if not a[x]:
            continue
        for y in range(n):
            if not b[y]:
                continue
            ab = a[x] * b[y]
            for z in range(n):
                if c[z]:
                    total += ab * c[z] * voa.S(x, y, z)
    return total


def frame_matrix(voa: VoaSpec, ins: Insertion | Sequence[int] | None, genus: int,
                 layout: Layout = "caterpillar") -> Rows:
    """
    State-sum FA-matrix: entry (i, j) = state sum with legs ins + {W_i, W_j'}.

    The two frame legs meet the rest of the graph at the root vertex.
    """
    legs = list(as_insertion(ins).check(voa).points)
    if not legs and not genus:
        legs = [voa.vacuum]
    vectors = _attachments(voa, legs, genus)
    positions = list(range(len(vectors)))
    tree = _caterpillar(positions) if layout == "caterpillar" else _balanced(positions)
    rest = _contract(voa, tree, vectors)
    n = voa.size
    return tuple(
        tuple(sum(rest[u] * voa.S(u, i, voa.dual[j]) for u in range(n) if rest[u]) for j in range(n))
        for i in range(n)
    )


def rank_oracle(voa: VoaSpec, ins: Insertion | Sequence[int] | None = None, genus: int = 0) -> int:
    """
    Rank from both state-sum layouts; raises OracleDisagreementError if they differ.
    """
    insertion = as_insertion(ins)
    _warn_limits(voa, insertion.n, genus)
    values = {layout: state_sum(voa, insertion, genus, layout) for layout in LAYOUTS}
    if values["caterpillar"] != values["balanced"]:
        raise OracleDisagreementError(
            f"state sums disagree for {voa.display_name}, ins={insertion.points}, genus={genus}: {values}"
        )
    return values["caterpillar"]
