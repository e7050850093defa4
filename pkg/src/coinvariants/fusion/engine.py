# src/coinvariants/fusion/engine.py
"""
FA-matrix engine.

Every rank is read off a product of fusion matrices and a power of the
averaging matrix:

    fa_matrix(ins, g) = (prod_w R_w^{n_w}) · R_avg^g
    rank(ins, g)      = Tr(fa_matrix(ins, g - 1))                 for g >= 1
                      = fa_matrix(ins, 0)[vacuum, dual(vacuum)]   for g == 0

Results are memoized per spec fingerprint in a lock-guarded in-memory table
and, when enabled, in the SQLite store of `coinvariants.db.cache`.
"""

from __future__ import annotations

import logging
import threading
from collections import OrderedDict
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from coinvariants.db.cache import get_store
from coinvariants.errors import InstabilityError
from coinvariants.fusion.spec import (
    FAMatrix,
    Insertion,
    Rows,
    VoaSpec,
    as_insertion,
    fusion_rows,
    identity_rows,
    is_permutation_matrix,
    matmul,
    matpow,
)

logger = logging.getLogger(__name__)

MEMO_MAX_ENTRIES = 4096


# ---------------------------------------------------------------------------
# memoization
# ---------------------------------------------------------------------------

class _MatrixMemo:
    """
    In-memory memo shared by all threads, bounded to ``max_entries`` matrices
    with least-recently-used eviction.

    Values are computed outside the lock; concurrent first computations of
    the same key produce identical rows and the first stored one wins.
    """

    def __init__(self, max_entries: int = MEMO_MAX_ENTRIES) -> None:
        if max_entries < 1:
            raise ValueError(f"max_entries must be >= 1, got {max_entries}")
        self.max_entries = max_entries
        self._lock = threading.Lock()
        self._data: OrderedDict[Tuple[str, str, Hashable], Rows] = OrderedDict()

    def __len__(self) -> int:
        with self._lock:
            return len(self._data)

    def __contains__(self, full_key: Tuple[str, str, Hashable]) -> bool:
        with self._lock:
            return full_key in self._data

    def get_or_compute(self, spec: VoaSpec, kind: str, key: Hashable, compute: Callable[[], Rows],
                       *, persist: bool = False) -> Rows:
        full_key = (spec.fingerprint, kind, key)
        with self._lock:
            hit = self._data.get(full_key)
            if hit is not None:
                self._data.move_to_end(full_key)
                return hit

        store = get_store() if persist else None
        rows: Optional[Rows] = None
        if store is not None:
            rows = store.get(spec.fingerprint, kind, repr(key))
            if rows is not None:
                logger.debug("persistent cache hit: %s %s %r", spec.display_name, kind, key)
        if rows is None:
            logger.debug("computing %s %r for %s", kind, key, spec.display_name)
            rows = compute()
            if store is not None:
                store.put(spec.fingerprint, kind, repr(key), rows)

        with self._lock:
            stored = self._data.setdefault(full_key, rows)
            self._data.move_to_end(full_key)
            while len(self._data) > self.max_entries:
                self._data.popitem(last=False)
            return stored

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


_MEMO = _MatrixMemo()


def clear_memo() -> None:
    """Drop every memoized matrix (tests use this between cache scenarios)."""
    _MEMO.clear()


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def fusion_matrix(voa: VoaSpec, w: int) -> FAMatrix:
    """R_{w,0}: entry (i, j) = S(w, i, dual(j))."""
    voa.check_index(w)
    rows = _MEMO.get_or_compute(voa, "fusion", w, lambda: fusion_rows(voa, w))
    return FAMatrix(rows, genus=0, insertions=(w,))


def averaging_matrix(voa: VoaSpec) -> FAMatrix:
    """R_{V,1} = sum_w Tr(R_{dual(w)}) · R_w."""

    def compute() -> Rows:
        n = voa.size
        acc = [[0] * n for _ in range(n)]
        for w in range(n):
            tr = fusion_matrix(voa, voa.dual[w]).trace()
            if not tr:
                continue
            rw = fusion_matrix(voa, w).entries
            for i in range(n):
                for j in range(n):
                    acc[i][j] += tr * rw[i][j]
        return tuple(tuple(r) for r in acc)

    rows = _MEMO.get_or_compute(voa, "averaging", 1, compute, persist=True)
    return FAMatrix(rows, genus=1, insertions=())


def _genus_power(voa: VoaSpec, genus: int) -> Rows:
    if genus == 0:
        return identity_rows(voa.size)
    return _MEMO.get_or_compute(
        voa, "averaging-power", genus,
        lambda: matpow(averaging_matrix(voa).entries, genus),
        persist=True,
    )


def fa_matrix(voa: VoaSpec, ins: Insertion | Sequence[int] | None = None, genus: int = 0) -> FAMatrix:
    """
    FA-matrix of the insertion multiset at the given genus.

    Fusion matrices commute, so the product runs over module indices in
    increasing order with each power taken by repeated squaring.
    """
    if genus < 0:
        raise ValueError(f"genus must be >= 0, got {genus}")
    insertion = as_insertion(ins).check(voa)
    counts = insertion.counts(voa.size)

    def compute() -> Rows:
        rows = identity_rows(voa.size)
        for w, k in enumerate(counts):
            if k:
                rows = matmul(rows, matpow(fusion_matrix(voa, w).entries, k))
        if genus:
            rows = matmul(rows, _genus_power(voa, genus))
        return rows

    rows = _MEMO.get_or_compute(voa, "fa", (counts, genus), compute, persist=genus > 0 or insertion.n > 2)
    return FAMatrix(rows, genus=genus, insertions=insertion.multiset())


def is_stable(genus: int, n: int) -> bool:
    return 2 * genus - 2 + n > 0


def rank(voa: VoaSpec, ins: Insertion | Sequence[int] | None = None, genus: int = 0, *,
         strict_stability: bool = False) -> int:
    """
    Rank of the bundle of coinvariants V_{g,n}(V, ins).

    Unstable (g, n) are evaluated formally unless ``strict_stability``.
    """
    if genus < 0:
        raise ValueError(f"genus must be >= 0, got {genus}")
    insertion = as_insertion(ins)
    if strict_stability:
        _require_stable(genus, insertion.n)
    if genus >= 1:
        return fa_matrix(voa, insertion, genus - 1).trace()
    return fa_matrix(voa, insertion, 0)[voa.vacuum, voa.dual[voa.vacuum]]


def rank_with_frame(voa: VoaSpec, ins: Insertion | Sequence[int] | None, genus: int, i: int, j: int, *,
                    strict_stability: bool = False) -> int:
    """rank V_{g,n+2}(V, {ins, W_i, W_j'}) = fa_matrix(ins, g)[i, j]."""
    voa.check_index(i)
    voa.check_index(j)
    if strict_stability:
        _require_stable(genus, as_insertion(ins).n + 2)
    return fa_matrix(voa, ins, genus)[i, j]


def _require_stable(genus: int, n: int) -> None:
    if not is_stable(genus, n):
        raise InstabilityError(f"(g, n) = ({genus}, {n}) is not stable: 2g - 2 + n <= 0")


# ---------------------------------------------------------------------------
# pointed / order-two detection
# ---------------------------------------------------------------------------

def is_pointed(voa: VoaSpec) -> Optional[List[List[int]]]:
    """
    Group multiplication table when every fusion matrix is a permutation
    matrix, else None. ``table[a][b]`` is the index of W_a ⊠ W_b.
    """
    n = voa.size
    if not all(fusion_matrix(voa, w).is_permutation() for w in range(n)):
        return None
    return [[next(c for c in range(n) if voa.S(a, b, voa.dual[c])) for b in range(n)] for a in range(n)]


def is_order_two(voa: VoaSpec, w: int) -> bool:
    """True iff w is not the vacuum and R_w² = Id."""
    voa.check_index(w)
    if w == voa.vacuum:
        return False
    r = fusion_matrix(voa, w)
    return (r @ r).entries == identity_rows(voa.size)


def squares_to_identity_is_permutation(rows: Rows) -> bool:
    """
    For a non-negative integer matrix with A² = Id, A is a permutation matrix.
    Returns False when A² != Id; otherwise the permutation test.
    """
    if matmul(rows, rows) != identity_rows(len(rows)):
        return False
    return is_permutation_matrix(rows)


def order_two_rank_table(voa: VoaSpec, w: int, max_n: int) -> Dict[str, Dict[Tuple[int, ...], int]]:
    """
    Ranks around an order-two module W:

    - ``"framed"``: (n, S, T) -> rank V_{0,n+2}(W^n, S, T') for even n;
    - ``"plain"``: (n,) -> rank V_{0,n}(W^n).
    """
    framed: Dict[Tuple[int, ...], int] = {}
    plain: Dict[Tuple[int, ...], int] = {}
    for n in range(max_n + 1):
        ins = Insertion((w,) * n)
        plain[(n,)] = rank(voa, ins, 0)
        if n % 2 == 0:
            m = fa_matrix(voa, ins, 0)
            for s in range(voa.size):
                for t in range(voa.size):
                    framed[(n, s, t)] = m[s, t]
    return {"framed": framed, "plain": plain}
