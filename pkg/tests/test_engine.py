import itertools
import random
from concurrent.futures import ThreadPoolExecutor

import pytest

from coinvariants.errors import InstabilityError, ModuleIndexError
from coinvariants.fusion.engine import (
    _MatrixMemo,
    averaging_matrix,
    clear_memo,
    fa_matrix,
    fusion_matrix,
    is_order_two,
    is_pointed,
    order_two_rank_table,
    rank,
    rank_with_frame,
    squares_to_identity_is_permutation,
)
from coinvariants.fusion.oracle import rank_oracle
from coinvariants.fusion.spec import matmul
from coinvariants.registry import affine_sl2, max_weight_module, min_weight_module, pointed, virasoro
from conftest import POINTED_GROUPS, VIRASORO_PAIRS


def fibonacci(k):
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def test_yang_lee_fusion_and_averaging(yang_lee):
    w = min_weight_module(yang_lee)
    order = [w, yang_lee.vacuum]
    assert fusion_matrix(yang_lee, w).permuted(order) == ((1, 1), (1, 0))
    assert averaging_matrix(yang_lee).permuted(order) == ((3, 1), (1, 2))
    assert rank(yang_lee, [], 2) == 5
    assert rank_with_frame(yang_lee, [], 0, w, w) == 1


@pytest.mark.parametrize("n", range(3, 21))
def test_yang_lee_ranks_are_fibonacci(yang_lee, n):
    w = min_weight_module(yang_lee)
    value = rank(yang_lee, [w] * n, 0)
    assert value == fibonacci(n - 1)
    if n <= 9:
        assert rank_oracle(yang_lee, [w] * n, 0) == value


@pytest.mark.parametrize("p,q", VIRASORO_PAIRS)
def test_genus_one_virasoro_counts(p, q):
    voa = virasoro(p, q)
    assert rank(voa, [voa.vacuum], 1) == (p - 1) * (q - 1) // 2


@pytest.mark.parametrize("level", range(1, 7))
def test_genus_one_sl2_counts(level):
    voa = affine_sl2(level)
    assert rank(voa, [voa.vacuum], 1) == level + 1


@pytest.mark.parametrize("name", sorted(POINTED_GROUPS))
def test_pointed_rank_law(name):
    data = POINTED_GROUPS[name]()
    voa = pointed(data)
    for n in range(6):
        for ins in itertools.combinations_with_replacement(range(data.order), n):
            expected_trivial = data.product(ins) == data.identity
            for g in range(4):
                value = rank(voa, ins, g)
                assert value == (data.order ** g if expected_trivial else 0)
                if g <= 2:
                    assert rank_oracle(voa, ins, g) == value


def test_pointed_detection():
    data = POINTED_GROUPS["Z/6"]()
    assert is_pointed(pointed(data)) == [list(r) for r in data.table]
    assert is_pointed(virasoro(2, 5)) is None


@pytest.mark.parametrize("voa", [virasoro(3, 4), virasoro(3, 5), virasoro(4, 5)], ids=lambda v: v.display_name)
def test_wmax_is_order_two(voa):
    w = max_weight_module(voa)
    assert is_order_two(voa, w)
    table = order_two_rank_table(voa, w, 8)
    for (n, s, t), value in table["framed"].items():
        assert value == (1 if s == t else 0)
    for (n,), value in table["plain"].items():
        assert value == (1 if n % 2 == 0 else 0)


@pytest.mark.parametrize("level", range(1, 6))
def test_sl2_top_module_is_order_two(level):
    voa = affine_sl2(level)
    assert is_order_two(voa, level)
    assert not is_order_two(voa, voa.vacuum)
    if level > 1:
        assert not is_order_two(voa, 1)


def test_unstable_queries(yang_lee):
    assert rank(yang_lee, [], 0) == 1
    assert rank(yang_lee, [], 1) == 2
    with pytest.raises(InstabilityError):
        rank(yang_lee, [], 0, strict_stability=True)
    with pytest.raises(InstabilityError):
        rank(yang_lee, [1, 1], 0, strict_stability=True)
    assert rank(yang_lee, [1, 1, 1], 0, strict_stability=True) == 1


def test_unstable_framed_queries(yang_lee):
    assert rank_with_frame(yang_lee, [], 0, 0, 0) == 1
    with pytest.raises(InstabilityError):
        rank_with_frame(yang_lee, [], 0, 0, 0, strict_stability=True)
    assert rank_with_frame(yang_lee, [1], 0, 1, 1, strict_stability=True) == 1
    assert rank_with_frame(yang_lee, [], 1, 1, 1, strict_stability=True) == 3


def test_bad_indices_and_genus(yang_lee):
    with pytest.raises(ModuleIndexError):
        rank(yang_lee, [2], 0)
    with pytest.raises(ModuleIndexError):
        rank_with_frame(yang_lee, [], 0, 0, 5)
    with pytest.raises(ValueError):
        fa_matrix(yang_lee, [], -1)
    with pytest.raises(ValueError):
        rank(yang_lee, [1, 1, 1, 1], -1)
    with pytest.raises(ValueError):
        rank(yang_lee, [], -2, strict_stability=True)
    with pytest.raises(ValueError):
        rank_with_frame(yang_lee, [1], -1, 0, 0)


def test_fa_matrix_tags(yang_lee):
    m = fa_matrix(yang_lee, [1, 0, 1], 2)
    assert m.genus == 2
    assert m.insertions == (0, 1, 1)
    assert fa_matrix(yang_lee, [1, 1, 0], 2) == m


def test_vacuum_insertions_do_not_change_ranks():
    voa = virasoro(3, 5)
    for ins in itertools.combinations_with_replacement(range(voa.size), 3):
        for g in range(3):
            assert rank(voa, ins + (voa.vacuum,), g) == rank(voa, ins, g)


def test_threads_agree_with_serial():
    voa = virasoro(4, 5)
    queries = [(ins, g) for ins in itertools.combinations_with_replacement(range(voa.size), 4) for g in range(3)]
    serial = [rank(voa, ins, g) for ins, g in queries]
    clear_memo()
    with ThreadPoolExecutor(max_workers=8) as pool:
        threaded = list(pool.map(lambda q: rank(voa, *q), queries))
    assert threaded == serial


# ---------------------------------------------------------------------------
# permutation characterization
# ---------------------------------------------------------------------------

def _permutation_rows(perm):
    n = len(perm)
    return tuple(tuple(1 if perm[i] == j else 0 for j in range(n)) for i in range(n))


def _random_involution(rng, n):
    points = list(range(n))
    rng.shuffle(points)
    perm = list(range(n))
    k = rng.randint(0, n // 2)
    for a, b in zip(points[0:2 * k:2], points[1:2 * k:2]):
        perm[a], perm[b] = b, a
    return perm


def test_involutive_conjugates_are_permutations():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 7)
        p = list(range(n))
        rng.shuffle(p)
        outer = _permutation_rows(p)
        inner = _permutation_rows(_random_involution(rng, n))
        conj = matmul(matmul(outer, inner), tuple(zip(*outer)))
        assert squares_to_identity_is_permutation(conj)


@pytest.mark.parametrize("rows", [
    _permutation_rows([1, 2, 0]),
    ((1, 1), (0, 1)),
    ((0, 2), (0, 0)),
    ((2,),),
])
def test_non_involutions_are_rejected(rows):
    assert not squares_to_identity_is_permutation(rows)


def test_order_two_fusion_matrices_are_permutations():
    cases = [(virasoro(3, 4), None), (virasoro(4, 5), None), (affine_sl2(2), 2)]
    for voa, w in cases:
        w = max_weight_module(voa) if w is None else w
        assert squares_to_identity_is_permutation(fusion_matrix(voa, w).entries)


# ---------------------------------------------------------------------------
# memo
# ---------------------------------------------------------------------------

def test_memo_evicts_least_recently_used(yang_lee):
    memo = _MatrixMemo(max_entries=2)
    calls = []

    def make(tag):
        def compute():
            calls.append(tag)
            return ((tag,),)
        return compute

    memo.get_or_compute(yang_lee, "scratch", 1, make(1))
    memo.get_or_compute(yang_lee, "scratch", 2, make(2))
    assert memo.get_or_compute(yang_lee, "scratch", 1, make(1)) == ((1,),)
    memo.get_or_compute(yang_lee, "scratch", 3, make(3))
    assert len(memo) == 2
    assert (yang_lee.fingerprint, "scratch", 1) in memo
    assert (yang_lee.fingerprint, "scratch", 2) not in memo
    assert calls == [1, 2, 3]
    with pytest.raises(ValueError):
        _MatrixMemo(max_entries=0)
