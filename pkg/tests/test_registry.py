import itertools
from fractions import Fraction

import pytest

from coinvariants.errors import DomainError, SelectorError, SpecValidationError
from coinvariants.fusion.engine import fusion_matrix
from coinvariants.registry import (
    PointedData,
    affine_sl2,
    boundary_fusion_closed_form,
    cyclic_group,
    holomorphic,
    max_weight_module,
    min_weight_module,
    pointed,
    pointed_data_from_spec,
    resolve,
    resolve_pointed,
    root_lattice,
    save_pointed,
    tensor,
    virasoro,
)
from coinvariants.registry.affine import fusion_by_band, fusion_by_half_sum
from coinvariants.registry.virasoro import central_charge, conformal_weight
from conftest import z2, z2xz2, z3

# Fusion matrices of V_{2,2t+1} in increasing-weight order, one list per t, one matrix per W_k.
BOUNDARY_TABLES = {
    1: [[[1]]],
    2: [
        [[1, 1], [1, 0]],
        [[1, 0], [0, 1]],
    ],
    3: [
        [[1, 1, 1], [1, 1, 0], [1, 0, 0]],
        [[1, 1, 0], [1, 0, 1], [0, 1, 0]],
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    ],
    4: [
        [[1, 1, 1, 1], [1, 1, 1, 0], [1, 1, 0, 0], [1, 0, 0, 0]],
        [[1, 1, 1, 0], [1, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 0]],
        [[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]],
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    ],
}

SL2_TABLES = {
    1: [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
    ],
    2: [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 1], [0, 1, 0]],
        [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
    ],
    3: [
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[0, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]],
        [[0, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 0]],
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    ],
}


def _as_tuples(rows):
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# virasoro
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("t", sorted(BOUNDARY_TABLES))
def test_boundary_virasoro_tables(t):
    voa = virasoro(2, 2 * t + 1)
    order = voa.paper_order
    for k, expected in enumerate(BOUNDARY_TABLES[t], start=1):
        assert fusion_matrix(voa, order[k - 1]).permuted(order) == _as_tuples(expected)
        assert boundary_fusion_closed_form(t, k) == _as_tuples(expected)


@pytest.mark.parametrize("t", range(1, 9))
def test_boundary_closed_form_matches_fusion_rule(t):
    voa = virasoro(2, 2 * t + 1)
    order = voa.paper_order
    assert voa.size == t
    assert order[-1] == voa.vacuum
    for k in range(1, t + 1):
        assert fusion_matrix(voa, order[k - 1]).permuted(order) == boundary_fusion_closed_form(t, k)


def test_boundary_closed_form_domain():
    with pytest.raises(DomainError):
        boundary_fusion_closed_form(3, 4)
    with pytest.raises(DomainError):
        boundary_fusion_closed_form(0, 1)


def test_yang_lee_data(yang_lee):
    assert yang_lee.labels == ("V", "W1_2")
    assert yang_lee.vacuum == 0
    assert yang_lee.weights == (0, Fraction(-1, 5))
    assert yang_lee.central_charge == Fraction(-22, 5)
    assert min_weight_module(yang_lee) == 1
    assert max_weight_module(yang_lee) == 0


def test_ising_data(ising):
    assert ising.size == 3
    assert ising.central_charge == Fraction(1, 2)
    assert sorted(ising.weights) == [0, Fraction(1, 16), Fraction(1, 2)]
    assert ising.weights[max_weight_module(ising)] == Fraction(1, 2)


@pytest.mark.parametrize("p,q", [(2, 5), (2, 7), (3, 4), (3, 5), (4, 5), (5, 6)])
def test_virasoro_module_count_and_symmetry(p, q):
    voa = virasoro(p, q)
    assert voa.size == (p - 1) * (q - 1) // 2
    assert voa.weights[voa.vacuum] == 0
    assert voa.dual == tuple(range(voa.size))
    assert conformal_weight(p, q, 1, 1) == 0
    assert conformal_weight(p, q, p - 1, q - 1) == 0
    assert central_charge(p, q) == central_charge(q, p)


def _relabeling(a, b):
    """Index map a -> b preserving the vacuum, duals, weights and S, or None."""
    if a.size != b.size:
        return None
    targets = [[j for j in range(b.size) if b.weights[j] == a.weights[i]] for i in range(a.size)]
    triples = list(itertools.product(range(a.size), repeat=3))
    for perm in itertools.product(*targets):
        if len(set(perm)) != a.size or perm[a.vacuum] != b.vacuum:
            continue
        if any(perm[a.dual[i]] != b.dual[perm[i]] for i in range(a.size)):
            continue
        if all(a.S(x, y, z) == b.S(perm[x], perm[y], perm[z]) for x, y, z in triples):
            return perm
    return None


@pytest.mark.parametrize("p,q", [(2, 5), (2, 7), (3, 4), (3, 5), (4, 5), (5, 6)])
def test_swapped_virasoro_parameters_give_isomorphic_data(p, q):
    a, b = virasoro(p, q), virasoro(q, p)
    assert a.central_charge == b.central_charge
    perm = _relabeling(a, b)
    assert perm is not None
    assert sorted(a.weights) == sorted(b.weights)


@pytest.mark.parametrize("p,q", [(1, 3), (2, 4), (3, 3), (4, 6)])
def test_virasoro_rejects_bad_parameters(p, q):
    with pytest.raises(DomainError):
        virasoro(p, q)


# ---------------------------------------------------------------------------
# affine sl2
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("level", sorted(SL2_TABLES))
def test_sl2_tables(level):
    voa = affine_sl2(level)
    assert voa.paper_order == tuple(range(level + 1))
    for p, expected in enumerate(SL2_TABLES[level]):
        assert fusion_matrix(voa, p).entries == _as_tuples(expected)


@pytest.mark.parametrize("level", range(1, 13))
def test_sl2_closed_forms_agree(level):
    voa = affine_sl2(level)
    for p in range(level + 1):
        assert fusion_by_band(level, p) == fusion_by_half_sum(level, p) == fusion_matrix(voa, p).entries


def test_sl2_level_one_data():
    voa = affine_sl2(1)
    assert voa.weights == (0, Fraction(1, 4))
    assert voa.central_charge == 1
    assert voa.labels == ("V", "W1")


def test_sl2_rejects_level_zero():
    with pytest.raises(DomainError):
        affine_sl2(0)


# ---------------------------------------------------------------------------
# pointed and lattice data
# ---------------------------------------------------------------------------

def test_cyclic_group_labels_and_inverse():
    data = z3()
    assert data.labels == ("e", "x", "x2")
    assert data.identity == 0
    assert data.inverse == (0, 2, 1)
    assert data.product([1, 1, 1]) == 0
    assert data.a_average == Fraction(2, 9)


def test_pointed_spec_is_recovered():
    data = z2xz2()
    voa = pointed(data)
    again = pointed_data_from_spec(voa)
    assert again.table == data.table
    assert pointed_data_from_spec(virasoro(2, 5)) is None


def test_pointed_data_validation():
    with pytest.raises(SpecValidationError) as e:
        cyclic_group(3, [0, Fraction(1, 3), Fraction(2, 3)], 2)
    assert e.value.invariant == "dual-weights"
    with pytest.raises(SpecValidationError) as e:
        PointedData(labels=("e", "a"), table=((0, 1), (1, 1)), weights=(0, 0), central_charge=Fraction(1))
    assert e.value.invariant == "group-inverse"


def test_product_group_flag_and_weights():
    data = z2xz2()
    assert data.order == 4
    assert data.labels[3] == "x*x"
    assert data.weights[3] == 1
    assert data.central_charge == 1
    assert data.strongly_generated_degree_one is None


@pytest.mark.parametrize("kind,rank,weights", [
    ("A", 1, [0, Fraction(1, 4)]),
    ("A", 2, [0, Fraction(1, 3), Fraction(1, 3)]),
    ("A", 3, [0, Fraction(3, 8), Fraction(1, 2), Fraction(3, 8)]),
    ("A", 4, [0, Fraction(2, 5), Fraction(3, 5), Fraction(3, 5), Fraction(2, 5)]),
    ("D", 4, [0, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)]),
    ("E", 6, [0, Fraction(2, 3), Fraction(2, 3)]),
    ("E", 7, [0, Fraction(3, 4)]),
    ("E", 8, [0]),
])
def test_root_lattice_discriminant_data(kind, rank, weights):
    data = root_lattice(kind, rank)
    assert sorted(data.weights) == sorted(weights)
    assert data.labels[0] == "e"
    assert data.central_charge == rank
    assert data.strongly_generated_degree_one is True


def test_root_lattice_labels_are_fundamental_weights():
    assert root_lattice("A", 3).labels == ("e", "w1", "w2", "w3")
    assert root_lattice("D", 4).labels == ("e", "w1", "w3", "w4")


def test_root_lattice_rejects_unknown_types():
    with pytest.raises(DomainError):
        root_lattice("B", 3)
    with pytest.raises(DomainError):
        root_lattice("E", 9)


# ---------------------------------------------------------------------------
# tensor products and selectors
# ---------------------------------------------------------------------------

def test_tensor_layout(yang_lee):
    voa = tensor(yang_lee, affine_sl2(1))
    assert voa.size == 4
    assert voa.labels == ("V*V", "V*W1", "W1_2*V", "W1_2*W1")
    assert voa.weights[3] == Fraction(-1, 5) + Fraction(1, 4)
    assert voa.central_charge == Fraction(-22, 5) + 1
    assert voa.factors[0] is yang_lee


@pytest.mark.parametrize("selector,size", [
    ("virasoro:2,5", 2),
    ("sl2:3", 4),
    ("holomorphic:8", 1),
    ("lattice:A2", 3),
    ("lattice:e8", 1),
    ("tensor:(virasoro:2,5,sl2:1)", 4),
    ("tensor:(sl2:1,tensor:(sl2:1,virasoro:3,4))", 12),
])
def test_resolve_selectors(selector, size):
    assert resolve(selector).size == size


@pytest.mark.parametrize("selector", [
    "nope:1",
    "virasoro:2",
    "virasoro:2,4",
    "sl2:x",
    "lattice:B3",
    "holomorphic:0.5",
    "tensor:virasoro:2,5",
])
def test_bad_selectors(selector):
    with pytest.raises(SelectorError):
        resolve(selector)


def test_pointed_file_selector(tmp_path):
    path = tmp_path / "z2.json"
    path.write_text(save_pointed(z2()), encoding="utf-8")
    voa = resolve(f"pointed:{path}")
    assert voa.labels == ("e", "x")
    assert resolve_pointed(f"pointed:{path}").a_max == Fraction(1, 2)


def test_resolve_pointed_rejects_non_pointed():
    assert resolve_pointed("holomorphic:24").order == 1
    assert resolve_pointed("lattice:D4").order == 4
    with pytest.raises(SelectorError):
        resolve_pointed("sl2:2")


def test_holomorphic_is_trivial():
    voa = holomorphic(24)
    assert voa.size == 1
    assert voa.central_charge == 24
