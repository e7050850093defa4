from fractions import Fraction

import pytest

from coinvariants.db import cache
from coinvariants.fusion.engine import clear_memo
from coinvariants.registry import (
    affine_sl2,
    cyclic_group,
    pointed,
    product_group,
    root_lattice,
    tensor,
    virasoro,
)

VIRASORO_PAIRS = [(2, 5), (2, 7), (3, 4), (3, 5), (4, 5)]


@pytest.fixture(autouse=True)
def isolated_cache(monkeypatch):
    """No test touches a real cache directory or sees another test's memo."""
    monkeypatch.delenv(cache.CACHE_DIR_ENV_VAR, raising=False)
    cache._configured_app_name.cache_clear()
    clear_memo()
    yield
    clear_memo()


def z2(weight=Fraction(1, 2), c=Fraction(1, 2)):
    return cyclic_group(2, [0, weight], c)


def z3():
    return cyclic_group(3, [0, Fraction(1, 3), Fraction(1, 3)], 2)


def z4():
    return cyclic_group(4, [0, Fraction(3, 8), Fraction(1, 2), Fraction(3, 8)], 3)


def z6():
    return cyclic_group(6, [0, Fraction(5, 12), Fraction(1, 3), Fraction(3, 4), Fraction(1, 3), Fraction(5, 12)], 5)


def z2xz2():
    return product_group(z2(), z2())


POINTED_GROUPS = {"Z/2": z2, "Z/3": z3, "Z/4": z4, "Z/2xZ/2": z2xz2, "Z/6": z6}


def builtin_specs():
    specs = [virasoro(p, q) for p, q in VIRASORO_PAIRS]
    specs += [affine_sl2(level) for level in (1, 2, 3)]
    specs += [pointed(z3()), pointed(root_lattice("D", 4))]
    specs.append(tensor(virasoro(2, 5), affine_sl2(1)))
    return specs


@pytest.fixture
def yang_lee():
    return virasoro(2, 5)


@pytest.fixture
def ising():
    return virasoro(3, 4)
