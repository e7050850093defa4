# src/coinvariants/genfunc/closed_forms.py
"""Closed-form generating functions: the V_{2,2l+1} continued fractions and W_max series."""

from __future__ import annotations

from typing import Sequence

from coinvariants.errors import DomainError
from coinvariants.fusion.engine import is_order_two
from coinvariants.fusion.spec import VoaSpec
from coinvariants.genfunc.rational import RationalFunction
from coinvariants.registry.virasoro import max_weight_module


def negative_continued_fraction(layers: Sequence[RationalFunction]) -> RationalFunction:
    """1 / (layers[0] - 1 / (layers[1] - ... - 1 / layers[-1])), folded bottom-up."""
    if not layers:
        raise DomainError("a continued fraction needs at least one layer")
    value = layers[-1]
    for layer in reversed(layers[:-1]):
        value = layer - value.reciprocal()
    return value.reciprocal()


def virasoro_boundary_cf(l: int) -> RationalFunction:
    """
    l-layer continued fraction for V_{2,2l+1} with step W_min: every layer is
    -z except the bottom one, -z + 1 for odd l and -z - 1 for even l.
    l = 1 gives 1/(1 - z), l = 2 gives (1 + z)/(1 - z - z²).
    """
    if l < 1:
        raise DomainError(f"virasoro_boundary_cf needs l >= 1, got {l}")
    minus_z = -RationalFunction.variable()
    bottom = minus_z + (1 if l % 2 else -1)
    return negative_continued_fraction([minus_z] * (l - 1) + [bottom])


def wmax_generating_function(voa: VoaSpec) -> RationalFunction:
    """
    Σ_n rank V_{0,n+5}(W_max^{n+3}, V, V) z^n: 1/(1 - z) when W_max is the
    vacuum, z/(1 - z²) when W_max is of order two.
    """
    w = max_weight_module(voa)
    if w == voa.vacuum:
        return RationalFunction.make([1], [1, -1])
    if is_order_two(voa, w):
        return RationalFunction.make([0, 1], [1, 0, -1])
    raise DomainError(f"W_max of {voa.display_name} is neither the vacuum nor of order two")
