# src/coinvariants/errors.py
"""
Exception hierarchy shared by every sub-package.

The CLI maps these onto exit codes (see `coinvariants.main`).
"""

from __future__ import annotations

from typing import Any, Optional


class CoinvariantsError(Exception):
    """Base class for all errors raised by this package."""


class SpecValidationError(CoinvariantsError, ValueError):
    """
    A VoaSpec (or pointed data) violates one of its invariants.

    Attributes
    ----------
    invariant:
        Stable name of the violated invariant, e.g. ``"vacuum-pairing"``.
    witness:
        The offending indices or values, when there is one.
    """

    def __init__(self, invariant: str, message: str, witness: Optional[Any] = None) -> None:
        self.invariant = invariant
        self.witness = witness
        detail = f" (witness: {witness!r})" if witness is not None else ""
        super().__init__(f"[{invariant}] {message}{detail}")


class ModuleIndexError(CoinvariantsError, IndexError):
    """A module index is outside [0, l)."""


class DomainError(CoinvariantsError, ValueError):
    """The inputs are well-formed but outside the domain of the computation."""


class InstabilityError(DomainError):
    """2g - 2 + n <= 0 where a stable (g, n) is required."""


class OracleDisagreementError(CoinvariantsError, RuntimeError):
    """The caterpillar and balanced-tree state sums returned different values."""


class SelectorError(CoinvariantsError, ValueError):
    """A VOA selector string could not be resolved."""


class QueryError(CoinvariantsError, ValueError):
    """A CLI query (insertion expression, label, frame) is malformed."""
