# src/coinvariants/cli/query.py
"""
Insertion and frame expressions.

    "Wmin^4,V^2"     multiset: comma-separated label^count terms
    "[W1,W2,W1]"     ordered list of labels (divisor queries)

Labels resolve against the selected spec; ``V``, ``Wmin`` and ``Wmax`` are
aliases for the vacuum and the modules of smallest / largest weight.
"""

from __future__ import annotations

import re
from typing import List, Optional, Tuple

from coinvariants.errors import ModuleIndexError, QueryError
from coinvariants.fusion.spec import Insertion, VoaSpec
from coinvariants.registry.virasoro import max_weight_module, min_weight_module

_COUNT = re.compile(r"^\d+$")


def resolve_label(voa: VoaSpec, token: str) -> int:
    label = token.strip()
    if not label:
        raise QueryError("empty module label")
    if label in voa.labels:
        return voa.labels.index(label)
    if label == "V":
        return voa.vacuum
    if label == "Wmin":
        return min_weight_module(voa)
    if label == "Wmax":
        return max_weight_module(voa)
    try:
        return voa.index(label)
    except ModuleIndexError as e:
        raise QueryError(str(e)) from e


def _split_terms(body: str) -> List[str]:
    return [t for t in (s.strip() for s in body.split(",")) if t]


def parse_insertion(voa: VoaSpec, expr: Optional[str]) -> Insertion:
    """Parse either form; an empty expression is the empty insertion."""
    text = (expr or "").strip()
    if not text:
        return Insertion()
    if text.startswith("["):
        if not text.endswith("]"):
            raise QueryError(f"unterminated ordered insertion {expr!r}")
        return Insertion(tuple(resolve_label(voa, t) for t in _split_terms(text[1:-1])))
    points: List[int] = []
    for term in _split_terms(text):
        label, caret, count = term.rpartition("^") if "^" in term else (term, "", "1")
        if caret and not _COUNT.match(count.strip()):
            raise QueryError(f"bad multiplicity in {term!r}; expected label^count")
        points.extend([resolve_label(voa, label)] * int(count))
    return Insertion(tuple(sorted(points)))


def parse_frame(voa: VoaSpec, expr: Optional[str]) -> Optional[Tuple[int, int]]:
    """"i,j" with module labels; None when no frame was given."""
    if not expr:
        return None
    terms = _split_terms(expr)
    if len(terms) != 2:
        raise QueryError(f"frame must be two labels 'i,j', got {expr!r}")
    return resolve_label(voa, terms[0]), resolve_label(voa, terms[1])


def format_insertion(voa: VoaSpec, ins: Insertion) -> List[str]:
    return [voa.labels[p] for p in ins.points]
