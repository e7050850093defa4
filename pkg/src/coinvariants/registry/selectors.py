# src/coinvariants/registry/selectors.py
"""
Resolve selector strings to VoaSpecs.

    virasoro:p,q       discrete-series Virasoro V_{p,q}
    sl2:l              affine sl₂ at level l
    pointed:<file>     pointed VOA from a group-data JSON file
    spec:<file>        full VoaSpec JSON file
    tensor:(A,B)       tensor product of two selectors
    holomorphic:c      holomorphic VOA of central charge c
    lattice:A4         root-lattice VOA (A_r, D_r, E6, E7, E8)
"""

from __future__ import annotations

import logging
import re
from typing import Callable, Dict, List, Tuple

from coinvariants.errors import DomainError, SelectorError
from coinvariants.fusion.spec import VoaSpec, parse_fraction
from coinvariants.registry.affine import affine_sl2
from coinvariants.registry.io import load_pointed_file, load_spec_file
from coinvariants.registry.lattice import root_lattice
from coinvariants.registry.pointed import PointedData, holomorphic, pointed, pointed_data_from_spec
from coinvariants.registry.tensor import tensor
from coinvariants.registry.virasoro import virasoro

logger = logging.getLogger(__name__)

_INT = re.compile(r"^\s*-?\d+\s*$")
_LATTICE = re.compile(r"^\s*([ADEade])\s*(\d+)\s*$")


def _ints(arg: str, count: int, selector: str) -> List[int]:
    parts = arg.split(",")
    if len(parts) != count or not all(_INT.match(p) for p in parts):
        raise SelectorError(f"{selector!r}: expected {count} comma-separated integers")
    return [int(p) for p in parts]


def _virasoro(arg: str) -> VoaSpec:
    p, q = _ints(arg, 2, f"virasoro:{arg}")
    return virasoro(p, q)


def _sl2(arg: str) -> VoaSpec:
    (level,) = _ints(arg, 1, f"sl2:{arg}")
    return affine_sl2(level)


def _holomorphic(arg: str) -> VoaSpec:
    try:
        c = parse_fraction(arg)
    except ValueError as e:
        raise SelectorError(f"holomorphic:{arg}: {e}") from e
    return holomorphic(c)


def _lattice_data(arg: str) -> PointedData:
    m = _LATTICE.match(arg)
    if not m:
        raise SelectorError(f"lattice:{arg}: expected a root system such as A4, D4 or E8")
    try:
        return root_lattice(m.group(1), int(m.group(2)))
    except DomainError as e:
        raise SelectorError(f"lattice:{arg}: {e}") from e


def _split_pair(arg: str) -> Tuple[str, str]:
    """Split "(A,B)" at the top-level comma after which a known family prefix starts."""
    body = arg.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise SelectorError(f"tensor:{arg}: expected tensor:(A,B)")
    body = body[1:-1]
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            right = body[i + 1:].strip()
            if right.split(":", 1)[0] in FAMILIES:
                return body[:i].strip(), right
    raise SelectorError(f"tensor:{arg}: cannot find the second factor")


def _tensor(arg: str) -> VoaSpec:
    left, right = _split_pair(arg)
    return tensor(resolve(left), resolve(right))


FAMILIES: Dict[str, Callable[[str], VoaSpec]] = {
    "virasoro": _virasoro,
    "sl2": _sl2,
    "pointed": lambda arg: pointed(load_pointed_file(arg)),
    "spec": load_spec_file,
    "tensor": _tensor,
    "holomorphic": _holomorphic,
    "lattice": lambda arg: pointed(_lattice_data(arg)),
}


def resolve(selector: str) -> VoaSpec:
    """VoaSpec for a selector string; unknown families raise SelectorError."""
    family, sep, arg = selector.strip().partition(":")
    if not sep or family not in FAMILIES:
        raise SelectorError(f"unknown VOA selector {selector!r}; families: {', '.join(FAMILIES)}")
    try:
        spec = FAMILIES[family](arg)
    except DomainError as e:
        raise SelectorError(f"{selector}: {e}") from e
    logger.debug("resolved %s to %d modules", selector, spec.size)
    return spec


def resolve_pointed(selector: str) -> PointedData:
    """Group data behind a pointed selector (pointed:, lattice:, holomorphic:, or any pointed spec)."""
    family, _, arg = selector.strip().partition(":")
    if family == "pointed":
        return load_pointed_file(arg)
    if family == "lattice":
        return _lattice_data(arg)
    data = pointed_data_from_spec(resolve(selector))
    if data is None:
        raise SelectorError(f"{selector} is not a pointed VOA")
    return data
