# src/coinvariants/registry/io.py
"""
JSON documents for VoaSpec and PointedData.

The pydantic models mirror the wire format exactly; conversion to the frozen
domain dataclasses happens here and every loaded spec is validated.

VoaSpec:
    {"labels": [str], "vacuum": int, "dual": [int], "weights": ["p/q"],
     "central_charge": "p/q", "three_point": [[a, b, c, value]],
     "strongly_generated_degree_one": bool | null}

``three_point`` lists each symmetric orbit once (a <= b <= c, value != 0).

PointedData:
    {"labels": [str], "table": [[int]], "weights": ["p/q"],
     "central_charge": "p/q", "strongly_generated_degree_one": bool | null}
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Optional

import pydantic

from coinvariants.errors import SpecValidationError
from coinvariants.fusion.spec import VoaSpec, dense_tensor, format_fraction, parse_fraction, validate_spec
from coinvariants.registry.pointed import PointedData


def _rational(value: str) -> str:
    parse_fraction(value)
    return value


class VoaSpecDocument(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(extra="forbid")

    labels: List[str] = pydantic.Field(description="Display names of the irreducible modules", min_length=1)
    vacuum: int = pydantic.Field(description="Index of the VOA itself among the modules")
    dual: List[int] = pydantic.Field(description="Contragredient involution on module indices")
    weights: List[str] = pydantic.Field(description="Conformal weights as 'p/q' strings")
    central_charge: str = pydantic.Field(description="Central charge as a 'p/q' string")
    three_point: List[List[int]] = pydantic.Field(
        description="Entries [a, b, c, value] of the symmetric three-point tensor, one per orbit"
    )
    strongly_generated_degree_one: Optional[bool] = None

    @pydantic.field_validator("weights")
    @classmethod
    def _check_weights(cls, v: List[str]) -> List[str]:
        return [_rational(w) for w in v]

    @pydantic.field_validator("central_charge")
    @classmethod
    def _check_central_charge(cls, v: str) -> str:
        return _rational(v)

    @pydantic.field_validator("three_point")
    @classmethod
    def _check_entries(cls, v: List[List[int]]) -> List[List[int]]:
        for entry in v:
            if len(entry) != 4:
                raise ValueError(f"three_point entries are [a, b, c, value], got {entry}")
        return v


class PointedDocument(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(extra="forbid")

    labels: List[str] = pydantic.Field(description="Group element names", min_length=1)
    table: List[List[int]] = pydantic.Field(description="table[a][b] is the index of a·b")
    weights: List[str] = pydantic.Field(description="Conformal weight of each element as 'p/q'")
    central_charge: str = pydantic.Field(description="Central charge as a 'p/q' string")
    strongly_generated_degree_one: Optional[bool] = None

    @pydantic.field_validator("weights")
    @classmethod
    def _check_weights(cls, v: List[str]) -> List[str]:
        return [_rational(w) for w in v]

    @pydantic.field_validator("central_charge")
    @classmethod
    def _check_central_charge(cls, v: str) -> str:
        return _rational(v)


def _parse(model: type[pydantic.BaseModel], text: str, what: str) -> pydantic.BaseModel:
    try:
        return model.model_validate_json(text)
    except pydantic.ValidationError as e:
        raise SpecValidationError("parse", f"malformed {what} document: {e.errors()[0]['msg']}",
                                  e.errors()[0].get("loc")) from e


# ---------------------------------------------------------------------------
# VoaSpec
# ---------------------------------------------------------------------------

def spec_to_document(voa: VoaSpec) -> VoaSpecDocument:
    return VoaSpecDocument(
        labels=list(voa.labels),
        vacuum=voa.vacuum,
        dual=list(voa.dual),
        weights=[format_fraction(w) for w in voa.weights],
        central_charge=format_fraction(voa.central_charge),
        three_point=[[a, b, c, v] for a, b, c, v in voa.symmetric_orbits()],
        strongly_generated_degree_one=voa.strongly_generated_degree_one,
    )


def spec_from_document(doc: VoaSpecDocument, *, name: str = "") -> VoaSpec:
    """Build and validate; the first violated invariant is raised."""
    n = len(doc.labels)
    for a, b, c, value in doc.three_point:
        if not all(0 <= i < n for i in (a, b, c)) or value < 0:
            raise SpecValidationError("shape", f"three_point entry out of range for {n} modules", [a, b, c, value])
    spec = VoaSpec(
        labels=tuple(doc.labels),
        vacuum=doc.vacuum,
        dual=tuple(doc.dual),
        three_point=dense_tensor(n, (tuple(e) for e in doc.three_point)),
        weights=tuple(parse_fraction(w) for w in doc.weights),
        central_charge=parse_fraction(doc.central_charge),
        strongly_generated_degree_one=doc.strongly_generated_degree_one,
        name=name,
    )
    return validate_spec(spec)


def save_spec(voa: VoaSpec) -> str:
    """Canonical JSON text (orbits sorted, rationals reduced)."""
    return spec_to_document(voa).model_dump_json(indent=2)


def load_spec(text: str, *, name: str = "") -> VoaSpec:
    doc = _parse(VoaSpecDocument, text, "VoaSpec")
    return spec_from_document(doc, name=name)


def load_spec_file(path: str | Path) -> VoaSpec:
    p = Path(path).expanduser()
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise SpecValidationError("parse", f"cannot read spec file {p}: {e.strerror}") from e
    return load_spec(text, name=f"spec:{p.name}")


# ---------------------------------------------------------------------------
# PointedData
# ---------------------------------------------------------------------------

def pointed_to_document(data: PointedData) -> PointedDocument:
    return PointedDocument(
        labels=list(data.labels),
        table=[list(r) for r in data.table],
        weights=[format_fraction(w) for w in data.weights],
        central_charge=format_fraction(data.central_charge),
        strongly_generated_degree_one=data.strongly_generated_degree_one,
    )


def save_pointed(data: PointedData) -> str:
    return pointed_to_document(data).model_dump_json(indent=2)


def load_pointed(text: str, *, name: str = "") -> PointedData:
    doc = _parse(PointedDocument, text, "pointed data")
    return PointedData(
        labels=tuple(doc.labels),
        table=tuple(tuple(r) for r in doc.table),
        weights=tuple(parse_fraction(w) for w in doc.weights),
        central_charge=parse_fraction(doc.central_charge),
        strongly_generated_degree_one=doc.strongly_generated_degree_one,
        name=name,
    )


def load_pointed_file(path: str | Path) -> PointedData:
    p = Path(path).expanduser()
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise SpecValidationError("parse", f"cannot read pointed data file {p}: {e.strerror}") from e
    return load_pointed(text, name=f"pointed:{p.name}")
