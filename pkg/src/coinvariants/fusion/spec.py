# src/coinvariants/fusion/spec.py
"""
Core value types: VoaSpec, Insertion and FAMatrix.

All three are frozen dataclasses. Rationals are `fractions.Fraction`, matrix
entries are plain Python ints (arbitrary precision).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import sympy

from coinvariants.errors import ModuleIndexError, SpecValidationError

Tensor = Tuple[Tuple[Tuple[int, ...], ...], ...]
Rows = Tuple[Tuple[int, ...], ...]


def format_fraction(value: Fraction) -> str:
    """Serialize a rational as a decimal-free ``"num/den"`` string."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; floats and decimals are rejected."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"rational must be written as 'p/q', got {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational 'p/q' string: {text!r}") from e


# ---------------------------------------------------------------------------
# VoaSpec
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VoaSpec:
    """
    Finite fusion data of a strongly rational VOA.

    ``three_point[a][b][c]`` is rank V_{0,3}(V, {W_a, W_b, W_c}). Construction
    does not validate; call `validate_spec` (loaders and registry tests do).
    """

    labels: Tuple[str, ...]
    vacuum: int
    dual: Tuple[int, ...]
    three_point: Tensor
    weights: Tuple[Fraction, ...]
    central_charge: Fraction
    strongly_generated_degree_one: Optional[bool] = None
    name: str = field(default="", compare=False)
    factors: Optional[Tuple["VoaSpec", "VoaSpec"]] = field(default=None, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.labels)

    def S(self, a: int, b: int, c: int) -> int:
        return self.three_point[a][b][c]

    def check_index(self, i: int) -> int:
        if not isinstance(i, int) or not 0 <= i < self.size:
            raise ModuleIndexError(f"module index {i!r} out of range [0, {self.size}) for {self.display_name}")
        return i

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as e:
            raise ModuleIndexError(f"unknown module label {label!r}; known: {', '.join(self.labels)}") from e

    @property
    def display_name(self) -> str:
        return self.name or f"voa[{self.size}]"

    @cached_property
    def paper_order(self) -> Tuple[int, ...]:
        """Module indices sorted by increasing conformal weight (ties by index)."""
        return tuple(sorted(range(self.size), key=lambda i: (self.weights[i], i)))

    @cached_property
    def fingerprint(self) -> str:
        """SHA-256 over every field that affects ranks; the cache key of this spec."""
        doc = {
            "labels": list(self.labels),
            "vacuum": self.vacuum,
            "dual": list(self.dual),
            "weights": [format_fraction(w) for w in self.weights],
            "central_charge": format_fraction(self.central_charge),
            "three_point": self.three_point,
            "strongly_generated_degree_one": self.strongly_generated_degree_one,
        }
        return hashlib.sha256(json.dumps(doc, separators=(",", ":")).encode("utf-8")).hexdigest()

    def symmetric_orbits(self) -> Iterator[Tuple[int, int, int, int]]:
        """Yield (a, b, c, value) with a <= b <= c and value != 0."""
        n = self.size
        for a in range(n):
            for b in range(a, n):
                for c in range(b, n):
                    v = self.three_point[a][b][c]
                    if v:
                        yield a, b, c, v


def dense_tensor(size: int, entries: Iterable[Tuple[int, int, int, int]], *, symmetrize: bool = True) -> Tensor:
    """
    Build a dense l×l×l tensor from (a, b, c, value) entries.

    With ``symmetrize`` every permutation of each entry is filled in.
    """
    t: List[List[List[int]]] = [[[0] * size for _ in range(size)] for _ in range(size)]
    for a, b, c, v in entries:
        slots = {(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)} if symmetrize else {(a, b, c)}
        for x, y, z in slots:
            t[x][y][z] = v
    return tuple(tuple(tuple(row) for row in plane) for plane in t)


def tensor_from_rule(size: int, rule) -> Tensor:
    """Dense tensor from a callable ``rule(a, b, c) -> int``."""
    return tuple(
        tuple(tuple(int(rule(a, b, c)) for c in range(size)) for b in range(size))
        for a in range(size)
    )


def fusion_rows(spec: VoaSpec, w: int) -> Rows:
    n = spec.size
    return tuple(tuple(spec.S(w, i, spec.dual[j]) for j in range(n)) for i in range(n))


def spec_violations(spec: VoaSpec) -> List[SpecValidationError]:
    """
    Return every violated invariant of ``spec`` (empty list when valid).

    Checks shape, vacuum range, the dual involution, dual-invariant weights,
    total symmetry of S, the vacuum pairing and commutativity of the fusion
    matrices. Only the first witness of each invariant is reported.
    """
    out: List[SpecValidationError] = []
    n = spec.size
    if n < 1:
        return [SpecValidationError("shape", "a VoaSpec needs at least one module")]
    if len(spec.dual) != n or len(spec.weights) != n:
        return [SpecValidationError("shape", "labels, dual and weights must have the same length",
                                    (n, len(spec.dual), len(spec.weights)))]
    if len(spec.three_point) != n or any(len(p) != n or any(len(r) != n for r in p) for p in spec.three_point):
        return [SpecValidationError("shape", f"three_point must be a {n}x{n}x{n} tensor")]
    if len(set(spec.labels)) != n:
        out.append(SpecValidationError("labels-unique", "module labels must be distinct"))
    if not 0 <= spec.vacuum < n:
        return out + [SpecValidationError("vacuum-range", "vacuum index out of range", spec.vacuum)]

    for a in range(n):
        d = spec.dual[a]
        if not 0 <= d < n or spec.dual[d] != a:
            out.append(SpecValidationError("dual-involution", "dual must be an involution on [0, l)", a))
            return out
    for a in range(n):
        if spec.weights[a] != spec.weights[spec.dual[a]]:
            out.append(SpecValidationError("dual-weights", "a module and its dual must have the same weight",
                                           (a, spec.dual[a])))
            break

    sym = _first(
        (a, b, c)
        for a in range(n) for b in range(n) for c in range(n)
        if spec.S(a, b, c) < 0 or len({spec.S(a, b, c), spec.S(b, a, c), spec.S(a, c, b), spec.S(c, b, a)}) > 1
    )
    if sym is not None:
        out.append(SpecValidationError("symmetry", "three_point must be non-negative and totally symmetric", sym))

    v = spec.vacuum
    pairing = _first(
        (v, a, b)
        for a in range(n) for b in range(n)
        if spec.S(v, a, b) != (1 if b == spec.dual[a] else 0)
    )
    if pairing is not None:
        out.append(SpecValidationError("vacuum-pairing", "S(vacuum, a, b) must be 1 iff b = dual(a)", pairing))

    mats = [fusion_rows(spec, w) for w in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if matmul(mats[a], mats[b]) != matmul(mats[b], mats[a]):
                out.append(SpecValidationError("commutativity", "fusion matrices must commute", (a, b)))
                return out
    return out


def validate_spec(spec: VoaSpec) -> VoaSpec:
    """Raise the first invariant violation, else return ``spec``."""
    problems = spec_violations(spec)
    if problems:
        raise problems[0]
    return spec


def _first(it):
    return next(iter(it), None)


# ---------------------------------------------------------------------------
# Insertion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Insertion:
    """
    Module insertions at the marked points.

    ``points`` keeps the order (divisor queries care about it); rank queries
    only look at the multiset.
    """

    points: Tuple[int, ...] = ()

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "Insertion":
        pts: List[int] = []
        for i, c in enumerate(counts):
            if c < 0:
                raise ValueError(f"negative multiplicity {c} for module {i}")
            pts.extend([i] * c)
        return cls(tuple(pts))

    @property
    def n(self) -> int:
        return len(self.points)

    def counts(self, size: int) -> Tuple[int, ...]:
        c = [0] * size
        for p in self.points:
            c[p] += 1
        return tuple(c)

    def multiset(self) -> Tuple[int, ...]:
        return tuple(sorted(self.points))

    def restrict(self, positions: Iterable[int]) -> "Insertion":
        return Insertion(tuple(self.points[i] for i in positions))

    def repeated(self, k: int) -> "Insertion":
        return Insertion(self.points * k)

    def __add__(self, other: "Insertion | Sequence[int]") -> "Insertion":
        return Insertion(self.points + tuple(as_insertion(other).points))

    def check(self, spec: VoaSpec) -> "Insertion":
        for p in self.points:
            spec.check_index(p)
        return self


def as_insertion(ins: "Insertion | Sequence[int] | None") -> Insertion:
    if ins is None:
        return Insertion()
    if isinstance(ins, Insertion):
        return ins
    return Insertion(tuple(int(p) for p in ins))


# ---------------------------------------------------------------------------
# FAMatrix
# ---------------------------------------------------------------------------

def identity_rows(n: int) -> Rows:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(a: Rows, b: Rows) -> Rows:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matpow(a: Rows, e: int) -> Rows:
    """Power by repeated squaring; ``e >= 0``."""
    if e < 0:
        raise ValueError("negative matrix power")
    result = identity_rows(len(a))
    base = a
    while e:
        if e & 1:
            result = matmul(result, base)
        e >>= 1
        if e:
            base = matmul(base, base)
    return result


def kron_rows(a: Rows, b: Rows) -> Rows:
    """Kronecker product; row (i, k) of the result is ``i * len(b) + k``."""
    product = sympy.Matrix(sympy.kronecker_product(sympy.Matrix(a), sympy.Matrix(b)))
    return tuple(tuple(int(x) for x in row) for row in product.tolist())


@dataclass(frozen=True)
class FAMatrix:
    """
    Square non-negative integer matrix tagged with the insertion multiset
    (sorted module indices) and genus whose ranks it holds.
    """

    entries: Rows
    genus: int = 0
    insertions: Tuple[int, ...] = ()

    @classmethod
    def identity(cls, n: int) -> "FAMatrix":
        return cls(identity_rows(n))

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "FAMatrix") -> "FAMatrix":
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")
        return FAMatrix(
            matmul(self.entries, other.entries),
            genus=self.genus + other.genus,
            insertions=tuple(sorted(self.insertions + other.insertions)),
        )

    def __pow__(self, e: int) -> "FAMatrix":
        return FAMatrix(
            matpow(self.entries, e),
            genus=self.genus * e,
            insertions=tuple(sorted(self.insertions * e)),
        )

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.size))

    def kron(self, other: "FAMatrix") -> "FAMatrix":
        """
        Kronecker product of two FA-matrices of the same genus.

        The result keeps the genus and carries no insertion tag: two factor
        multisets do not determine which pairs W_a ⊗ M_x were inserted.
        """
        if self.genus != other.genus:
            raise ValueError(f"genus mismatch: {self.genus} vs {other.genus}")
        return FAMatrix(kron_rows(self.entries, other.entries), genus=self.genus)

    def permuted(self, order: Sequence[int]) -> Rows:
        """Rows and columns re-indexed so that position k holds module ``order[k]``."""
        return tuple(tuple(self.entries[a][b] for b in order) for a in order)

    def to_lists(self) -> List[List[int]]:
        return [list(r) for r in self.entries]

    def is_permutation(self) -> bool:
        return is_permutation_matrix(self.entries)


def is_permutation_matrix(rows: Rows) -> bool:
    n = len(rows)
    if any(len(r) != n for r in rows):
        return False
    if any(x not in (0, 1) for r in rows for x in r):
        return False
    return all(sum(r) == 1 for r in rows) and all(sum(c) == 1 for c in zip(*rows))
