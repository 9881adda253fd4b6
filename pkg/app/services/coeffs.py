"""
Coefficients over F2 and F2[U1, ..., U_{N-1}], finite formal sums, and F2 linear algebra

Type                 Meaning
-------------------  ------------------------------------------------------------
Monomial             U1^a1 * U2^a2 * ... stored as sorted (index, exponent) pairs
Polynomial           set of monomials; addition is symmetric difference
LinearCombination    finite map basis key -> nonzero Polynomial
F2Matrix             sparse 0/1 matrix; rank by elimination over GF(2) with numpy

Basis keys must be hashable and mutually comparable so that every printed or
serialized sum comes out in the same order.
"""

import logging
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Any, Generic, TypeVar

import numpy as np

from app.core.exceptions import ChainComplexError, InvalidInputError
from app.core.logger import get_logger

logger = get_logger(__name__, logging.INFO)

K = TypeVar("K", bound=Hashable)
K2 = TypeVar("K2", bound=Hashable)


# ------ 1. Monomials and polynomials ------


@dataclass(frozen=True, order=True)
class Monomial:
    """A monomial in U1, U2, ...; the empty tuple is the unit."""

    exponents: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, powers: Mapping[int, int], variables: int | None = None) -> "Monomial":
        """U^powers in F2[U1..U_variables]; without `variables` only the lower bound is checked."""
        for index, exponent in powers.items():
            if index < 1:
                raise InvalidInputError(f"U-variable index must be at least 1, got {index}")
            if variables is not None and index > variables:
                raise InvalidInputError(f"U-variable index {index} exceeds the {variables} variables of the ring")
            if exponent < 0:
                raise InvalidInputError(f"Negative exponent {exponent} for U{index}")
        return cls(tuple(sorted((i, e) for i, e in powers.items() if e)))

    def __mul__(self, other: "Monomial") -> "Monomial":
        powers = dict(self.exponents)
        for index, exponent in other.exponents:
            powers[index] = powers.get(index, 0) + exponent
        return Monomial(tuple(sorted(powers.items())))

    def exponent(self, index: int) -> int:
        return dict(self.exponents).get(index, 0)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    def __str__(self) -> str:
        if not self.exponents:
            return "1"
        return "*".join(f"U{i}" if e == 1 else f"U{i}^{e}" for i, e in self.exponents)


UNIT_MONOMIAL = Monomial()


@dataclass(frozen=True)
class Polynomial:
    """An element of F2[U1, ..., U_{N-1}] as a finite set of monomials."""

    monomials: frozenset[Monomial] = frozenset()

    @classmethod
    def zero(cls) -> "Polynomial":
        return ZERO

    @classmethod
    def one(cls) -> "Polynomial":
        return ONE

    @classmethod
    def monomial(cls, m: Monomial) -> "Polynomial":
        return cls(frozenset((m,)))

    @classmethod
    def u(cls, index: int, exponent: int = 1, variables: int | None = None) -> "Polynomial":
        return cls.monomial(Monomial.of({index: exponent}, variables))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self.monomials ^ other.monomials)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.monomials or not other.monomials:
            return ZERO
        if other is ONE:
            return self
        if self is ONE:
            return other
        result: set[Monomial] = set()
        for a in self.monomials:
            for b in other.monomials:
                result ^= {a * b}
        return Polynomial(frozenset(result))

    def __bool__(self) -> bool:
        return bool(self.monomials)

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    @property
    def is_one(self) -> bool:
        return self.monomials == ONE.monomials

    def sorted_monomials(self) -> list[Monomial]:
        return sorted(self.monomials)

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        return " + ".join(str(m) for m in self.sorted_monomials())


ZERO = Polynomial()
ONE = Polynomial(frozenset((UNIT_MONOMIAL,)))


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


# ------ 2. Linear combinations ------


@total_ordering
class LinearCombination(Generic[K]):
    """
    A finite formal sum of basis keys with polynomial coefficients.

    Instances are treated as immutable; every operation returns a new value.
    Zero coefficients never appear in the stored terms.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, Polynomial] | None = None):
        self._terms: dict[K, Polynomial] = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls) -> "LinearCombination[Any]":
        return cls()

    @classmethod
    def basis(cls, key: K, coefficient: Polynomial = ONE) -> "LinearCombination[K]":
        return cls({key: coefficient})

    @classmethod
    def from_keys(cls, keys: Iterable[K]) -> "LinearCombination[K]":
        """Sum of keys with coefficient one; repeated keys cancel in pairs."""
        acc: dict[K, Polynomial] = {}
        for key in keys:
            _accumulate(acc, key, ONE)
        return cls._wrap(acc)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[K, Polynomial]]) -> "LinearCombination[K]":
        acc: dict[K, Polynomial] = {}
        for key, coefficient in terms:
            _accumulate(acc, key, coefficient)
        return cls._wrap(acc)

    @classmethod
    def _wrap(cls, acc: dict[K, Polynomial]) -> "LinearCombination[K]":
        lc: LinearCombination[K] = cls.__new__(cls)
        lc._terms = acc
        return lc

    def __add__(self, other: "LinearCombination[K]") -> "LinearCombination[K]":
        return lc_combine(self, other, ONE)

    def scale(self, coefficient: Polynomial) -> "LinearCombination[K]":
        if coefficient.is_zero:
            return LinearCombination._wrap({})
        if coefficient.is_one:
            return self
        return LinearCombination({k: v * coefficient for k, v in self._terms.items()})

    def coefficient(self, key: K) -> Polynomial:
        return self._terms.get(key, ZERO)

    def __contains__(self, key: object) -> bool:
        return key in self._terms

    def keys(self) -> list[K]:
        return sorted(self._terms)  # type: ignore[type-var]

    def items(self) -> list[tuple[K, Polynomial]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0])  # type: ignore[arg-type, return-value]

    def __iter__(self) -> Iterator[K]:
        return iter(self.keys())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return self._terms == other._terms

    def __lt__(self, other: "LinearCombination[K]") -> bool:
        return self.items() < other.items()

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def map_linear(self, f: Callable[[K], "LinearCombination[K2]"]) -> "LinearCombination[K2]":
        """Extend `f` linearly over the coefficient ring."""
        acc: dict[K2, Polynomial] = {}
        for key, coefficient in self._terms.items():
            for image_key, image_coefficient in f(key)._terms.items():
                _accumulate(acc, image_key, image_coefficient * coefficient)
        return LinearCombination._wrap(acc)

    def map_keys(self, f: Callable[[K], K2 | None]) -> "LinearCombination[K2]":
        """Apply a partial map of basis keys; keys sent to None drop out."""
        acc: dict[K2, Polynomial] = {}
        for key, coefficient in self._terms.items():
            image = f(key)
            if image is not None:
                _accumulate(acc, image, coefficient)
        return LinearCombination._wrap(acc)

    def __repr__(self) -> str:
        return f"LinearCombination({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key, coefficient in self.items():
            if coefficient.is_one:
                parts.append(str(key))
            elif len(coefficient.monomials) == 1:
                parts.append(f"{coefficient}*{key}")
            else:
                parts.append(f"({coefficient})*{key}")
        return " + ".join(parts)


def _accumulate(acc: dict[Any, Polynomial], key: Any, coefficient: Polynomial) -> None:
    if coefficient.is_zero:
        return
    total = acc.get(key, ZERO) + coefficient
    if total.is_zero:
        acc.pop(key, None)
    else:
        acc[key] = total


def lc_combine(a: LinearCombination[K], b: LinearCombination[K], scale: Polynomial) -> LinearCombination[K]:
    """Return a + scale*b with zero terms pruned."""
    acc = dict(a._terms)
    for key, coefficient in b._terms.items():
        _accumulate(acc, key, coefficient * scale)
    return LinearCombination._wrap(acc)


def lc_sum(parts: Iterable[LinearCombination[K]]) -> LinearCombination[K]:
    acc: dict[K, Polynomial] = {}
    for part in parts:
        for key, coefficient in part._terms.items():
            _accumulate(acc, key, coefficient)
    return LinearCombination._wrap(acc)


def bilinear(
    a: LinearCombination[K],
    b: LinearCombination[K2],
    f: Callable[[K, K2], "LinearCombination[Any] | None"],
) -> LinearCombination[Any]:
    """Extend a product of basis keys bilinearly; `f` may return None for zero."""
    acc: dict[Any, Polynomial] = {}
    for ka, ca in a._terms.items():
        for kb, cb in b._terms.items():
            image = f(ka, kb)
            if image is None:
                continue
            coefficient = ca * cb
            for key, c in image._terms.items():
                _accumulate(acc, key, c * coefficient)
    return LinearCombination._wrap(acc)


# ------ 3. Linear algebra over F2 ------


@dataclass(frozen=True)
class F2Matrix:
    """A rows x cols matrix over F2 stored as the set of positions holding 1."""

    rows: int
    cols: int
    entries: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for r, c in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise InvalidInputError(f"Entry ({r}, {c}) outside a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "F2Matrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        entries = frozenset((r, c) for r, row in enumerate(rows) for c, v in enumerate(row) if v % 2)
        return cls(n_rows, n_cols, entries)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, frozenset((i, i) for i in range(n)))

    def to_array(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for r, c in self.entries:
            a[r, c] = 1
        return a


def f2_rank(m: F2Matrix) -> int:
    """Rank over F2 by Gauss-Jordan elimination."""
    if m.rows == 0 or m.cols == 0 or not m.entries:
        return 0
    a = m.to_array()
    rank = 0
    for col in range(a.shape[1]):
        candidates = np.nonzero(a[rank:, col])[0]
        if candidates.size == 0:
            continue
        pivot = rank + int(candidates[0])
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        hits = np.nonzero(a[:, col])[0]
        hits = hits[hits != rank]
        if hits.size:
            a[hits] ^= a[rank]
        rank += 1
        if rank == a.shape[0]:
            break
    return rank


def _compose_is_zero(first: F2Matrix, second: F2Matrix) -> bool:
    """True when first o second vanishes over F2 (second is applied first)."""
    if first.rows == 0 or second.cols == 0 or first.cols == 0:
        return True
    product = first.to_array().astype(np.int64) @ second.to_array().astype(np.int64)
    return not np.any(product % 2)


def complex_homology_dims(boundaries: Sequence[F2Matrix]) -> list[int]:
    """
    Homology dimensions of a finite chain complex over F2.

    `boundaries[d]` is the map from degree d to degree d-1, with shape
    (dim C_{d-1}, dim C_d). Missing or empty matrices are zero maps.
    """
    for d in range(len(boundaries) - 1):
        lower, upper = boundaries[d], boundaries[d + 1]
        if lower.cols != upper.rows:
            raise InvalidInputError(
                f"Boundary shapes do not chain at degree {d}: {lower.rows}x{lower.cols} then {upper.rows}x{upper.cols}"
            )
        if not _compose_is_zero(lower, upper):
            raise ChainComplexError(f"d o d is nonzero from degree {d + 1} to degree {d - 1}")
    ranks = [f2_rank(b) for b in boundaries]
    dims = []
    for d, boundary in enumerate(boundaries):
        upper_rank = ranks[d + 1] if d + 1 < len(boundaries) else 0
        dims.append(boundary.cols - ranks[d] - upper_rank)
    return dims


def chain_complex_dims(
    graded_basis: Mapping[int, Sequence[K]],
    differential: Callable[[K], LinearCombination[K]],
) -> dict[int, int]:
    """
    Homology of a complex given by a graded basis and a degree -1 differential.

    Coefficients must be constants in F2; differential images must stay in the
    basis of the degree below.
    """
    if not graded_basis:
        return {}
    low, high = min(graded_basis), max(graded_basis)
    degrees = list(range(low, high + 1))
    index: dict[int, dict[K, int]] = {d: {key: i for i, key in enumerate(graded_basis.get(d, ()))} for d in degrees}
    boundaries = []
    for d in degrees:
        source = index[d]
        target = index.get(d - 1, {})
        entries = set()
        for key, col in source.items():
            for image, coefficient in differential(key).items():
                if not coefficient.is_one:
                    raise ChainComplexError(f"Non-constant coefficient {coefficient} in the differential of {key}")
                row = target.get(image)
                if row is None:
                    raise ChainComplexError(f"Differential of {key} leaves the basis of degree {d - 1}: {image}")
                entries.add((row, col))
        boundaries.append(F2Matrix(len(target), len(source), frozenset(entries)))
    dims = complex_homology_dims(boundaries)
    logger.debug(f"Homology over degrees {low}..{high}: {dims}")
    return dict(zip(degrees, dims, strict=True))


def lc_rank(vectors: Sequence[LinearCombination[Any]]) -> int:
    """Rank over F2 of a family of sums with constant coefficients."""
    index: dict[Any, int] = {}
    entries = set()
    for row, vector in enumerate(vectors):
        for key, coefficient in vector.items():
            if not coefficient.is_one:
                raise InvalidInputError(f"Rank needs constant coefficients, got {coefficient}")
            entries.add((row, index.setdefault(key, len(index))))
    return f2_rank(F2Matrix(len(vectors), len(index), frozenset(entries)))


def in_span(vector: LinearCombination[Any], spanning: Sequence[LinearCombination[Any]], rank: int | None = None) -> bool:
    """Whether `vector` lies in the F2 span of `spanning` (pass `rank` to reuse a known rank)."""
    base = lc_rank(spanning) if rank is None else rank
    return lc_rank([*spanning, vector]) == base
