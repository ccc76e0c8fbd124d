"""Exact rational matrices, index sets, and fraction-free determinants.

Every public function uses 1-based row/column numbering.  Entries are
:class:`fractions.Fraction`, which is kept in lowest terms with a positive
denominator after every operation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Iterator, Sequence, Union

from .errors import ConsistencyError, InvalidIndex, ParseError, ShapeError

Rational = Fraction

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (``q > 0``) into a canonical Fraction."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ParseError(f"malformed rational {text!r}")
    num, den = match.group(1), match.group(2)
    if den is None:
        return Fraction(int(num))
    if int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den))


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"matrix entries must be int, Fraction or rational strings, not {type(x).__name__}")
    return Fraction(x)


class ExactMatrix:
    """Immutable dense matrix over the rationals.

    ``A[i, j]`` reads entry (i, j) with 1-based indices.  ``A.data`` is the
    0-based tuple-of-tuples storage.
    """

    __slots__ = ("data", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(_as_fraction(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ShapeError("matrix must have at least one row and one column")
        width = len(data[0])
        for r, row in enumerate(data, start=1):
            if len(row) != width:
                raise ShapeError(f"ragged matrix: row {r} has {len(row)} entries, expected {width}")
        self.data = data
        self.nrows = len(data)
        self.ncols = width
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int) -> "ExactMatrix":
        return cls([[0] * n for _ in range(m)])

    @classmethod
    def from_function(cls, m: int, n: int, f) -> "ExactMatrix":
        """Build ``[f(i, j)]`` over 1-based ``i <= m``, ``j <= n``."""
        return cls([[f(i, j) for j in range(1, n + 1)] for i in range(1, m + 1)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.data))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (1 <= i <= self.nrows and 1 <= j <= self.ncols):
            raise InvalidIndex(f"entry ({i}, {j}) outside a {self.nrows}x{self.ncols} matrix")
        return self.data[i - 1][j - 1]

    def row(self, i: int) -> tuple[Fraction, ...]:
        if not 1 <= i <= self.nrows:
            raise InvalidIndex(f"row {i} outside 1..{self.nrows}")
        return self.data[i - 1]

    def entries(self) -> Iterator[Fraction]:
        for row in self.data:
            yield from row

    def replace(self, i: int, j: int, value) -> "ExactMatrix":
        """Copy with entry (i, j) set to ``value``."""
        self[i, j]
        rows = [list(r) for r in self.data]
        rows[i - 1][j - 1] = value
        return ExactMatrix(rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.data == other.data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.data)
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(x) for x in row) + "]" for row in self.data)
        return f"ExactMatrix([{body}])"

    def __str__(self) -> str:
        cells = [[format_rational(x) for x in row] for row in self.data]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return ExactMatrix([a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return ExactMatrix([a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data))

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([-a for a in r] for r in self.data)

    def scale(self, c) -> "ExactMatrix":
        c = _as_fraction(c)
        return ExactMatrix([c * a for a in r] for r in self.data)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.data))
        return ExactMatrix([sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.data)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries())

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(x) for x in row] for row in self.data]


MatrixLike = Union[ExactMatrix, Sequence[Sequence]]


def as_matrix(A: MatrixLike) -> ExactMatrix:
    return A if isinstance(A, ExactMatrix) else ExactMatrix(A)


@dataclass(frozen=True)
class IndexSet:
    """Strictly increasing subset of ``{1, ..., bound}``."""

    indices: tuple[int, ...]
    bound: int

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if self.bound < 0:
            raise InvalidIndex(f"negative bound {self.bound}")
        for a, b in zip(idx, idx[1:]):
            if a >= b:
                raise InvalidIndex(f"index set {list(idx)} is not strictly increasing")
        if idx and (idx[0] < 1 or idx[-1] > self.bound):
            raise InvalidIndex(f"index set {list(idx)} not within 1..{self.bound}")

    @classmethod
    def of(cls, indices: Iterable[int], bound: int) -> "IndexSet":
        return cls(tuple(indices), bound)

    @classmethod
    def range(cls, first: int, last: int, bound: int) -> "IndexSet":
        """The contiguous run ``{first, ..., last}``."""
        return cls(tuple(range(first, last + 1)), bound)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, i) -> bool:
        return i in self.indices

    def __or__(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(tuple(sorted(set(self.indices) | set(other.indices))), max(self.bound, other.bound))

    def complement(self) -> "IndexSet":
        present = set(self.indices)
        return IndexSet(tuple(i for i in range(1, self.bound + 1) if i not in present), self.bound)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.indices)) + "}"


def complement(s: IndexSet) -> IndexSet:
    return s.complement()


def index_set(s, bound: int) -> IndexSet:
    """Coerce a sequence (or IndexSet) to an IndexSet with the given bound."""
    if isinstance(s, IndexSet):
        if s.bound != bound:
            raise InvalidIndex(f"index set bound {s.bound} does not match dimension {bound}")
        return s
    return IndexSet(tuple(s), bound)


def subsets(n: int, k: int) -> list[IndexSet]:
    """All k-subsets of {1..n} in lexicographic order."""
    return [IndexSet(c, n) for c in combinations(range(1, n + 1), k)]


def submatrix(A: MatrixLike, rows, cols) -> ExactMatrix:
    A = as_matrix(A)
    r = index_set(rows, A.nrows)
    c = index_set(cols, A.ncols)
    if not len(r) or not len(c):
        raise InvalidIndex("submatrix needs nonempty row and column sets")
    return ExactMatrix([A.data[i - 1][j - 1] for j in c] for i in r)


def delete(A: MatrixLike, rows, cols) -> ExactMatrix:
    """Complementary submatrix ``A(rows, cols)``."""
    A = as_matrix(A)
    return submatrix(A, index_set(rows, A.nrows).complement(), index_set(cols, A.ncols).complement())


def _bareiss(rows: list[list[int]]) -> int:
    """Fraction-free elimination on an integer matrix, in place."""
    n = len(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for p in range(k + 1, n):
                if rows[p][k] != 0:
                    rows[k], rows[p] = rows[p], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            rik = ri[k]
            for j in range(k + 1, n):
                q, rem = divmod(pivot * ri[j] - rik * rk[j], prev)
                if rem:
                    raise ConsistencyError("Bareiss step left a remainder")
                ri[j] = q
            ri[k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1]


def determinant(A: MatrixLike) -> Fraction:
    """Exact determinant.

    Each row is scaled by the lcm of its denominators, the resulting integer
    matrix is reduced by Bareiss elimination, and the product of the row
    scales is divided back out.
    """
    A = as_matrix(A)
    if not A.is_square:
        raise ShapeError(f"determinant of a non-square {A.nrows}x{A.ncols} matrix")
    scale = 1
    rows = []
    for row in A.data:
        mult = lcm(*(x.denominator for x in row))
        rows.append([x.numerator * (mult // x.denominator) for x in row])
        scale *= mult
    return Fraction(_bareiss(rows), scale)


def minor(A: MatrixLike, rows, cols) -> Fraction:
    A = as_matrix(A)
    r = index_set(rows, A.nrows)
    c = index_set(cols, A.ncols)
    if len(r) != len(c):
        raise ShapeError(f"minor needs equal cardinalities, got {len(r)} rows and {len(c)} cols")
    if not len(r):
        return Fraction(1)
    return determinant(submatrix(A, r, c))


def contiguous_minor(A: MatrixLike, i: int, j: int, order: int) -> Fraction:
    """``det A[{i..i+order-1}, {j..j+order-1}]``."""
    A = as_matrix(A)
    return minor(A, range(i, i + order), range(j, j + order))


def permutation_matrix(perm: Sequence[int]) -> ExactMatrix:
    """Matrix P with ``P[i, perm[i-1]] = 1`` (so ``(P A)`` row i is A's row ``perm[i-1]``)."""
    n = len(perm)
    return ExactMatrix([[int(perm[i] == j) for j in range(1, n + 1)] for i in range(n)])


def product(mats: Iterable[ExactMatrix], n: int) -> ExactMatrix:
    out = ExactMatrix.identity(n)
    for M in mats:
        out = out @ M
    return out


__all__ = [
    "Rational",
    "ExactMatrix",
    "IndexSet",
    "as_matrix",
    "complement",
    "contiguous_minor",
    "delete",
    "determinant",
    "format_rational",
    "index_set",
    "minor",
    "parse_rational",
    "permutation_matrix",
    "product",
    "submatrix",
    "subsets",
]
