"""k-th compound matrices with lexicographically ordered index sets."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InvalidOrder, ShapeError
from .exact import ExactMatrix, IndexSet, MatrixLike, as_matrix, index_set, minor, subsets

MAX_COMPOUND_DIM = 16


@dataclass(frozen=True)
class CompoundIndexMap:
    """Lexicographic bookkeeping for ``C_k`` of an ``m x n`` matrix."""

    k: int
    m: int
    n: int
    row_sets: tuple[IndexSet, ...]
    col_sets: tuple[IndexSet, ...]

    @classmethod
    def build(cls, m: int, n: int, k: int) -> "CompoundIndexMap":
        if not 1 <= k <= min(m, n):
            raise InvalidOrder(f"compound order {k} outside 1..{min(m, n)}")
        return cls(k, m, n, tuple(subsets(m, k)), tuple(subsets(n, k)))

    def row_position(self, row_set) -> int:
        return _lex_rank(self._check(row_set, self.m), self.m) + 1

    def col_position(self, col_set) -> int:
        return _lex_rank(self._check(col_set, self.n), self.n) + 1

    def position(self, row_set, col_set) -> tuple[int, int]:
        """1-based (row, col) of the entry ``det A[row_set, col_set]`` in ``C_k(A)``."""
        return self.row_position(row_set), self.col_position(col_set)

    def _check(self, s, bound: int) -> IndexSet:
        s = index_set(s, bound)
        if len(s) != self.k:
            raise ShapeError(f"index set {s} has cardinality {len(s)}, expected {self.k}")
        return s


def _lex_rank(s: IndexSet, n: int) -> int:
    """0-based rank of a k-subset of {1..n} among all k-subsets in lex order."""
    k = len(s)
    rank = 0
    prev = 0
    for pos, x in enumerate(s, start=1):
        for skipped in range(prev + 1, x):
            rank += comb(n - skipped, k - pos)
        prev = x
    return rank


def compound_entry_index(index_map: CompoundIndexMap, row_set, col_set) -> tuple[int, int]:
    return index_map.position(row_set, col_set)


def compound(A: MatrixLike, k: int, *, allow_large: bool = False) -> ExactMatrix:
    """Matrix of all k-by-k minors of ``A``, rows and columns in lex order.

    Matrices with more than 16 rows or columns are refused unless
    ``allow_large`` is set.
    """
    A = as_matrix(A)
    m, n = A.shape
    if not 1 <= k <= min(m, n):
        raise InvalidOrder(f"compound order {k} outside 1..{min(m, n)}")
    if max(m, n) > MAX_COMPOUND_DIM and not allow_large:
        raise ShapeError(f"{m}x{n} exceeds the {MAX_COMPOUND_DIM}x{MAX_COMPOUND_DIM} compound guard")
    rows = subsets(m, k)
    cols = subsets(n, k)
    return ExactMatrix([minor(A, a, b) for b in cols] for a in rows)
