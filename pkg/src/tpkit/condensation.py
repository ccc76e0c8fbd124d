"""Dodgson condensation and Sylvester's determinantal identity.

``D_k(A)`` has order ``n - k`` and its (i, j) entry is the contiguous minor
``det A[{i..i+k}, {j..j+k}]``.  The recursion divides the 2x2 determinant of
adjacent stage-k entries by the interior entry of stage ``k - 1``; when that
divisor is zero the entry is taken directly from the contiguous minor and the
position is recorded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConsistencyError, InvalidIndex, InvalidOrder, ShapeError
from .exact import ExactMatrix, IndexSet, MatrixLike, as_matrix, contiguous_minor, determinant, index_set, minor


@dataclass(frozen=True)
class CondensationSequence:
    """``D_0(A) = A, D_1(A), ..., D_{n-1}(A)`` with fallback provenance.

    ``fallbacks[k]`` holds the 1-based (i, j) positions of ``D_k`` that were
    read off a contiguous minor because the recursion's divisor vanished.
    """

    source: ExactMatrix
    stages: tuple[ExactMatrix, ...]
    fallbacks: tuple[frozenset, ...] = field(default=())

    def stage(self, k: int) -> ExactMatrix:
        if not 0 <= k < len(self.stages):
            raise InvalidOrder(f"condensation stage {k} outside 0..{len(self.stages) - 1}")
        return self.stages[k]

    @property
    def order(self) -> int:
        return self.source.nrows

    @property
    def determinant(self) -> Fraction:
        return self.stages[-1][1, 1]

    @property
    def fallback_count(self) -> int:
        return sum(len(f) for f in self.fallbacks)


def _next_stage(A: ExactMatrix, prev: ExactMatrix, cur: ExactMatrix, k: int, integral: bool):
    """Build ``D_{k+1}`` from ``D_{k-1}`` (prev) and ``D_k`` (cur)."""
    size = cur.nrows - 1
    p, c = prev.data, cur.data
    rows = []
    flagged = set()
    for i in range(size):
        row = []
        for j in range(size):
            num = c[i][j] * c[i + 1][j + 1] - c[i][j + 1] * c[i + 1][j]
            div = p[i + 1][j + 1]
            if div == 0:
                value = contiguous_minor(A, i + 1, j + 1, k + 2)
                flagged.add((i + 1, j + 1))
            else:
                value = num / div
                if integral and value.denominator != 1:
                    raise ConsistencyError(
                        f"non-exact division at stage {k + 1}, entry ({i + 1}, {j + 1}): {num} / {div}"
                    )
            row.append(value)
        rows.append(row)
    return ExactMatrix(rows), frozenset(flagged)


def condensation_sequence(A: MatrixLike, upto: int | None = None) -> CondensationSequence:
    """All condensation stages of ``A`` through ``D_upto`` (default ``n - 1``)."""
    A = as_matrix(A)
    if not A.is_square:
        raise ShapeError(f"condensation needs a square matrix, got {A.nrows}x{A.ncols}")
    n = A.nrows
    if upto is None:
        upto = n - 1
    if n < 2:
        raise ShapeError("condensation needs order at least 2")
    if not 1 <= upto <= n - 1:
        raise InvalidOrder(f"condensation order {upto} outside 1..{n - 1}")

    integral = A.is_integral()
    # D_{-1} is all ones so the first step divides by 1.
    ones = ExactMatrix([[1] * (n + 1) for _ in range(n + 1)])
    stages = [A]
    fallbacks = [frozenset()]
    prev, cur = ones, A
    for k in range(upto):
        nxt, flagged = _next_stage(A, prev, cur, k, integral)
        stages.append(nxt)
        fallbacks.append(flagged)
        prev, cur = cur, nxt
    return CondensationSequence(A, tuple(stages), tuple(fallbacks))


def condense(A: MatrixLike, k: int) -> ExactMatrix:
    """``D_k(A)``."""
    A = as_matrix(A)
    if A.is_square and not 1 <= k <= A.nrows - 1:
        raise InvalidOrder(f"condensation order {k} outside 1..{A.nrows - 1}")
    return condensation_sequence(A, k).stages[k]


def condense_direct(A: MatrixLike, k: int) -> ExactMatrix:
    """``D_k(A)`` assembled entrywise from contiguous minors of order k+1."""
    A = as_matrix(A)
    n = A.nrows
    if not A.is_square:
        raise ShapeError("condensation needs a square matrix")
    if not 0 <= k <= n - 1:
        raise InvalidOrder(f"condensation order {k} outside 0..{n - 1}")
    return ExactMatrix.from_function(n - k, n - k, lambda i, j: contiguous_minor(A, i, j, k + 1))


@dataclass(frozen=True)
class SylvesterResult:
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def bordered_matrix(A: MatrixLike, alpha) -> tuple[ExactMatrix, IndexSet]:
    """``B = [det A[alpha + {i}, alpha + {j}]]`` for i, j in the complement of alpha.

    Returns ``B`` together with that complement, which labels B's rows and
    columns in increasing order.
    """
    A = as_matrix(A)
    if not A.is_square:
        raise ShapeError("Sylvester's identity needs a square matrix")
    n = A.nrows
    alpha = index_set(alpha, n)
    rest = alpha.complement()
    if not len(rest):
        raise InvalidIndex("alpha must be a proper subset")

    def bordered(i, j):
        return minor(A, sorted(set(alpha) | {i}), sorted(set(alpha) | {j}))

    return ExactMatrix([[bordered(i, j) for j in rest] for i in rest]), rest


def sylvester_check(A: MatrixLike, alpha, delta, gamma) -> SylvesterResult:
    """Evaluate both sides of ``det B[delta, gamma] = det(A[alpha])^(l-1) det A[alpha+delta, alpha+gamma]``."""
    A = as_matrix(A)
    n = A.nrows
    alpha = index_set(alpha, n)
    delta = index_set(delta, n)
    gamma = index_set(gamma, n)
    if set(delta) & set(alpha) or set(gamma) & set(alpha):
        raise InvalidIndex("delta and gamma must avoid alpha")
    if len(delta) != len(gamma) or not len(delta):
        raise ShapeError("delta and gamma must be nonempty and of equal size")
    B, rest = bordered_matrix(A, alpha)
    pos = {x: p for p, x in enumerate(rest, start=1)}
    lhs = minor(B, [pos[i] for i in delta], [pos[j] for j in gamma])
    base = minor(A, alpha, alpha) if len(alpha) else Fraction(1)
    l = len(delta)
    rhs = base ** (l - 1) * minor(A, sorted(set(alpha) | set(delta)), sorted(set(alpha) | set(gamma)))
    return SylvesterResult(lhs, rhs)


def corner_identity(A: MatrixLike) -> SylvesterResult:
    """The partitioned special case with alpha = {2, ..., n-1}.

    lhs is ``det [[b, c], [d, e]]`` built from the four corner (n-1)-minors,
    rhs is ``det A_22 * det A``.
    """
    A = as_matrix(A)
    n = A.nrows
    if not A.is_square or n < 3:
        raise ShapeError("corner identity needs a square matrix of order >= 3")
    top, bottom = range(1, n), range(2, n + 1)
    b = minor(A, top, top)
    c = minor(A, top, bottom)
    d = minor(A, bottom, top)
    e = minor(A, bottom, bottom)
    inner = range(2, n)
    return SylvesterResult(b * e - c * d, minor(A, inner, inner) * determinant(A))
