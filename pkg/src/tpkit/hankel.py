"""Hankel matrices and their total positivity.

A Hankel matrix on ``a_0..a_{2n}`` is TP exactly when it and its shifted
block ``A[{1..n}, {2..n+1}]`` are positive definite, so TP can be decided
from 2n+1 leading principal minors instead of all minors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .condensation import condensation_sequence
from .errors import DomainError, HypothesisError, ShapeError
from .exact import ExactMatrix, IndexSet, MatrixLike, as_matrix, minor, submatrix
from .positivity import PD, PositivityVerdict, Witness
from .report import Check, Report
from .rng import Stream


def hankel_from_sequence(seq: Sequence) -> ExactMatrix:
    """``(a_{i+j})`` for i, j = 0..n from an odd-length sequence ``a_0..a_{2n}``."""
    if len(seq) % 2 == 0:
        raise ShapeError(f"Hankel sequence must have odd length, got {len(seq)}")
    vals = [Fraction(x) if not isinstance(x, str) else _parse(x) for x in seq]
    n = len(vals) // 2
    return ExactMatrix([[vals[i + j] for j in range(n + 1)] for i in range(n + 1)])


def _parse(x: str) -> Fraction:
    from .exact import parse_rational

    return parse_rational(x)


def hankel_sequence(A: MatrixLike) -> list[Fraction]:
    """Recover ``a_0..a_{2n}``; raises DomainError unless antidiagonals are constant."""
    A = as_matrix(A)
    if not is_hankel(A):
        raise DomainError("matrix is not Hankel")
    n = A.nrows
    return [A[1, 1 + s] if s < n else A[s - n + 2, n] for s in range(2 * n - 1)]


def is_hankel(A: MatrixLike) -> bool:
    A = as_matrix(A)
    if not A.is_square:
        return False
    d = A.data
    n = A.nrows
    return all(d[i][j] == d[i + 1][j - 1] for i in range(n - 1) for j in range(1, n))


def shifted_hankel(A: MatrixLike) -> ExactMatrix:
    """``A' = A[{1..n}, {2..n+1}]`` of an order n+1 Hankel matrix."""
    A = as_matrix(A)
    if not is_hankel(A):
        raise DomainError("shifted_hankel expects a Hankel matrix")
    n = A.nrows - 1
    if n < 1:
        raise ShapeError("a 1x1 Hankel matrix has no shifted block")
    return submatrix(A, range(1, n + 1), range(2, n + 2))


def is_positive_definite(A: MatrixLike) -> PositivityVerdict:
    """Sylvester's criterion: every leading principal minor is positive."""
    A = as_matrix(A)
    if A != A.T:
        raise DomainError("positive definiteness is checked for symmetric matrices only")
    n = A.nrows
    for r in range(1, n + 1):
        value = minor(A, range(1, r + 1), range(1, r + 1))
        if value <= 0:
            lead = IndexSet.range(1, r, n)
            return PositivityVerdict(PD, n, False, Witness(lead, lead, value))
    return PositivityVerdict(PD, n, True)


def is_tp_hankel(A: MatrixLike) -> PositivityVerdict:
    """TP test for a Hankel matrix via positive definiteness of A and A'.

    The witness, if any, is a leading principal minor of A or of A' given in
    A's own row/column numbering (A' occupies columns 2..n+1).
    """
    A = as_matrix(A)
    if not is_hankel(A):
        raise DomainError("is_tp_hankel expects a Hankel matrix")
    N = A.nrows
    v = is_positive_definite(A)
    if not v.holds:
        return PositivityVerdict("TP_hankel", N, False, v.witness)
    if N == 1:
        return PositivityVerdict("TP_hankel", N, True)
    v = is_positive_definite(shifted_hankel(A))
    if not v.holds:
        w = v.witness
        rows = IndexSet(w.rows.indices, N)
        cols = IndexSet(tuple(j + 1 for j in w.cols), N)
        return PositivityVerdict("TP_hankel", N, False, Witness(rows, cols, w.value))
    return PositivityVerdict("TP_hankel", N, True)


def moment_sequence(order: int, seed: int, magnitude: int = 9, *, stream: int = 0) -> list[Fraction]:
    """Moments ``a_k = sum_t w_t x_t^k`` (k = 0..2order-2) of a positive discrete measure.

    ``order`` distinct positive rational nodes and positive weights make both
    the Hankel matrix and its shift positive definite.
    """
    if order < 1:
        raise ShapeError("order must be positive")
    rng = Stream(seed, stream)
    nodes: list[Fraction] = []
    while len(nodes) < order:
        x = rng.rational(magnitude)
        if x not in nodes:
            nodes.append(x)
    weights = [rng.rational(magnitude) for _ in nodes]
    return [sum((w * x**k for w, x in zip(weights, nodes)), Fraction(0)) for k in range(2 * order - 1)]


def hankel_from_moments(order: int, seed: int, magnitude: int = 9, *, stream: int = 0) -> ExactMatrix:
    return hankel_from_sequence(moment_sequence(order, seed, magnitude, stream=stream))


def verify_theorem_c(seq_or_matrix) -> Report:
    """Every condensation of a TP Hankel matrix is Hankel and TP.

    Raises HypothesisError if the input is not a TP Hankel matrix.
    """
    if isinstance(seq_or_matrix, ExactMatrix):
        A = seq_or_matrix
    else:
        A = hankel_from_sequence(seq_or_matrix)
    v = is_tp_hankel(A)
    if not v.holds:
        raise HypothesisError(f"input Hankel matrix is not TP (witness {v.witness})")
    N = A.nrows
    n = N - 1
    report = Report(f"thmC(order={N})")
    if n < 1:
        report.add(Check("no condensations for order 1", True))
        return report
    seq = condensation_sequence(A)
    shifted_seq = condensation_sequence(shifted_hankel(A)) if n >= 2 else None
    for k in range(1, n + 1):
        D = seq.stages[k]
        hank = is_hankel(D)
        report.add(Check(f"D_{k}(A) is Hankel", hank))
        if not hank:
            continue
        tp = is_tp_hankel(D)
        report.add(Check(f"D_{k}(A) is TP", tp.holds, expected=True, actual=tp.holds, witness=tp.witness))
        if k <= n - 1:
            same = shifted_hankel(D) == shifted_seq.stages[k]
            report.add(Check(f"D_{k}(A)' = D_{k}(A')", same))
    return report
