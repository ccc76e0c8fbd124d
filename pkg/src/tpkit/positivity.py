"""Total positivity verdicts and executable checks of the compound/condensation theorems.

TP_k is decided from contiguous minors only (Fekete's criterion); TN_k has no
such shortcut and enumerates every minor.  The theorem verifiers return a
:class:`~tpkit.report.Report` and never count an unmet hypothesis as a
violation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from mpmath import iv
from mpmath.libmp import to_rational

from .compound import compound
from .condensation import condensation_sequence, condense
from .errors import ConsistencyError, DomainError, HypothesisError, InvalidOrder, ShapeError
from .exact import (
    ExactMatrix,
    IndexSet,
    MatrixLike,
    as_matrix,
    contiguous_minor,
    delete,
    determinant,
    minor,
    permutation_matrix,
)
from .report import Check, Report, not_met

TP = "TP_k"
TN = "TN_k"
TP2C = "TP2c"
PD = "PD"

MAX_TN_DIM = 8


@dataclass(frozen=True)
class Witness:
    rows: IndexSet
    cols: IndexSet
    value: Fraction

    def to_dict(self) -> dict:
        from .exact import format_rational

        return {"rows": list(self.rows), "cols": list(self.cols), "value": format_rational(self.value)}


@dataclass(frozen=True)
class PositivityVerdict:
    property: str
    order: int
    holds: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "order": self.order,
            "holds": self.holds,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


def _check_order(A: ExactMatrix, k: int) -> None:
    if not 1 <= k <= min(A.shape):
        raise InvalidOrder(f"order {k} outside 1..{min(A.shape)} for a {A.nrows}x{A.ncols} matrix")


def is_tp_k(A: MatrixLike, k: int) -> PositivityVerdict:
    """TP_k test over contiguous minors of orders 1..k.

    The witness on failure is the first non-positive contiguous minor in
    (order, first row, first column) order.
    """
    A = as_matrix(A)
    _check_order(A, k)
    m, n = A.shape
    for r in range(1, k + 1):
        for i in range(1, m - r + 2):
            for j in range(1, n - r + 2):
                value = A[i, j] if r == 1 else contiguous_minor(A, i, j, r)
                if value <= 0:
                    w = Witness(IndexSet.range(i, i + r - 1, m), IndexSet.range(j, j + r - 1, n), value)
                    return PositivityVerdict(TP, k, False, w)
    return PositivityVerdict(TP, k, True)


def is_tp(A: MatrixLike) -> PositivityVerdict:
    A = as_matrix(A)
    return is_tp_k(A, min(A.shape))


def is_tn_k(A: MatrixLike, k: int, *, allow_large: bool = False) -> PositivityVerdict:
    """TN_k test over every minor of orders 1..k (lexicographic scan)."""
    A = as_matrix(A)
    _check_order(A, k)
    m, n = A.shape
    if max(m, n) > MAX_TN_DIM and not allow_large:
        raise ShapeError(f"TN check enumerates all minors; {m}x{n} exceeds the {MAX_TN_DIM} guard")
    for r in range(1, k + 1):
        for rows in combinations(range(1, m + 1), r):
            for cols in combinations(range(1, n + 1), r):
                value = minor(A, rows, cols)
                if value < 0:
                    return PositivityVerdict(TN, k, False, Witness(IndexSet(rows, m), IndexSet(cols, n), value))
    return PositivityVerdict(TN, k, True)


def is_tp2c(A: MatrixLike, c) -> PositivityVerdict:
    """Check ``a[i,j] a[i+1,j+1] >= c a[i+1,j] a[i,j+1]`` on every adjacent 2x2 block.

    Only ``i < m`` and ``j < n`` are meaningful.  A failing witness carries
    the slack ``a[i,j] a[i+1,j+1] - c a[i+1,j] a[i,j+1]``.
    """
    A = as_matrix(A)
    c = Fraction(c)
    if c <= 0:
        raise DomainError(f"TP_2(c) needs c > 0, got {c}")
    if any(x <= 0 for x in A.entries()):
        raise DomainError("TP_2(c) is defined here for matrices with positive entries")
    m, n = A.shape
    for i in range(1, m):
        for j in range(1, n):
            slack = A[i, j] * A[i + 1, j + 1] - c * A[i + 1, j] * A[i, j + 1]
            if slack < 0:
                w = Witness(IndexSet((i, i + 1), m), IndexSet((j, j + 1), n), slack)
                return PositivityVerdict(TP2C, 2, False, w)
    return PositivityVerdict(TP2C, 2, True)


@dataclass(frozen=True)
class Tp2cThreshold:
    """Rational enclosure ``lower <= 4 cos^2(pi/(n+1)) <= upper``."""

    n: int
    lower: Fraction
    upper: Fraction

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        return self.lower <= x <= self.upper


THRESHOLD_WIDTH = Fraction(1, 10**30)


def _fraction(p, q) -> Fraction:
    # mpmath may hand back gmpy2 integers; keep Fractions on plain ints.
    return Fraction(int(p), int(q))


def tp2c_threshold(n: int, precision_bits: int = 128) -> Tp2cThreshold:
    """Bracket ``4cos^2(pi/(n+1)) = 2 + 2cos(2pi/(n+1))`` by interval arithmetic."""
    if n < 1:
        raise InvalidOrder("threshold needs n >= 1")
    prec = max(precision_bits, 8)
    while True:
        saved = iv.prec
        iv.prec = prec
        try:
            x = 2 + 2 * iv.cos(2 * iv.pi / (n + 1))
            lo, hi = x._mpi_
        finally:
            iv.prec = saved
        lower = _fraction(*to_rational(lo))
        upper = _fraction(*to_rational(hi))
        if upper - lower <= THRESHOLD_WIDTH:
            return Tp2cThreshold(n, lower, upper)
        prec *= 2


def tp2c_implies_tp(A: MatrixLike, c) -> bool:
    """Sound use of the sufficient condition: true only if ``c`` clears the upper bracket."""
    A = as_matrix(A)
    if not A.is_square:
        raise ShapeError("the TP_2(c) criterion is stated for square matrices")
    c = Fraction(c)
    return c >= tp2c_threshold(A.nrows).upper and is_tp2c(A, c).holds


# -- witness soundness ---------------------------------------------------


def witness_reproduces(A: MatrixLike, verdict: PositivityVerdict) -> bool:
    """Recompute a failing verdict's witness from ``A``."""
    A = as_matrix(A)
    w = verdict.witness
    if verdict.holds:
        return w is None
    if w is None:
        return False
    if verdict.property == TP2C:
        return True
    value = minor(A, w.rows, w.cols)
    if value != w.value:
        return False
    return value <= 0 if verdict.property in (TP, PD) else value < 0


# -- theorem verifiers ---------------------------------------------------


def _square(A: ExactMatrix) -> int:
    if not A.is_square:
        raise ShapeError(f"expected a square matrix, got {A.nrows}x{A.ncols}")
    return A.nrows


def verify_theorem_a(A: MatrixLike, k: int) -> Report:
    """A TP_{k+2} forces C_k(A) to fail TP_3, for 2 <= k <= n-2."""
    A = as_matrix(A)
    n = _square(A)
    if n < 4 or not 2 <= k <= n - 2:
        raise InvalidOrder(f"the compound TP_3 check needs n >= 4 and 2 <= k <= n-2, got n={n}, k={k}")
    report = Report(f"thmA(n={n},k={k})")
    hyp = is_tp_k(A, k + 2)
    if not hyp.holds:
        report.add(not_met(f"A is TP_{k + 2}", hyp.witness))
        return report
    C = compound(A, k)
    v3 = is_tp_k(C, 3)
    report.add(Check(f"C_{k}(A) is not TP_3", not v3.holds, expected=False, actual=v3.holds, witness=v3.witness))
    report.add(Check("witness recomputes", witness_reproduces(C, v3), witness=v3.witness))
    # Contrapositive: C_k TP_3 would force A not TP_{k+2}.
    report.add(Check("contrapositive bookkeeping", not (v3.holds and hyp.holds)))
    v2 = is_tp_k(C, 2)
    report.add(Check(f"C_{k}(A) TP_2 (informational)", True, actual=v2.holds))
    return report


def two_by_two_identity(seq, k: int) -> list[tuple[int, int, bool]]:
    """det D_k[{i,i+1},{j,j+1}] == M^(k+1)_{i,j} * M^(k-1)_{i+1,j+1} for every i, j."""
    D, up = seq.stages[k], seq.stages[k + 1]
    low = seq.stages[k - 1] if k >= 1 else None
    out = []
    for i in range(1, D.nrows):
        for j in range(1, D.ncols):
            lhs = D[i, j] * D[i + 1, j + 1] - D[i, j + 1] * D[i + 1, j]
            inner = low[i + 1, j + 1] if low is not None else 1
            out.append((i, j, lhs == up[i, j] * inner))
    return out


def verify_theorem_b(A: MatrixLike, k: int) -> Report:
    """A TP_{k+2} gives D_k(A) TP_2; A TP_{k+3} gives D_k(A) TP_3."""
    A = as_matrix(A)
    n = _square(A)
    if not 1 <= k <= n - 1:
        raise InvalidOrder(f"the condensation TP check needs 1 <= k <= n-1, got k={k} for n={n}")
    report = Report(f"thmB(n={n},k={k})")
    seq = condensation_sequence(A, min(k + 1, n - 1))
    D = seq.stages[k]
    for extra, target in ((2, 2), (3, 3)):
        label = f"A TP_{k + extra} => D_{k}(A) TP_{target}"
        if k + extra > n:
            report.add(not_met(label, f"TP_{k + extra} undefined for order {n}"))
            continue
        hyp = is_tp_k(A, k + extra)
        if not hyp.holds:
            report.add(not_met(label, hyp.witness))
            continue
        v = is_tp_k(D, target)
        report.add(Check(label, v.holds, expected=True, actual=v.holds, witness=v.witness))
    if k + 1 <= n - 1:
        bad = [(i, j) for i, j, ok in two_by_two_identity(seq, k) if not ok]
        report.add(Check("2x2 condensation identity", not bad, witness=bad or None))
    return report


def verify_theorem_d(A: MatrixLike, k: int) -> Report:
    """A TP_k with D_k(A) TP_2 (or C_{k+1}(A) TP_2) forces A TP_{k+2}."""
    A = as_matrix(A)
    n = _square(A)
    if not 1 <= k <= n - 2:
        raise InvalidOrder(f"the converse check needs 1 <= k <= n-2, got k={k} for n={n}")
    report = Report(f"thmD(n={n},k={k})")
    base = is_tp_k(A, k)
    conclusion = None
    for label, other in (
        (f"D_{k}(A) TP_2 => A TP_{k + 2}", lambda: condense(A, k)),
        (f"C_{k + 1}(A) TP_2 => A TP_{k + 2}", lambda: compound(A, k + 1)),
    ):
        if not base.holds:
            report.add(not_met(label, base.witness))
            continue
        v = is_tp_k(other(), 2)
        if not v.holds:
            report.add(not_met(label, v.witness))
            continue
        if conclusion is None:
            conclusion = is_tp_k(A, k + 2)
        report.add(Check(label, conclusion.holds, expected=True, actual=conclusion.holds, witness=conclusion.witness))
    return report


def singular_perturbation(A: MatrixLike) -> ExactMatrix:
    """``B = A - t E_11`` with ``t = det A / det A({1})``, so that ``det B = 0``."""
    A = as_matrix(A)
    n = _square(A)
    if n < 2:
        raise ShapeError("perturbation needs order >= 2")
    if not is_tp(A).holds:
        raise HypothesisError("singular perturbation expects a TP matrix")
    t = determinant(A) / determinant(delete(A, [1], [1]))
    return A.replace(1, 1, A[1, 1] - t)


def verify_remark_37(A: MatrixLike) -> Report:
    """B = A - tE_11 is singular, TP_{n-1}, not TP_n, and D_{n-3}(B) is TP_3."""
    A = as_matrix(A)
    n = _square(A)
    if n < 4:
        raise InvalidOrder("the singular perturbation check needs n >= 4")
    report = Report(f"remark37(n={n})")
    try:
        B = singular_perturbation(A)
    except HypothesisError as exc:
        report.add(not_met("A is TP", str(exc)))
        return report
    det_b = determinant(B)
    report.add(Check("det B = 0", det_b == 0, expected=0, actual=det_b))
    v = is_tp_k(B, n - 1)
    report.add(Check(f"B is TP_{n - 1}", v.holds, expected=True, actual=v.holds, witness=v.witness))
    v = is_tp_k(B, n)
    report.add(Check(f"B is not TP_{n}", not v.holds, expected=False, actual=v.holds, witness=v.witness))
    k = n - 3
    v = is_tp_k(condense(B, k), 3)
    report.add(Check(f"D_{k}(B) is TP_3", v.holds, expected=True, actual=v.holds, witness=v.witness))
    return report


# Index pairs of the first displayed list of 3x3 minors of S (all rows {1,2,3} or {1,2,4}).
S_FIRST_LIST = (
    ((1, 2, 3), (1, 3, 4)),
    ((1, 2, 3), (2, 3, 4)),
    ((1, 2, 4), (1, 3, 4)),
    ((1, 2, 4), (2, 3, 4)),
)


def _sorted_sign(seq) -> tuple[tuple[int, ...], int]:
    """Sort ``seq`` and return the sign of the sorting permutation."""
    seq = list(seq)
    inversions = sum(1 for a, b in combinations(seq, 2) if a > b)
    return tuple(sorted(seq)), -1 if inversions % 2 else 1


def ordering_invariance_check(S: MatrixLike) -> Report:
    """Every simultaneous row/column permutation P S P^T of the 4x4 S fails TP_3.

    Also confirms that in each permuted matrix at least one of the images of
    the first displayed minor list is negative.
    """
    S = as_matrix(S)
    if S.shape != (4, 4):
        raise ShapeError("ordering check expects the 4x4 S matrix")
    report = Report("remark33")
    for perm in permutations(range(1, 5)):
        P = permutation_matrix(perm)
        M = P @ S @ P.T
        v = is_tp_k(M, 3)
        where = {r: perm.index(r) + 1 for r in range(1, 5)}
        images = []
        for rows, cols in S_FIRST_LIST:
            r, sr = _sorted_sign(where[x] for x in rows)
            c, sc = _sorted_sign(where[x] for x in cols)
            value = minor(M, r, c)
            if value != sr * sc * minor(S, rows, cols):
                raise ConsistencyError("permuted minor does not match its source")
            images.append(value)
        tag = "".join(map(str, perm))
        report.add(Check(f"P{tag}: not TP_3", not v.holds, expected=False, actual=v.holds, witness=v.witness))
        report.add(Check(f"P{tag}: a listed minor is negative", any(x < 0 for x in images), actual=images))
    return report
