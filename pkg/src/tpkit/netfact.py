"""Bidiagonal factorization, planar networks, and the S-matrix construction.

Parameter order
---------------
With ``K = n(n-1)/2`` the factorization reads::

    A = G_1(l) G_2(l) ... G_{n-1}(l) * D * G_{n-1}(u)^T ... G_2(u)^T G_1(u)^T
    G_g(x) = L_{g+1}(x_t) L_g(x_{t+1}) ... L_2(x_{t+g-1}),   t = g(g-1)/2 + 1

so the lower parameters are consumed left to right and each upper group is
the transpose of the matching lower group.  Expanded:

n = 3::

    L2(l1) . L3(l2) L2(l3) . D . U2(u3) U3(u2) . U2(u1)

n = 4::

    L2(l1) . L3(l2) L2(l3) . L4(l4) L3(l5) L2(l6) . D
        . U2(u6) U3(u5) U4(u4) . U2(u3) U3(u2) . U2(u1)

``FactorizationParams.lowers`` lists ``(i, l_t)`` for t = 1..K, where ``i`` is
the subscript of the factor ``L_i`` carrying ``l_t``; ``uppers`` lists
``(j, u_t)`` the same way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import ConsistencyError, DomainError, InvalidIndex, InvalidOrder, ShapeError
from .exact import ExactMatrix, MatrixLike, as_matrix, determinant, index_set, minor
from .positivity import is_tn_k, is_tp_k
from .rng import Stream

MAX_LINDSTROM_ORDER = 7


def elementary_lower(n: int, i: int, v) -> ExactMatrix:
    """``L_i(v) = I + v E_{i,i-1}``."""
    if not 2 <= i <= n:
        raise InvalidIndex(f"L_{i} needs 2 <= i <= {n}")
    return ExactMatrix.identity(n).replace(i, i - 1, v)


def elementary_upper(n: int, j: int, v) -> ExactMatrix:
    """``U_j(v) = I + v E_{j-1,j}``."""
    if not 2 <= j <= n:
        raise InvalidIndex(f"U_{j} needs 2 <= j <= {n}")
    return ExactMatrix.identity(n).replace(j - 1, j, v)


def factor_positions(n: int) -> list[int]:
    """Subscript of the elementary factor carrying parameter t = 1..K."""
    return [i for g in range(1, n) for i in range(g + 1, 1, -1)]


@dataclass(frozen=True)
class FactorizationParams:
    n: int
    lowers: tuple[tuple[int, Fraction], ...]
    uppers: tuple[tuple[int, Fraction], ...]
    diag: tuple[Fraction, ...]

    def __post_init__(self):
        n = self.n
        k = comb(n, 2)
        object.__setattr__(self, "lowers", tuple((int(i), Fraction(v)) for i, v in self.lowers))
        object.__setattr__(self, "uppers", tuple((int(i), Fraction(v)) for i, v in self.uppers))
        object.__setattr__(self, "diag", tuple(Fraction(d) for d in self.diag))
        if len(self.lowers) != k or len(self.uppers) != k or len(self.diag) != n:
            raise ShapeError(f"order {n} needs {k} lower, {k} upper and {n} diagonal parameters")
        positions = factor_positions(n)
        for name, seq in (("lower", self.lowers), ("upper", self.uppers)):
            if [i for i, _ in seq] != positions:
                raise InvalidIndex(f"{name} positions {[i for i, _ in seq]} do not follow {positions}")
            if any(v < 0 for _, v in seq):
                raise DomainError(f"negative {name} parameter")
        if any(d <= 0 for d in self.diag):
            raise DomainError("diagonal parameters must be positive")

    @classmethod
    def from_values(cls, n: int, lowers, uppers, diag) -> "FactorizationParams":
        pos = factor_positions(n)
        return cls(n, tuple(zip(pos, lowers)), tuple(zip(pos, uppers)), tuple(diag))

    @property
    def lower_values(self) -> list[Fraction]:
        return [v for _, v in self.lowers]

    @property
    def upper_values(self) -> list[Fraction]:
        return [v for _, v in self.uppers]

    def factors(self) -> list[ExactMatrix]:
        """Elementary factors in multiplication order, D included."""
        n = self.n
        out = [elementary_lower(n, i, v) for i, v in self.lowers]
        out.append(ExactMatrix.diag(self.diag))
        out += [elementary_upper(n, j, v) for j, v in reversed(self.uppers)]
        return out

    def to_dict(self) -> dict:
        from .exact import format_rational

        return {
            "n": self.n,
            "lowers": [[str(i), format_rational(v)] for i, v in self.lowers],
            "uppers": [[str(j), format_rational(v)] for j, v in self.uppers],
            "diag": [format_rational(d) for d in self.diag],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FactorizationParams":
        from .exact import parse_rational

        return cls(
            int(d["n"]),
            tuple((int(i), parse_rational(v)) for i, v in d["lowers"]),
            tuple((int(j), parse_rational(v)) for j, v in d["uppers"]),
            tuple(parse_rational(v) for v in d["diag"]),
        )


def assemble(params: FactorizationParams) -> ExactMatrix:
    n = params.n
    out = ExactMatrix.identity(n)
    for F in params.factors():
        out = out @ F
    return out


def _ldu(A: ExactMatrix):
    """Doolittle LDU without pivoting; needs nonzero leading principal minors."""
    n = A.nrows
    U = [list(r) for r in A.data]
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        if U[k][k] == 0:
            raise DomainError("zero leading principal minor; matrix is not a nonsingular TN matrix")
        for i in range(k + 1, n):
            f = U[i][k] / U[k][k]
            L[i][k] = f
            if f:
                for j in range(k, n):
                    U[i][j] -= f * U[k][j]
    d = [U[k][k] for k in range(n)]
    unit_u = [[U[i][j] / d[i] for j in range(n)] for i in range(n)]
    return L, d, unit_u


def _peel_lower(L: list[list[Fraction]]) -> list[Fraction]:
    """Parameters of ``L = G_1 ... G_{n-1}`` for a unit lower triangular TN L.

    Each pass clears the last row of the working block with adjacent-column
    operations (Neville elimination on columns), which strips G_{m-1}
    off the right of an order-m block.
    """
    n = len(L)
    M = [row[:] for row in L]
    groups: dict[int, list[Fraction]] = {}
    for m in range(n, 1, -1):
        last = M[m - 1]
        xs = {}
        for c in range(0, m - 1):
            # column c (0-based) -= x * column c+1 zeroes last[c]
            r, below = last[c], last[c + 1]
            if below == 0:
                if r != 0:
                    raise ConsistencyError("nonzero entry left of a zero in an elimination row")
                x = Fraction(0)
            else:
                x = r / below
            if x < 0:
                raise ConsistencyError("negative bidiagonal parameter")
            xs[c + 2] = x
            if x:
                for row in M[:m]:
                    row[c] -= x * row[c + 1]
        # G_{m-1} = L_m(x_m) L_{m-1}(x_{m-1}) ... L_2(x_2)
        groups[m - 1] = [xs[i] for i in range(m, 1, -1)]
        if any(M[m - 1][c] for c in range(m - 1)):
            raise ConsistencyError("elimination did not clear the row")
    values = []
    for g in range(1, n):
        values += groups[g]
    return values


def factorize(A: MatrixLike, *, check: bool = True) -> FactorizationParams:
    """Bidiagonal parameters of a nonsingular TN matrix by Neville elimination."""
    A = as_matrix(A)
    if not A.is_square:
        raise ShapeError("factorization needs a square matrix")
    n = A.nrows
    if check:
        if determinant(A) == 0:
            raise DomainError("matrix is singular")
        tn = is_tn_k(A, n)
        if not tn.holds:
            raise DomainError(f"matrix is not TN: minor {tn.witness.rows} x {tn.witness.cols} = {tn.witness.value}")
    L, d, U = _ldu(A)
    lowers = _peel_lower(L)
    uppers = _peel_lower([list(r) for r in zip(*U)])
    params = FactorizationParams.from_values(n, lowers, uppers, d)
    if assemble(params) != A:
        raise ConsistencyError("factorization does not reproduce the input")
    return params


def random_params(n: int, seed: int, magnitude: int, *, tn: bool = False, stream: int = 0) -> FactorizationParams:
    """Draw l_1..l_K, u_1..u_K, d_1..d_n from the keyed stream, in that order.

    With ``tn`` set, each l/u parameter is first given a draw in [0, 2] and
    zeroed when it lands on 0, giving nonsingular TN matrices with zeros.
    """
    rng = Stream(seed, stream)
    k = comb(n, 2)

    def param():
        if tn and rng.integer(0, 2) == 0:
            return Fraction(0)
        return rng.rational(magnitude)

    lowers = [param() for _ in range(k)]
    uppers = [param() for _ in range(k)]
    diag = [rng.rational(magnitude) for _ in range(n)]
    return FactorizationParams.from_values(n, lowers, uppers, diag)


def generate_tp(n: int, seed: int, magnitude: int = 9, *, stream: int = 0) -> ExactMatrix:
    """Certified TP matrix from random positive bidiagonal parameters."""
    if n < 1:
        raise InvalidOrder("order must be positive")
    A = assemble(random_params(n, seed, magnitude, stream=stream))
    v = is_tp_k(A, n)
    if not v.holds:
        raise ConsistencyError(f"positive parameters produced a non-TP matrix: {v.witness}")
    return A


def generate_tn(n: int, seed: int, magnitude: int = 9, *, stream: int = 0) -> ExactMatrix:
    """Nonsingular TN matrix whose parameters include zeros."""
    return assemble(random_params(n, seed, magnitude, tn=True, stream=stream))


# -- planar networks -----------------------------------------------------


@dataclass(frozen=True)
class PlanarNetwork:
    """Layered acyclic network: vertex ``(level, stage)``, edges between consecutive stages.

    Sources are ``(i, 0)``, sinks ``(j, stages)``.  Zero-weight edges are
    dropped because they contribute nothing to any path weight.
    """

    n: int
    stages: int
    edges: tuple[tuple[tuple[int, int], tuple[int, int], Fraction], ...] = field(default=())

    def out_edges(self) -> dict:
        table: dict = {}
        for tail, head, w in self.edges:
            table.setdefault(tail, []).append((head, w))
        return table


def network_from_params(params: FactorizationParams) -> PlanarNetwork:
    """One stage per elementary factor, left to right as in the factorization."""
    n = params.n
    edges = []
    stage = 0

    def horizontal(weights):
        for lvl in range(1, n + 1):
            if weights[lvl - 1]:
                edges.append(((lvl, stage), (lvl, stage + 1), weights[lvl - 1]))

    ones = [Fraction(1)] * n
    for i, v in params.lowers:
        horizontal(ones)
        if v:
            edges.append(((i, stage), (i - 1, stage + 1), v))
        stage += 1
    horizontal(list(params.diag))
    stage += 1
    for j, v in reversed(params.uppers):
        horizontal(ones)
        if v:
            edges.append(((j - 1, stage), (j, stage + 1), v))
        stage += 1
    return PlanarNetwork(n, stage, tuple(edges))


def path_families(net: PlanarNetwork, rows, cols):
    """Yield every vertex-disjoint family joining source rows[r] to sink cols[r].

    Each family is a tuple of paths, a path being its list of edges.
    """
    rows = list(index_set(rows, net.n))
    cols = list(index_set(cols, net.n))
    out = net.out_edges()

    def extend(paths, pos, stage):
        if stage == net.stages:
            if [p[1] for p in pos] == [(c, stage) for c in cols]:
                yield tuple(paths)
            return
        yield from step(paths, pos, stage, 0, [], [])

    def step(paths, pos, stage, r, new_pos, new_paths):
        if r == len(pos):
            yield from extend(new_paths, new_pos, stage + 1)
            return
        for head, w in out.get(pos[r][1], ()):
            if any(head == q[1] for q in new_pos):
                continue
            yield from step(paths, pos, stage, r + 1, new_pos + [(r, head)], new_paths + [paths[r] + [(pos[r][1], head, w)]])

    start = [(r, (i, 0)) for r, i in enumerate(rows)]
    yield from extend([[] for _ in rows], start, 0)


def lindstrom_minor(net: PlanarNetwork, rows, cols) -> Fraction:
    """Sum of weights of vertex-disjoint path families from ``rows`` to ``cols``.

    Families are enumerated stage by stage; states with equal current
    vertices are merged so the sum is exact without listing every family.
    """
    if net.n > MAX_LINDSTROM_ORDER:
        raise ShapeError(f"path enumeration is limited to n <= {MAX_LINDSTROM_ORDER}")
    rows = index_set(rows, net.n)
    cols = index_set(cols, net.n)
    if len(rows) != len(cols):
        raise ShapeError("row and column sets must have equal size")
    out = net.out_edges()
    states = {tuple(rows): Fraction(1)}
    for stage in range(net.stages):
        nxt: dict = {}
        for levels, weight in states.items():
            for heads, w in _moves(levels, stage, out):
                nxt[heads] = nxt.get(heads, Fraction(0)) + weight * w
        states = nxt
    return states.get(tuple(cols), Fraction(0))


def _moves(levels, stage, out):
    """All disjoint joint moves of the paths sitting at ``levels`` on ``stage``."""
    results = [((), Fraction(1))]
    for lvl in levels:
        options = out.get((lvl, stage), ())
        results = [
            (heads + (h[0],), w * ew)
            for heads, w in results
            for h, ew in options
            if h[0] not in heads
        ]
    return results


# -- the S matrix --------------------------------------------------------

S_NAMES = ("a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l")


@dataclass(frozen=True)
class SMatrixParams:
    """Top-part weights ``a..l`` (``l`` is the last one, written as ell).

    ``a..f`` sit on the lower (left) strands, ``g..l`` on the upper (right)
    ones.  ``rest`` supplies the remaining l/u parameters in factor order
    (defaults to all ones) and ``diag`` the diagonal factor (default I).
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    f: Fraction
    g: Fraction
    h: Fraction
    i: Fraction
    j: Fraction
    k: Fraction
    l: Fraction
    n: int = 4
    rest_lower: tuple | None = None
    rest_upper: tuple | None = None
    diag: tuple | None = None

    def __post_init__(self):
        for name in S_NAMES:
            v = Fraction(getattr(self, name))
            object.__setattr__(self, name, v)
            if v <= 0:
                raise DomainError(f"parameter {name} must be positive")
        if self.n < 4:
            raise InvalidOrder("the S matrix needs n >= 4")

    @classmethod
    def uniform(cls, value=1, n: int = 4, **kw) -> "SMatrixParams":
        return cls(*([value] * 12), n=n, **kw)

    @classmethod
    def random(cls, seed: int, magnitude: int = 9, n: int = 4, *, rest=False, diag=False) -> "SMatrixParams":
        rng = Stream(seed, 0x5)
        named = [rng.rational(magnitude) for _ in S_NAMES]
        k = comb(n, 2)
        kw = {}
        if rest:
            kw["rest_lower"] = tuple(rng.rational(magnitude) for _ in range(k - 6))
            kw["rest_upper"] = tuple(rng.rational(magnitude) for _ in range(k - 6))
        if diag:
            kw["diag"] = tuple(rng.rational(magnitude) for _ in range(n))
        return cls(*named, n=n, **kw)

    def values(self) -> dict[str, Fraction]:
        return {name: getattr(self, name) for name in S_NAMES}


def named_slots(n: int) -> tuple[dict[str, int], dict[str, int]]:
    """0-based parameter slots (t - 1) of the twelve named weights.

    The lower strands G_{n-3}, G_{n-2}, G_{n-1} start with L_{n-2}, L_{n-1},
    L_n; their top edges carry ``a``; ``b, c``; ``d, e, f``.  Upper strands
    mirror this with ``l``; ``k, j``; ``i, h, g``.
    """
    def start(g):
        return g * (g - 1) // 2

    lower = {
        "a": start(n - 3),
        "b": start(n - 2), "c": start(n - 2) + 1,
        "d": start(n - 1), "e": start(n - 1) + 1, "f": start(n - 1) + 2,
    }
    upper = {
        "l": start(n - 3),
        "k": start(n - 2), "j": start(n - 2) + 1,
        "i": start(n - 1), "h": start(n - 1) + 1, "g": start(n - 1) + 2,
    }
    return lower, upper


def s_matrix_network_params(p: SMatrixParams) -> FactorizationParams:
    n = p.n
    k = comb(n, 2)
    lower_slots, upper_slots = named_slots(n)
    vals = p.values()

    def fill(slots, rest):
        out: list = [None] * k
        for name, t in slots.items():
            out[t] = vals[name]
        free = [t for t in range(k) if out[t] is None]
        rest = rest if rest is not None else [1] * len(free)
        if len(rest) != len(free):
            raise ShapeError(f"expected {len(free)} remaining parameters, got {len(rest)}")
        for t, v in zip(free, rest):
            out[t] = v
        return out

    diag = p.diag if p.diag is not None else [1] * n
    return FactorizationParams.from_values(n, fill(lower_slots, p.rest_lower), fill(upper_slots, p.rest_upper), diag)


def s_index_sets(n: int) -> list[list[int]]:
    head = list(range(1, n - 2))
    return [
        head + [n - 2],
        head + [n - 1],
        head + [n],
        list(range(1, n - 4 + 1)) + [n - 2, n - 1],
    ]


def build_s_matrix(p: SMatrixParams) -> tuple[ExactMatrix, ExactMatrix]:
    """The network matrix ``A`` of order n and ``S = [det A[S_i, S_j]]``."""
    A = assemble(s_matrix_network_params(p))
    sets = s_index_sets(p.n)
    S = ExactMatrix([[minor(A, r, c) for c in sets] for r in sets])
    return S, A


def s_entry_formulas(p: SMatrixParams) -> ExactMatrix:
    """Closed-form S entries for a unit diagonal factor."""
    a, b, c, d, e, f, g, h, i, j, k, l = (p.values()[x] for x in S_NAMES)
    return ExactMatrix([
        [1, h + k, h * i, j * h + l * h + l * k],
        [b + e, b * h + e * h + b * k + e * k + 1, b * h * i + e * h * i + i,
         b * h * j + e * h * j + b * h * l + e * h * l + b * k * l + e * k * l + g + j + l],
        [d * e, d * e * h + d * e * k + d, d * e * h * i + d * i + 1,
         d * e * h * j + d * e * h * l + d * e * k * l + d * g + d * j + d * l],
        [a * b + a * e + c * e,
         a * b * h + a * e * h + c * e * h + a * b * k + a * e * k + c * e * k + a + c + f,
         a * b * h * i + a * e * h * i + c * e * h * i + a * i + c * i + f * i,
         a * b * h * j + a * e * h * j + c * e * h * j + a * b * h * l + a * e * h * l + c * e * h * l
         + a * b * k * l + a * e * k * l + c * e * k * l + a * g + c * g + f * g + a * j + c * j + f * j
         + a * l + c * l + f * l + 1],
    ])


# (rows, cols, sign) of the eight displayed 3x3 minors of S.
S_DISPLAYED = (
    ((1, 2, 3), (1, 3, 4), -1),
    ((1, 2, 3), (2, 3, 4), -1),
    ((1, 2, 4), (1, 3, 4), +1),
    ((1, 2, 4), (2, 3, 4), +1),
    ((1, 3, 4), (1, 2, 3), -1),
    ((2, 3, 4), (1, 2, 3), -1),
    ((1, 3, 4), (1, 2, 4), +1),
    ((2, 3, 4), (1, 2, 4), +1),
)


def s_displayed_formulas(p: SMatrixParams) -> list[Fraction]:
    """Closed forms of the eight displayed minors (unit diagonal factor)."""
    a, b, c, d, e, f, g, h, i, j, k, l = (p.values()[x] for x in S_NAMES)
    return [
        -g - j - l,
        -g * h - g * k - j * k,
        i,
        i * k,
        -a - c - f,
        -b * c - b * f - e * f,
        d,
        b * d,
    ]
