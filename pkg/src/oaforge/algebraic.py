"""Sylvester matrices and generator-column constructions over finite fields.

Every constructor re-verifies its own output (strength and resolvable
projection) before returning; the theoretical guarantees behind the
constructions are treated as claims under test, never trusted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .arrays import LevelProfile, SymbolMatrix, verify_strength
from .errors import VerificationError
from .expand import ResolvableProjection, check_resolvable_projection
from .gf import Field, make_field, prime_power

SYLVESTER_MAX_N = 10
INDEPENDENCE_CHECK_CAP = 10**7


# -- Sylvester / Hadamard ------------------------------------------------------


def sylvester(n: int) -> np.ndarray:
    """The +-1 character matrix of Z_2^n: entry (x, y) = (-1)^(x . y) with
    rows/columns indexed by Z_2^n in lexicographic order.  Also built as the
    n-fold Kronecker power of the order-2 matrix; the two must agree."""
    if not 1 <= n <= SYLVESTER_MAX_N:
        raise ValueError(f"n must be in [1, {SYLVESTER_MAX_N}], got {n}")
    idx = np.arange(1 << n, dtype=np.uint32)
    bits = np.bitwise_count(idx[:, None] & idx[None, :])
    direct = (1 - 2 * (bits & 1)).astype(np.int8)
    s1 = np.array([[1, 1], [1, -1]], dtype=np.int8)
    power = s1
    for _ in range(n - 1):
        power = np.kron(power, s1).astype(np.int8)
    if not np.array_equal(direct, power):
        raise VerificationError("inner-product and Kronecker constructions disagree")
    return direct


def _label_order(n: int, include_zero: bool) -> list[int]:
    """Column labels with the resolvable ones first: (zero label,) then the n
    weight-one labels ascending, then all remaining labels ascending."""
    singles = [1 << i for i in range(n)]
    rest = [x for x in range(1 << n) if x != 0 and x not in set(singles)]
    head = [0] if include_zero else []
    return head + singles + rest


def sylvester_oa2(n: int, k: int) -> tuple[SymbolMatrix, ResolvableProjection]:
    """Binary strength-2 array from the order-2^n Sylvester matrix: drop the
    all-zero-labeled column, map +1 -> 0 and -1 -> 1.  The n weight-one
    columns project bijectively, so the result expands to a large set with
    M = 2^(k-n)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not n <= k <= (1 << n) - 1:
        raise ValueError(f"k must be in [{n}, {(1 << n) - 1}], got {k}")
    s = sylvester(n)
    labels = _label_order(n, include_zero=False)[:k]
    cells = ((1 - s[:, labels]) // 2).astype(np.int32)
    a = SymbolMatrix(LevelProfile([2] * k), cells, t=2)
    proj = ResolvableProjection(tuple(range(n)), a.n)
    _self_check(a, 2, proj)
    return a, proj


def sylvester_oa3(n: int, k: int) -> tuple[SymbolMatrix, ResolvableProjection]:
    """Binary strength-3 array: the order-2^n Sylvester matrix stacked over
    its symbol-swapped copy, keeping the all-zero column.  The zero column
    plus the n weight-one columns project bijectively."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not n + 1 <= k <= (1 << n):
        raise ValueError(f"k must be in [{n + 1}, {1 << n}], got {k}")
    s = sylvester(n)
    labels = _label_order(n, include_zero=True)[:k]
    top = (1 - s[:, labels]) // 2
    cells = np.vstack([top, 1 - top]).astype(np.int32)
    a = SymbolMatrix(LevelProfile([2] * k), cells, t=3)
    proj = ResolvableProjection(tuple(range(n + 1)), a.n)
    _self_check(a, 3, proj)
    return a, proj


def _self_check(a: SymbolMatrix, t: int, proj: ResolvableProjection):
    report = verify_strength(a, t)
    if not report.ok:
        raise VerificationError(
            f"constructed array failed its strength-{t} check", report
        )
    ok, why = check_resolvable_projection(a, proj.columns)
    if not ok:
        raise VerificationError(f"projection {proj.columns} not resolvable: {why}")


# -- linear algebra over a field ----------------------------------------------


def field_rank(field: Field, vectors) -> int:
    """Rank of a list of equal-length column vectors over the field."""
    rows = [list(v) for v in zip(*vectors)]  # to row-major
    n_cols = len(vectors)
    rank = 0
    col = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [field.sub(x, field.mul(f, y))
                           for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def field_det(field: Field, matrix) -> int:
    """Determinant of a square matrix (list of rows) over the field."""
    m = [list(row) for row in matrix]
    n = len(m)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = field.neg(det)
        det = field.mul(det, m[col][col])
        inv = field.inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = field.mul(inv, m[r][col])
                m[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[r], m[col])]
    return det


# -- generator columns ---------------------------------------------------------


@dataclass(frozen=True)
class GeneratorColumns:
    """l column vectors in F_q^m, any t of them linearly independent, with
    some m of them spanning."""

    field: Field
    m: int
    columns: tuple[tuple[int, ...], ...]
    t: int


def verify_generator_columns(gc: GeneratorColumns) -> tuple[int, ...] | None:
    """First dependent t-subset in colex order, or None when all are
    independent (exhaustive; callers keep C(l, t) within the check cap)."""
    l = len(gc.columns)
    if comb(l, gc.t) > INDEPENDENCE_CHECK_CAP:
        raise VerificationError(
            f"independence check needs {comb(l, gc.t)} subsets, cap is"
            f" {INDEPENDENCE_CHECK_CAP}"
        )
    for sub in itertools.combinations(range(l), gc.t):
        if field_rank(gc.field, [gc.columns[j] for j in sub]) < gc.t:
            return sub
    return None


def linear_oa(gc: GeneratorColumns, k: int) -> tuple[SymbolMatrix, ResolvableProjection]:
    """Rows x . M for all x in F_q^m, restricted to the first k columns after
    rotating m independent columns to the front.  N = q^m, strength t, and
    the leading m columns project bijectively (M = q^(k-m) after expansion)."""
    field = gc.field
    q = field.q
    m = gc.m
    if not gc.t <= m <= k <= len(gc.columns):
        raise ValueError(
            f"need t={gc.t} <= m={m} <= k={k} <= l={len(gc.columns)}"
        )
    bad = verify_generator_columns(gc)
    if bad is not None:
        raise VerificationError(f"columns {bad} are linearly dependent")
    # greedy basis in construction order, rotated to the front
    basis: list[int] = []
    for j in range(len(gc.columns)):
        if field_rank(field, [gc.columns[i] for i in basis + [j]]) == len(basis) + 1:
            basis.append(j)
            if len(basis) == m:
                break
    if len(basis) < m:
        raise VerificationError(f"columns have rank {len(basis)} < m = {m}")
    order = basis + [j for j in range(len(gc.columns)) if j not in set(basis)]
    chosen = [gc.columns[j] for j in order[:k]]

    digits = np.indices((q,) * m).reshape(m, -1).T.astype(np.int32)
    add, mul = field.add_table, field.mul_table
    cells = np.zeros((q**m, k), dtype=np.int32)
    for jc, col in enumerate(chosen):
        acc = np.zeros(q**m, dtype=np.int32)
        for i in range(m):
            if col[i]:
                acc = add[acc, mul[digits[:, i], col[i]]]
        cells[:, jc] = acc
    a = SymbolMatrix(LevelProfile([q] * k), cells, t=gc.t)
    proj = ResolvableProjection(tuple(range(m)), a.n)
    _self_check(a, gc.t, proj)
    return a, proj


def projective_columns(q: int, n: int) -> GeneratorColumns:
    """One representative per projective point of F_q^n (first nonzero
    coordinate 1), in lexicographic coordinate order: (q^n - 1)/(q - 1)
    pairwise independent columns."""
    if n < 2:
        raise ValueError("n must be >= 2")
    field = make_field(*prime_power(q))
    cols = [
        v
        for v in itertools.product(range(q), repeat=n)
        if any(v) and next(x for x in v if x) == 1
    ]
    gc = GeneratorColumns(field, n, tuple(cols), 2)
    bad = verify_generator_columns(gc)
    if bad is not None:
        raise VerificationError(f"projective columns {bad} dependent")
    return gc


def bush_columns(q: int, t: int) -> GeneratorColumns:
    """Moment-curve columns (1, c, c^2, ..., c^(t-1)) for every c, plus
    (0, ..., 0, 1); for even q at t = 3 also (0, 1, 0).  Any t columns are
    independent (Vandermonde), giving OA(q^t, l, q, t) at index 1."""
    field = make_field(*prime_power(q))
    if not 2 <= t <= q + 1:
        raise ValueError(f"t must be in [2, {q + 1}], got {t}")
    cols = [tuple(field.pow(c, i) for i in range(t)) for c in field.elements()]
    cols.append((0,) * (t - 1) + (1,))
    if field.p == 2 and t == 3:
        cols.append((0, 1, 0))
    gc = GeneratorColumns(field, t, tuple(cols), t)
    bad = verify_generator_columns(gc)
    if bad is not None:
        raise VerificationError(f"moment-curve columns {bad} dependent")
    return gc


# -- the strength-3 matrix over q^2 + 1 columns --------------------------------


@dataclass(frozen=True)
class QuadraticCoefficient:
    """Coefficient a for which x^2 + a*x*y + y^2 vanishes only at the origin."""

    field: Field
    a: int


def quad_coefficient(q: int) -> QuadraticCoefficient:
    """Smallest (by encoding) a outside {-(z + 1/z) : z nonzero}; the
    exhaustive no-nontrivial-zero check is run before returning."""
    if q < 3:
        raise ValueError("q must be a prime power >= 3")
    field = make_field(*prime_power(q))
    forbidden = {field.neg(field.add(z, field.inv(z))) for z in range(1, q)}
    a = next(x for x in field.elements() if x not in forbidden)
    for x in field.elements():
        for y in field.elements():
            if (x, y) != (0, 0) and _g(field, a, x, y) == 0:
                raise VerificationError(f"quadratic vanished at ({x}, {y}) with a={a}")
    return QuadraticCoefficient(field, a)


def _g(field: Field, a: int, x: int, y: int) -> int:
    xx = field.mul(x, x)
    yy = field.mul(y, y)
    axy = field.mul(a, field.mul(x, y))
    return field.neg(field.add(xx, field.add(axy, yy)))


def q4_matrix(q: int) -> GeneratorColumns:
    """The 4 x (q^2 + 1) matrix of columns (0,0,1,0) and
    (x, y, -(x^2+a*x*y+y^2), 1) over all (x, y), any 3 of which are
    independent.  Expanding its strength-3 array partitions the q^k universe."""
    qc = quad_coefficient(q)
    field = qc.field
    cols = [(0, 0, 1, 0)]
    for u in field.elements():
        for v in field.elements():
            cols.append((u, v, _g(field, qc.a, u, v), 1))
    gc = GeneratorColumns(field, 4, tuple(cols), 3)
    bad = verify_generator_columns(gc)
    if bad is not None:
        raise VerificationError(f"columns {bad} dependent; construction invalid")
    anchor = [cols[0], cols[1], cols[2], cols[q + 1]]
    det = field_det(field, list(zip(*anchor)))
    if det == 0:
        raise VerificationError("anchor columns {0,1,2,q+1} are singular")
    return gc
