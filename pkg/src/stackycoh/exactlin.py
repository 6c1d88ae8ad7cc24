"""Exact integer and rational linear algebra.

Everything here runs on Python ints and fractions.Fraction; no floating
point enters anywhere. The module provides the normal forms, kernels and
the Fourier-Motzkin machinery that the rest of the package is built on:
Smith normal form with unimodular transforms, reduced-echelon kernels,
affine dimension, exact linear-inequality feasibility with witnesses, and
lattice-point enumeration with recession detection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]
RatVector = tuple[Fraction, ...]
RatMatrix = tuple[RatVector, ...]

Rational = Union[int, Fraction]

GE = ">="
GT = ">"
EQ = "=="
RELATIONS = (GE, GT, EQ)

DEFAULT_CAP = 10**6


class ExactLinError(Exception):
    pass


class SingularMatrixError(ExactLinError):
    pass


# ---------------------------------------------------------------------------
# matrix and vector helpers


def int_matrix(rows: Iterable[Sequence[int]]) -> IntMatrix:
    """Build a rectangular integer matrix, checking row lengths agree."""
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out[1:]):
        raise ValueError("matrix rows must have equal length")
    return out


def rat_vector(xs: Iterable[Rational]) -> RatVector:
    return tuple(Fraction(x) for x in xs)


def rat_matrix(rows: Iterable[Sequence[Rational]]) -> RatMatrix:
    out = tuple(rat_vector(row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out[1:]):
        raise ValueError("matrix rows must have equal length")
    return out


def dot(x: Sequence[Rational], y: Sequence[Rational]) -> Fraction:
    if len(x) != len(y):
        raise ValueError("dot of vectors with different lengths")
    return sum((Fraction(a) * Fraction(b) for a, b in zip(x, y)), Fraction(0))


def mat_vec(a: Sequence[Sequence[Rational]], x: Sequence[Rational]) -> RatVector:
    return tuple(dot(row, x) for row in a)


def mat_mul_int(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum(ra[k] * b[k][j] for k in range(len(b))) for j in range(cols))
        for ra in a
    )


# ---------------------------------------------------------------------------
# Smith normal form


def _swap_rows(m, t, i):
    m[t], m[i] = m[i], m[t]


def _add_row(m, dst, src, k):
    row_s = m[src]
    row_d = m[dst]
    for j in range(len(row_d)):
        row_d[j] += k * row_s[j]


def _swap_cols(m, t, j):
    for row in m:
        row[t], row[j] = row[j], row[t]


def _add_col(m, dst, src, k):
    for row in m:
        row[dst] += k * row[src]


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns (S, U, V) with U*a*V = S.

    S is diagonal with non-negative entries d_1 | d_2 | ... and U, V are
    unimodular (every operation used is a swap, a negation or an integer
    shear, so det U, det V are +-1). The identity U*a*V == S is re-checked
    on every call before returning.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    s = [list(row) for row in a]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    t = 0
    while t < min(nrows, ncols):
        piv = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                e = s[i][j]
                if e != 0 and (piv is None or abs(e) < abs(s[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            _swap_rows(s, t, piv[0])
            _swap_rows(u, t, piv[0])
        if piv[1] != t:
            _swap_cols(s, t, piv[1])
            _swap_cols(v, t, piv[1])
        while True:
            dirty = False
            for i in range(nrows):
                if i == t or s[i][t] == 0:
                    continue
                q = s[i][t] // s[t][t]
                _add_row(s, i, t, -q)
                _add_row(u, i, t, -q)
                if s[i][t] != 0:
                    # remainder is smaller than the pivot; promote it
                    _swap_rows(s, t, i)
                    _swap_rows(u, t, i)
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(ncols):
                if j == t or s[t][j] == 0:
                    continue
                q = s[t][j] // s[t][t]
                _add_col(s, j, t, -q)
                _add_col(v, j, t, -q)
                if s[t][j] != 0:
                    _swap_cols(s, t, j)
                    _swap_cols(v, t, j)
                    dirty = True
                    break
            if dirty:
                continue
            if any(s[i][t] != 0 for i in range(nrows) if i != t):
                continue
            bad = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if s[i][j] % s[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # pull the offending row up so the pivot can shrink to the gcd
            _add_row(s, t, bad, 1)
            _add_row(u, t, bad, 1)
        t += 1

    for i in range(min(nrows, ncols)):
        if s[i][i] < 0:
            for j in range(ncols):
                s[i][j] = -s[i][j]
            for j in range(nrows):
                u[i][j] = -u[i][j]

    s_t = tuple(tuple(row) for row in s)
    u_t = tuple(tuple(row) for row in u)
    v_t = tuple(tuple(row) for row in v)
    if mat_mul_int(mat_mul_int(u_t, a), v_t) != s_t:
        raise AssertionError("smith normal form transform identity failed")
    return s_t, u_t, v_t


# ---------------------------------------------------------------------------
# rational echelon forms


def rref(rows: Sequence[Sequence[Rational]], ncols: Optional[int] = None):
    """Reduced row echelon form over Q. Returns (rows, pivot columns)."""
    work = [list(map(Fraction, r)) for r in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = Fraction(1) / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work, tuple(pivots)


def rat_rank(rows: Sequence[Sequence[Rational]]) -> int:
    return len(rref(rows)[1])


def rational_kernel(a: Sequence[Sequence[Rational]], ncols: Optional[int] = None) -> tuple[RatVector, ...]:
    """Basis of {x : a.x = 0} over Q, from the reduced echelon form.

    Basis vectors are listed in ascending free-column order, each with a 1
    in its free coordinate, so the result is deterministic.
    """
    if ncols is None:
        if not a:
            raise ValueError("cannot infer column count of an empty matrix")
        ncols = len(a[0])
    work, pivots = rref(a, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -Fraction(work[r][f])
        basis.append(tuple(vec))
    return tuple(basis)


def solve_square(a: Sequence[Sequence[Rational]], b: Sequence[Rational]) -> RatVector:
    """Solve a.x = b exactly for square nonsingular a."""
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("solve_square needs a square system")
    aug = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(a, b)]
    work, pivots = rref(aug, n)
    if len(pivots) != n:
        raise SingularMatrixError("matrix is singular")
    return tuple(work[i][n] for i in range(n))


def invert(a: Sequence[Sequence[Rational]]) -> RatMatrix:
    """Exact inverse of a square nonsingular matrix over Q."""
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    work, pivots = rref(aug, n)
    if len(pivots) != n:
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(work[i][n:]) for i in range(n))


def affine_dim(points: Sequence[Sequence[Rational]]) -> int:
    """Dimension of the affine hull of a point set (-1 for the empty set)."""
    pts = [rat_vector(p) for p in points]
    if not pts:
        return -1
    base = pts[0]
    diffs = [tuple(x - y for x, y in zip(p, base)) for p in pts[1:]]
    if not diffs:
        return 0
    return rat_rank(diffs)


# ---------------------------------------------------------------------------
# linear systems


@dataclass(frozen=True)
class Row:
    """One constraint: coeffs . x REL rhs, with REL one of >=, >, ==."""

    coeffs: RatVector
    rel: str
    rhs: Fraction


@dataclass(frozen=True)
class LinearSystem:
    nvars: int
    rows: tuple[Row, ...]


def _normalize_row(coeffs: Sequence[Fraction], rel: str, rhs: Fraction) -> Row:
    # scale by a positive rational so entries are coprime integers
    dens = [c.denominator for c in coeffs] + [rhs.denominator]
    scale = Fraction(math.lcm(*dens)) if dens else Fraction(1)
    ints = [int(c * scale) for c in coeffs] + [int(rhs * scale)]
    g = math.gcd(*(abs(x) for x in ints)) if any(ints) else 0
    if g > 1:
        ints = [x // g for x in ints]
    return Row(tuple(Fraction(x) for x in ints[:-1]), rel, Fraction(ints[-1]))


def system(nvars: int, rows: Iterable[tuple[Sequence[Rational], str, Rational]]) -> LinearSystem:
    """Assemble a LinearSystem from (coeffs, relation, rhs) triples."""
    built = []
    for coeffs, rel, rhs in rows:
        if rel not in RELATIONS:
            raise ValueError(f"unknown relation {rel!r}")
        cv = rat_vector(coeffs)
        if len(cv) != nvars:
            raise ValueError("row length does not match variable count")
        built.append(_normalize_row(cv, rel, Fraction(rhs)))
    return LinearSystem(nvars, tuple(built))


def _combine(p: Row, q: Row, j: int) -> Row:
    # positive combination cancelling variable j: (-q_j) * p + p_j * q
    a = -q.coeffs[j]
    b = p.coeffs[j]
    coeffs = tuple(a * x + b * y for x, y in zip(p.coeffs, q.coeffs))
    rhs = a * p.rhs + b * q.rhs
    rel = GT if (p.rel == GT or q.rel == GT) else GE
    return _normalize_row(coeffs, rel, rhs)


def _drop_var(row: Row, j: int) -> Row:
    coeffs = row.coeffs[:j] + row.coeffs[j + 1 :]
    return Row(coeffs, row.rel, row.rhs)


def fm_eliminate(sys: LinearSystem, var: int) -> LinearSystem:
    """Project out one variable by Fourier-Motzkin elimination.

    An equality row mentioning the variable is used for substitution first;
    otherwise all (lower bound, upper bound) pairs are combined, and a
    combination is strict whenever either parent is strict.
    """
    if not 0 <= var < sys.nvars:
        raise ValueError("variable index out of range")
    eq_idx = None
    for i, row in enumerate(sys.rows):
        if row.rel == EQ and row.coeffs[var] != 0:
            eq_idx = i
            break
    out: list[Row] = []
    if eq_idx is not None:
        e = sys.rows[eq_idx]
        c = e.coeffs[var]
        for i, row in enumerate(sys.rows):
            if i == eq_idx:
                continue
            f = row.coeffs[var]
            if f == 0:
                out.append(_drop_var(row, var))
            else:
                coeffs = tuple(x - (f / c) * y for x, y in zip(row.coeffs, e.coeffs))
                rhs = row.rhs - (f / c) * e.rhs
                nr = _normalize_row(coeffs, row.rel, rhs)
                out.append(_drop_var(nr, var))
        return LinearSystem(sys.nvars - 1, tuple(out))

    pos = [r for r in sys.rows if r.coeffs[var] > 0]
    neg = [r for r in sys.rows if r.coeffs[var] < 0]
    for row in sys.rows:
        if row.coeffs[var] == 0:
            out.append(_drop_var(row, var))
    for p in pos:
        for q in neg:
            out.append(_drop_var(_combine(p, q, var), var))
    return LinearSystem(sys.nvars - 1, tuple(out))


def _constant_rows_consistent(sys: LinearSystem) -> bool:
    for row in sys.rows:
        if any(c != 0 for c in row.coeffs):
            continue
        z = Fraction(0)
        if row.rel == GE and not z >= row.rhs:
            return False
        if row.rel == GT and not z > row.rhs:
            return False
        if row.rel == EQ and z != row.rhs:
            return False
    return True


def _strict_count(sys: LinearSystem, var: int) -> int:
    return sum(1 for r in sys.rows if r.rel == GT and r.coeffs[var] != 0)


def _var_bounds(sys: LinearSystem, var: int, values: dict[int, Fraction]):
    """Bounds on one variable after substituting known values.

    Returns (lower, lower_strict, upper, upper_strict) with None for an
    absent bound; every row must involve only `var` and valued variables.
    """
    lo = hi = None
    lo_strict = hi_strict = False
    for row in sys.rows:
        c = row.coeffs[var]
        rest = row.rhs - sum(
            row.coeffs[k] * values[k] for k in range(sys.nvars) if k != var and row.coeffs[k] != 0
        )
        if c == 0:
            continue
        bound = rest / c
        if row.rel == EQ:
            if lo is None or bound > lo or (bound == lo and not lo_strict):
                lo, lo_strict = bound, False
            if hi is None or bound < hi or (bound == hi and not hi_strict):
                hi, hi_strict = bound, False
            continue
        strict = row.rel == GT
        if c > 0:
            if lo is None or bound > lo or (bound == lo and strict):
                lo, lo_strict = bound, strict
        else:
            if hi is None or bound < hi or (bound == hi and strict):
                hi, hi_strict = bound, strict
    return lo, lo_strict, hi, hi_strict


def feasible(sys: LinearSystem) -> tuple[bool, Optional[RatVector]]:
    """Exact rational feasibility with a witness.

    Eliminates variables one at a time, always choosing the variable with
    the fewest strict rows (ties broken by lowest index), then rebuilds a
    witness by back-substitution through the recorded projections.
    """
    labels = list(range(sys.nvars))
    steps: list[tuple[LinearSystem, list[int], int]] = []
    work = sys
    while work.nvars > 0:
        pos = min(range(work.nvars), key=lambda j: (_strict_count(work, j), j))
        steps.append((work, labels[:], pos))
        work = fm_eliminate(work, pos)
        labels.pop(pos)
    if not _constant_rows_consistent(work):
        return False, None

    values: dict[int, Fraction] = {}
    for sys_t, labels_t, pos_t in reversed(steps):
        local = {
            j: values[lab]
            for j, lab in enumerate(labels_t)
            if j != pos_t
        }
        lo, lo_strict, hi, hi_strict = _var_bounds(sys_t, pos_t, local)
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = hi - 1
        elif hi is None:
            val = lo + 1
        elif lo == hi:
            if lo_strict or hi_strict:
                raise AssertionError("projection exactness violated")
            val = lo
        else:
            if lo > hi:
                raise AssertionError("projection exactness violated")
            val = (lo + hi) / 2
        values[labels_t[pos_t]] = val
    return True, tuple(values[k] for k in range(sys.nvars))


# ---------------------------------------------------------------------------
# lattice points


class PointsStatus(Enum):
    POINTS = "points"
    INFEASIBLE = "infeasible"
    CAP_EXCEEDED = "cap_exceeded"
    UNBOUNDED_WITH_LATTICE_POINT = "unbounded_with_lattice_point"


@dataclass(frozen=True)
class IntegerPoints:
    status: PointsStatus
    points: tuple[IntVector, ...] = ()
    recession: Optional[IntVector] = None


class _CapHit(Exception):
    pass


def _homogeneous(sys: LinearSystem) -> LinearSystem:
    rows = tuple(Row(r.coeffs, r.rel, Fraction(0)) for r in sys.rows)
    return LinearSystem(sys.nvars, rows)


@lru_cache(maxsize=None)
def _recession_ray(hom: LinearSystem) -> Optional[IntVector]:
    """A primitive integer recession direction, or None when the cone is {0}.

    Tries x_i >= 1 then -x_i >= 1 for each variable in order, so the result
    is deterministic.
    """
    for i in range(hom.nvars):
        for sign in (1, -1):
            probe = [Fraction(0)] * hom.nvars
            probe[i] = Fraction(sign)
            extra = Row(tuple(probe), GE, Fraction(1))
            ok, wit = feasible(LinearSystem(hom.nvars, hom.rows + (extra,)))
            if ok:
                assert wit is not None
                scale = math.lcm(*(f.denominator for f in wit))
                ints = [int(f * scale) for f in wit]
                g = math.gcd(*(abs(x) for x in ints))
                return tuple(x // g for x in ints)
    return None


def _unimodular_with_first_column(z: IntVector) -> IntMatrix:
    """A unimodular matrix whose first column is the primitive vector z."""
    col = tuple((zi,) for zi in z)
    s, u, v = smith_normal_form(col)
    if s[0][0] != 1:
        raise ValueError("direction vector must be primitive")
    # u * z * v = e1 with v = (+-1), so z = v * u^{-1} e1
    u_inv = invert(u)
    w_cols = [[int(u_inv[i][j]) * (1 if j > 0 else v[0][0]) for j in range(len(z))] for i in range(len(z))]
    w = tuple(tuple(row) for row in w_cols)
    if tuple(row[0] for row in w) != z:
        raise AssertionError("unimodular completion does not start with z")
    return w


def _transform(sys: LinearSystem, w: IntMatrix) -> LinearSystem:
    rows = []
    for r in sys.rows:
        coeffs = tuple(
            sum(r.coeffs[i] * w[i][j] for i in range(sys.nvars)) for j in range(sys.nvars)
        )
        rows.append(_normalize_row(coeffs, r.rel, r.rhs))
    return LinearSystem(sys.nvars, tuple(rows))


def _substitute(sys: LinearSystem, var: int, value: int) -> LinearSystem:
    rows = []
    for r in sys.rows:
        c = r.coeffs[var]
        coeffs = r.coeffs[:var] + r.coeffs[var + 1 :]
        rows.append(Row(coeffs, r.rel, r.rhs - c * value))
    return LinearSystem(sys.nvars - 1, tuple(rows))


class _Budget:
    __slots__ = ("left",)

    def __init__(self, cap: int):
        self.left = cap

    def spend(self, k: int = 1) -> None:
        self.left -= k
        if self.left < 0:
            raise _CapHit


def _outer_interval(sys: LinearSystem):
    """Exact bounds of the first variable's projection, or None if empty."""
    proj = sys
    for j in range(sys.nvars - 1, 0, -1):
        proj = fm_eliminate(proj, j)
    if not _constant_rows_consistent(proj):
        return None
    lo, lo_strict, hi, hi_strict = _var_bounds(proj, 0, {})
    return lo, hi


def _enumerate_bounded(sys: LinearSystem, budget: _Budget, prefix: IntVector, out: list[IntVector], stop_after_first: bool) -> None:
    if sys.nvars == 0:
        if _constant_rows_consistent(sys):
            out.append(prefix)
        return
    iv = _outer_interval(sys)
    if iv is None:
        return
    lo, hi = iv
    if lo is None or hi is None:
        raise AssertionError("bounded enumeration reached an unbounded interval")
    for t in range(math.ceil(lo), math.floor(hi) + 1):
        budget.spend()
        _enumerate_bounded(_substitute(sys, 0, t), budget, prefix + (t,), out, stop_after_first)
        if stop_after_first and out:
            return


def _has_integer_point(sys: LinearSystem, budget: _Budget) -> bool:
    ok, _ = feasible(sys)
    if not ok:
        return False
    if sys.nvars == 0:
        return True
    z = _recession_ray(_homogeneous(sys))
    if z is None:
        found: list[IntVector] = []
        _enumerate_bounded(sys, budget, (), found, stop_after_first=True)
        return bool(found)
    w = _unimodular_with_first_column(z)
    moved = _transform(sys, w)
    # the first variable now has no finite upper bound on any nonempty
    # fiber, so integer solvability reduces to the zero-coefficient rows
    reduced_rows = tuple(
        _drop_var(r, 0) for r in moved.rows if r.coeffs[0] == 0
    )
    if any(r.coeffs[0] != 0 and r.rel == EQ for r in moved.rows):
        raise AssertionError("recession direction must annihilate equalities")
    return _has_integer_point(LinearSystem(sys.nvars - 1, reduced_rows), budget)


def integer_points(sys: LinearSystem, cap: int = DEFAULT_CAP) -> IntegerPoints:
    """All integer solutions of a non-strict system, in lexicographic order.

    Result statuses:
      POINTS                        non-empty finite solution list
      INFEASIBLE                    no integer solution exists
      CAP_EXCEEDED                  more than `cap` candidates were visited
      UNBOUNDED_WITH_LATTICE_POINT  a lattice point plus a nonzero integer
                                    recession direction (infinitely many)
    """
    if any(r.rel == GT for r in sys.rows):
        raise ValueError("integer_points requires a non-strict system")
    if cap <= 0:
        return IntegerPoints(PointsStatus.CAP_EXCEEDED)
    budget = _Budget(cap)
    ok, _ = feasible(sys)
    if not ok:
        return IntegerPoints(PointsStatus.INFEASIBLE)
    if sys.nvars == 0:
        return IntegerPoints(PointsStatus.POINTS, ((),))
    try:
        z = _recession_ray(_homogeneous(sys))
        if z is not None:
            w = _unimodular_with_first_column(z)
            moved = _transform(sys, w)
            reduced_rows = tuple(_drop_var(r, 0) for r in moved.rows if r.coeffs[0] == 0)
            if _has_integer_point(LinearSystem(sys.nvars - 1, reduced_rows), budget):
                return IntegerPoints(PointsStatus.UNBOUNDED_WITH_LATTICE_POINT, (), z)
            return IntegerPoints(PointsStatus.INFEASIBLE)
        found: list[IntVector] = []
        _enumerate_bounded(sys, budget, (), found, stop_after_first=False)
    except _CapHit:
        return IntegerPoints(PointsStatus.CAP_EXCEEDED)
    if not found:
        return IntegerPoints(PointsStatus.INFEASIBLE)
    return IntegerPoints(PointsStatus.POINTS, tuple(found))


def has_integer_point(sys: LinearSystem, cap: int = DEFAULT_CAP) -> Optional[bool]:
    """Existence-only variant of integer_points; None when the cap is hit."""
    if any(r.rel == GT for r in sys.rows):
        raise ValueError("has_integer_point requires a non-strict system")
    try:
        return _has_integer_point(sys, _Budget(cap))
    except _CapHit:
        return None
