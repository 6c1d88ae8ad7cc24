"""Piecewise-linear functions on a fan and infinite-family detection.

A function linear on every maximal cone is stored by its ray values. The
search looks for a non-linear such function vanishing at one ray on every
cone; when it exists, translating it sweeps out infinitely many classes
with no cohomology at all, and the report classifies the fan accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Optional, Sequence

from .cohomline import box_classes, is_h_trivial, outside_all_interiors
from .exactlin import (
    DEFAULT_CAP,
    RatVector,
    Rational,
    affine_dim,
    rat_vector,
    rational_kernel,
    solve_square,
)
from .fan import StackyFan, collinear_pairs, neighborhood, parallel_rays
from .picard import LineBundleClass, class_of

INFINITELY_MANY = "InfinitelyMany"
FINITELY_MANY = "FinitelyMany"
UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class PLFunction:
    """A function determined by its values on the rays, linear per cone."""

    values: RatVector

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def scaled(self, k: Rational) -> "PLFunction":
        return PLFunction(tuple(Fraction(k) * v for v in self.values))


def pl_function(values: Sequence[Rational]) -> PLFunction:
    return PLFunction(rat_vector(values))


@dataclass(frozen=True)
class LambdaPolytope:
    """The per-cone linear parts of a function, with their affine span."""

    forms: tuple[RatVector, ...]
    dim: int


def _cone_order(fan: StackyFan) -> list[frozenset[int]]:
    return sorted(fan.max_cones, key=lambda c: tuple(sorted(c)))


def cone_linear_part(
    fan: StackyFan, psi: PLFunction, sigma: frozenset[int]
) -> RatVector:
    """The unique form agreeing with psi on the rays of one maximal cone."""
    idx = sorted(sigma)
    a = [[Fraction(fan.rays[i - 1][j]) for j in range(fan.rank)] for i in idx]
    b = [psi.values[i - 1] for i in idx]
    return solve_square(a, b)


def lambda_polytope(fan: StackyFan, psi: PLFunction) -> LambdaPolytope:
    forms = tuple(cone_linear_part(fan, psi, c) for c in _cone_order(fan))
    return LambdaPolytope(forms=forms, dim=affine_dim(forms))


def is_linear(fan: StackyFan, psi: PLFunction) -> bool:
    return lambda_polytope(fan, psi).dim == 0


def degenerate_space(fan: StackyFan, s: int) -> tuple[tuple[RatVector, ...], int]:
    """Basis and dimension of the value vectors whose linear parts kill v_s.

    Each maximal cone contributes one linear constraint on the value
    vector c: the cone's form, evaluated at v_s, must vanish.
    """
    if not 1 <= s <= fan.nrays:
        raise ValueError(f"ray index {s} out of range")
    m, n = fan.rank, fan.nrays
    vs = [Fraction(x) for x in fan.rays[s - 1]]
    rows = []
    for sigma in _cone_order(fan):
        idx = sorted(sigma)
        # coefficients u with u . c|_sigma = (form of c on sigma)(v_s):
        # solve the transposed cone system at v_s, then scatter
        at = [
            [Fraction(fan.rays[i - 1][j]) for i in idx] for j in range(m)
        ]
        u = solve_square(at, vs)
        row = [Fraction(0)] * n
        for k, i in enumerate(idx):
            row[i - 1] = u[k]
        rows.append(row)
    basis = rational_kernel(rows, n)
    return basis, len(basis)


def _to_integer_values(vec: RatVector) -> RatVector:
    denom = lcm(*(x.denominator for x in vec)) if vec else 1
    ints = [int(x * denom) for x in vec]
    g = reduce(gcd, ints, 0)
    if g > 1:
        ints = [x // g for x in ints]
    return rat_vector(ints)


def find_degenerate_psi(fan: StackyFan) -> Optional[tuple[int, PLFunction]]:
    """The first ray carrying a non-linear vanishing function, if any.

    Rays are tried in ascending order; the first kernel basis vector
    outside the linear subspace is scaled to coprime integer values.
    """
    m = fan.rank
    for s in range(1, fan.nrays + 1):
        basis, dim = degenerate_space(fan, s)
        if dim <= m - 1:
            continue
        for vec in basis:
            cand = PLFunction(vec)
            if not is_linear(fan, cand):
                psi = PLFunction(_to_integer_values(vec))
                assert lambda_polytope(fan, psi).dim < m
                return s, psi
        raise AssertionError("kernel above the linear dimension must leave it")
    return None


def family_class(
    fan: StackyFan, s: int, psi: PLFunction, r: int
) -> LineBundleClass:
    """The class with coefficients r*psi(v_i) off the ray s and -1 at s."""
    if not psi.is_integral:
        raise ValueError("family construction needs integer psi values")
    forms = [cone_linear_part(fan, psi, c) for c in _cone_order(fan)]
    vs = fan.rays[s - 1]
    if any(sum(f[j] * vs[j] for j in range(fan.rank)) != 0 for f in forms):
        raise ValueError("psi must vanish at the chosen ray on every cone")
    a = [int(r) * int(psi.values[i - 1]) for i in range(1, fan.nrays + 1)]
    a[s - 1] = -1
    return class_of(fan, a)


def normalize_at_ray(fan: StackyFan, f_values: PLFunction, s: int) -> PLFunction:
    """Subtract a generic form agreeing with f at v_s.

    The result g vanishes at v_s and is nonzero at every ray off the line
    through v_s; a globally linear input collapses to the zero function.
    """
    if not 1 <= s <= fan.nrays:
        raise ValueError(f"ray index {s} out of range")
    m, n = fan.rank, fan.nrays
    vs = fan.rays[s - 1]
    fs = f_values.values[s - 1]
    if is_linear(fan, f_values):
        w0 = cone_linear_part(fan, f_values, _cone_order(fan)[0])
        return PLFunction(
            tuple(
                f_values.values[i] - sum(w0[j] * fan.rays[i][j] for j in range(m))
                for i in range(n)
            )
        )
    j0 = next(j for j in range(m) if vs[j] != 0)
    m0 = [Fraction(0)] * m
    m0[j0] = Fraction(fs, vs[j0])
    kernel = rational_kernel([[Fraction(x) for x in vs]], m)
    off_line = [
        i for i in range(1, n + 1) if not parallel_rays(fan.rays[i - 1], vs)
    ]
    q = 0
    while True:
        q += 1
        mq = list(m0)
        for t, k in enumerate(kernel):
            c = Fraction(1, q ** (t + 1))
            mq = [mq[j] + c * k[j] for j in range(m)]
        vals = tuple(
            f_values.values[i - 1]
            - sum(mq[j] * fan.rays[i - 1][j] for j in range(m))
            for i in range(1, n + 1)
        )
        if all(vals[i - 1] != 0 for i in off_line):
            return PLFunction(vals)


def sign_changes(fan: StackyFan, g: PLFunction, s: int) -> int:
    """Sign alternations of g around the link cycle of the ray s.

    Signs partition values into non-negative and negative. Requires rank 3,
    a vanishing value at s, and nonzero values on the cycle.
    """
    if fan.rank != 3:
        raise ValueError("sign counting needs a rank 3 fan")
    nb = neighborhood(fan, s)
    if nb.cycle is None:
        raise ValueError(f"link of ray {s} is not a single cycle")
    if g.values[s - 1] != 0:
        raise ValueError("the function must vanish at the chosen ray")
    vals = [g.values[i - 1] for i in nb.cycle]
    if any(v == 0 for v in vals):
        raise ValueError("zero value on the link cycle")
    classes = [0 if v >= 0 else 1 for v in vals]
    k = len(classes)
    return sum(1 for t in range(k) if classes[t] != classes[(t + 1) % k])


@dataclass(frozen=True)
class CriterionReport:
    """Evidence bundle for the finite-or-infinite classification."""

    collinear_pair_count: int
    degenerate_psi: Optional[tuple[int, PLFunction]]
    statement3_witness: Optional[LineBundleClass]
    sampled_family_checks: tuple[tuple[int, bool], ...]
    verdict: str


def criterion_report(
    fan: StackyFan,
    search_box: Sequence = (-3, 3),
    r_range: tuple[int, int] = (-5, 5),
    cap: int = DEFAULT_CAP,
) -> CriterionReport:
    pairs = collinear_pairs(fan)
    found = find_degenerate_psi(fan)

    witness = None
    for cls in box_classes(fan, search_box):
        if not any(cls.free) and not any(cls.torsion):
            continue
        if outside_all_interiors(fan, cls.raw):
            witness = cls
            break

    checks: list[tuple[int, bool]] = []
    if found is not None:
        s, psi = found
        lo, hi = r_range
        for r in range(lo, hi + 1):
            checks.append((r, is_h_trivial(fan, family_class(fan, s, psi, r).raw, cap)))

    if found is not None:
        verdict = INFINITELY_MANY
    elif fan.rank == 3 and len(pairs) <= 1:
        verdict = FINITELY_MANY
    else:
        verdict = UNDETERMINED
    return CriterionReport(
        collinear_pair_count=len(pairs),
        degenerate_psi=found,
        statement3_witness=witness,
        sampled_family_checks=tuple(checks),
        verdict=verdict,
    )
