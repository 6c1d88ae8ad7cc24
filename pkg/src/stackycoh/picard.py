"""The class group of ray divisors modulo linear equivalence.

A class is a ray-indexed integer vector a, taken modulo the sublattice of
vectors (w . v_i)_i for integer w. Smith normal form of the ray matrix
gives canonical coordinates: torsion residues plus a free part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactlin import (
    IntMatrix,
    IntVector,
    Rational,
    invert,
    mat_vec,
    smith_normal_form,
)
from .fan import StackyFan


@dataclass(frozen=True)
class PicStructure:
    """Canonical coordinates on the class group of a fan.

    The group is Z^free_rank plus cyclic factors of the orders in
    ``torsion``. ``u`` maps raw vectors to canonical coordinates y = U a;
    entries of y at ``torsion_positions`` are read modulo the matching
    order, entries from ``free_offset`` on are free integers.
    """

    free_rank: int
    torsion: tuple[int, ...]
    torsion_positions: tuple[int, ...]
    free_offset: int
    diag: tuple[int, ...]
    u: IntMatrix
    u_inv: IntMatrix
    basis_rows: IntMatrix


@lru_cache(maxsize=None)
def pic_structure(fan: StackyFan) -> PicStructure:
    n, m = fan.nrays, fan.rank
    # columns are the rays; relations are the rows w -> (w . v_i)_i
    relation_cols = [list(fan.rays[i]) for i in range(n)]
    a = [[relation_cols[i][j] for j in range(m)] for i in range(n)]
    s, u, v = smith_normal_form(a)
    diag = tuple(s[i][i] for i in range(min(n, m)))
    assert all(d != 0 for d in diag), "ray matrix of a complete fan has full column rank"
    torsion = tuple(d for d in diag if d > 1)
    torsion_positions = tuple(i for i, d in enumerate(diag) if d > 1)
    u_inv = invert(u)
    return PicStructure(
        free_rank=n - m,
        torsion=torsion,
        torsion_positions=torsion_positions,
        free_offset=m,
        diag=diag,
        u=tuple(tuple(row) for row in u),
        u_inv=tuple(tuple(row) for row in u_inv),
        basis_rows=tuple(tuple(fan.rays[i][j] for i in range(n)) for j in range(m)),
    )


@dataclass(frozen=True)
class LineBundleClass:
    """A class in canonical coordinates, with one raw representative kept."""

    raw: IntVector
    free: IntVector
    torsion: IntVector


def class_of(fan: StackyFan, a: Sequence[int]) -> LineBundleClass:
    if len(a) != fan.nrays:
        raise ValueError("coefficient vector length must equal the ray count")
    raw = tuple(int(x) for x in a)
    st = pic_structure(fan)
    y = mat_vec([list(r) for r in st.u], list(raw))
    torsion = tuple(
        int(y[p]) % st.torsion[k] for k, p in enumerate(st.torsion_positions)
    )
    free = tuple(int(y[i]) for i in range(st.free_offset, fan.nrays))
    return LineBundleClass(raw=raw, free=free, torsion=torsion)


def class_from_canonical(
    fan: StackyFan, free: Sequence[int], torsion: Sequence[int] = ()
) -> LineBundleClass:
    """A raw representative with the given canonical coordinates."""
    st = pic_structure(fan)
    if len(free) != st.free_rank:
        raise ValueError(f"expected {st.free_rank} free coordinates")
    if len(torsion) != len(st.torsion):
        raise ValueError(f"expected {len(st.torsion)} torsion residues")
    y = [0] * fan.nrays
    for k, p in enumerate(st.torsion_positions):
        y[p] = int(torsion[k]) % st.torsion[k]
    for i, val in enumerate(free):
        y[st.free_offset + i] = int(val)
    raw = mat_vec([list(r) for r in st.u_inv], y)
    assert all(x == int(x) for x in raw)
    return class_of(fan, [int(x) for x in raw])


def classes_equal(fan: StackyFan, a: Sequence[int], b: Sequence[int]) -> bool:
    """Whether a - b is of the form (w . v_i)_i for an integer w."""
    if len(a) != fan.nrays or len(b) != fan.nrays:
        raise ValueError("coefficient vector length must equal the ray count")
    diff = [int(x) - int(y) for x, y in zip(a, b)]
    m = fan.rank
    # solve for w from m independent rays, then check all rays and integrality
    cols = _independent_rays(fan)
    sub = [[Fraction(fan.rays[i][j]) for j in range(m)] for i in cols]
    rhs = [Fraction(diff[i]) for i in cols]
    from .exactlin import solve_square

    w = solve_square(sub, rhs)
    if any(x.denominator != 1 for x in w):
        return False
    return all(
        sum(int(w[j]) * fan.rays[i][j] for j in range(m)) == diff[i]
        for i in range(fan.nrays)
    )


@lru_cache(maxsize=None)
def _independent_rays(fan: StackyFan) -> tuple[int, ...]:
    # any maximal cone gives rank-many independent rays (0-based here)
    cone = min(fan.max_cones, key=lambda c: tuple(sorted(c)))
    return tuple(i - 1 for i in sorted(cone))


def class_to_json(cls: LineBundleClass) -> dict:
    return {
        "raw": list(cls.raw),
        "canonical": {"free": list(cls.free), "torsion": list(cls.torsion)},
    }
