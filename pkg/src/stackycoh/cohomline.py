"""Cohomology of line bundle classes and H-triviality decisions.

Every computation reduces to sign systems over the fan's rays: a class a
and an index set I carve out the polyhedron of linear functionals whose
value pattern is non-negative exactly on I. Counting integer points of
the weak systems over the family Delta gives all cohomology dimensions.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from .exactlin import (
    DEFAULT_CAP,
    GE,
    GT,
    IntVector,
    LinearSystem,
    PointsStatus,
    feasible,
    has_integer_point,
    integer_points,
    system,
)
from .fan import StackyFan
from .homology import DEFAULT_DELTA_CAP, delta_family
from .picard import LineBundleClass, class_from_canonical, pic_structure


class PropernessError(Exception):
    pass


class CapExceededError(Exception):
    pass


def sign_polyhedron(
    fan: StackyFan, a: Sequence[int], index_set: Iterable[int], strictness: str = "weak"
) -> LinearSystem:
    """The polyhedron of functionals f whose sign pattern matches I.

    Weak: a_i + f(v_i) >= 0 on I and <= -1 off I (integer points matter).
    Strict: a_i + f(v_i) > 0 on I and < 0 off I (rational interior).
    """
    if len(a) != fan.nrays:
        raise ValueError("coefficient vector length must equal the ray count")
    if strictness not in ("weak", "strict"):
        raise ValueError(f"unknown strictness {strictness!r}")
    I = set(index_set)
    rows = []
    for i in range(1, fan.nrays + 1):
        v = fan.rays[i - 1]
        ai = int(a[i - 1])
        if strictness == "weak":
            if i in I:
                rows.append((v, GE, -ai))
            else:
                rows.append((tuple(-x for x in v), GE, ai + 1))
        else:
            if i in I:
                rows.append((v, GT, -ai))
            else:
                rows.append((tuple(-x for x in v), GT, ai))
    return system(fan.rank, rows)


def _weak_count(
    fan: StackyFan, a: Sequence[int], I: frozenset[int], cap: int
) -> int:
    res = integer_points(sign_polyhedron(fan, a, I, "weak"), cap)
    if res.status is PointsStatus.UNBOUNDED_WITH_LATTICE_POINT:
        raise PropernessError(
            f"infinite-dimensional contribution from index set {sorted(I)}"
        )
    if res.status is PointsStatus.CAP_EXCEEDED:
        raise CapExceededError(
            f"lattice point enumeration exceeded the cap {cap} on index set {sorted(I)}"
        )
    return len(res.points)


def cohomology(
    fan: StackyFan,
    a: Sequence[int],
    cap: int = DEFAULT_CAP,
    delta_cap: int = DEFAULT_DELTA_CAP,
) -> tuple[int, ...]:
    """Dimensions (h^0, ..., h^m) of the class with coefficients a.

    h^j collects, over the family Delta, the weak-system lattice point
    count times the reduced Betti number of C_I in degree m - j - 1.
    """
    m = fan.rank
    h = [0] * (m + 1)
    for I, betti in delta_family(fan, delta_cap).members:
        c = _weak_count(fan, a, I, cap)
        if c == 0:
            continue
        for j in range(m + 1):
            h[j] += c * betti[m - j]
    return tuple(h)


def first_forbidden(
    fan: StackyFan,
    a: Sequence[int],
    cap: int = DEFAULT_CAP,
    delta_cap: int = DEFAULT_DELTA_CAP,
) -> Optional[frozenset[int]]:
    """First index set in Delta whose weak system has an integer point."""
    for I, _ in delta_family(fan, delta_cap).members:
        ex = has_integer_point(sign_polyhedron(fan, a, I, "weak"), cap)
        if ex is None:
            raise CapExceededError(
                f"lattice point search exceeded the cap {cap} on index set {sorted(I)}"
            )
        if ex:
            return I
    return None


def is_h_trivial(
    fan: StackyFan,
    a: Sequence[int],
    cap: int = DEFAULT_CAP,
    delta_cap: int = DEFAULT_DELTA_CAP,
) -> bool:
    """Whether every cohomology dimension of the class vanishes."""
    return first_forbidden(fan, a, cap, delta_cap) is None


@dataclass(frozen=True)
class ForbiddenCone:
    """A witness that a class has cohomology: an index set plus a point."""

    index_set: frozenset[int]
    witness: IntVector


def forbidden_cone(
    fan: StackyFan,
    a: Sequence[int],
    cap: int = DEFAULT_CAP,
    delta_cap: int = DEFAULT_DELTA_CAP,
) -> Optional[ForbiddenCone]:
    for I, _ in delta_family(fan, delta_cap).members:
        res = integer_points(sign_polyhedron(fan, a, I, "weak"), cap)
        if res.status is PointsStatus.UNBOUNDED_WITH_LATTICE_POINT:
            raise PropernessError(
                f"infinite-dimensional contribution from index set {sorted(I)}"
            )
        if res.status is PointsStatus.CAP_EXCEEDED:
            raise CapExceededError(
                f"lattice point enumeration exceeded the cap {cap} on index set {sorted(I)}"
            )
        if res.points:
            return ForbiddenCone(index_set=I, witness=res.points[0])
    return None


def in_interior_ZI(
    fan: StackyFan,
    a: Sequence[int],
    index_set: Iterable[int],
    delta_cap: int = DEFAULT_DELTA_CAP,
) -> bool:
    """Whether some functional realizes strictly the sign pattern of I."""
    I = frozenset(index_set)
    if I not in delta_family(fan, delta_cap):
        raise ValueError(f"{sorted(I)} is not in the index family of the fan")
    ok, _ = feasible(sign_polyhedron(fan, a, I, "strict"))
    return ok


def outside_all_interiors(
    fan: StackyFan, a: Sequence[int], delta_cap: int = DEFAULT_DELTA_CAP
) -> bool:
    return not any(
        feasible(sign_polyhedron(fan, a, I, "strict"))[0]
        for I, _ in delta_family(fan, delta_cap).members
    )


def _normalize_box(
    fan: StackyFan, box: Sequence
) -> tuple[tuple[int, int], ...]:
    st = pic_structure(fan)
    if st.free_rank == 0:
        return ()
    if len(box) == 2 and all(isinstance(x, int) for x in box):
        box = [tuple(box)] * st.free_rank
    if len(box) != st.free_rank:
        raise ValueError(f"expected {st.free_rank} coordinate ranges")
    out = []
    for lo, hi in box:
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise ValueError(f"empty range {lo}:{hi}")
        out.append((lo, hi))
    return tuple(out)


def box_classes(fan: StackyFan, box: Sequence) -> list[LineBundleClass]:
    """Canonical classes in a free-coordinate box, lexicographic order.

    Every torsion residue combination is paired with every free point.
    """
    st = pic_structure(fan)
    ranges = _normalize_box(fan, box)
    out = []
    for free in product(*(range(lo, hi + 1) for lo, hi in ranges)):
        for torsion in product(*(range(d) for d in st.torsion)):
            out.append(class_from_canonical(fan, free, torsion))
    return out


def _scan_chunk(
    fan: StackyFan, raws: Sequence[IntVector], cap: int, delta_cap: int
) -> list[bool]:
    return [is_h_trivial(fan, raw, cap, delta_cap) for raw in raws]


def scan_h_trivial(
    fan: StackyFan,
    box: Sequence,
    cap: int = DEFAULT_CAP,
    delta_cap: int = DEFAULT_DELTA_CAP,
    workers: int = 1,
) -> tuple[LineBundleClass, ...]:
    """All H-trivial classes in a canonical-coordinate box, in scan order.

    The box bounds the free coordinates (one lo/hi pair per coordinate, or
    a single pair applied to all); every torsion residue combination is
    included. Order is lexicographic in (free, torsion).
    """
    classes = box_classes(fan, box)
    if workers <= 1 or len(classes) < 4:
        flags = _scan_chunk(fan, [c.raw for c in classes], cap, delta_cap)
    else:
        chunks: list[list[IntVector]] = [[] for _ in range(workers)]
        for idx, c in enumerate(classes):
            chunks[idx % workers].append(c.raw)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(
                    _scan_chunk,
                    [fan] * workers,
                    chunks,
                    [cap] * workers,
                    [delta_cap] * workers,
                )
            )
        flags = [False] * len(classes)
        for w in range(workers):
            for k, flag in enumerate(results[w]):
                flags[w + k * workers] = flag
    return tuple(c for c, ok in zip(classes, flags) if ok)
