"""Complete simplicial stacky fans: loading, validation, ray queries.

A fan is given by a free lattice rank, one chosen integer lattice point on
each ray, and the maximal cones as sets of ray indices. Ray indices are
1-based everywhere in this API; the JSON file format is 0-based.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .exactlin import (
    IntVector,
    dot,
    int_matrix,
    rat_rank,
    rational_kernel,
    solve_square,
)

COVERAGE_SAMPLES = 64
DEFAULT_SEED = 1069


class FanError(Exception):
    pass


class FanFormatError(FanError):
    """Raised when fan JSON cannot be parsed into a well-typed fan."""


class FanValidationError(FanError):
    """Raised when a well-typed fan fails a completeness or fan axiom."""


@dataclass(frozen=True)
class StackyFan:
    rank: int
    rays: tuple[IntVector, ...]
    max_cones: tuple[frozenset[int], ...]

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def ray(self, i: int) -> IntVector:
        """The lattice point on ray i (1-based)."""
        return self.rays[i - 1]


def make_fan(rank: int, rays: Iterable[Sequence[int]], max_cones: Iterable[Iterable[int]], seed: int = DEFAULT_SEED) -> StackyFan:
    """Build and validate a stacky fan from 1-based cone index sets."""
    fan = StackyFan(
        int(rank),
        tuple(tuple(int(x) for x in r) for r in rays),
        tuple(frozenset(int(i) for i in cone) for cone in max_cones),
    )
    validate(fan, seed=seed)
    return fan


# ---------------------------------------------------------------------------
# file format


def _reject_float(value: str):
    raise FanFormatError(f"non-integer number {value!r} in fan file")


def load_fan(text: bytes | str, seed: int = DEFAULT_SEED) -> StackyFan:
    """Parse and validate fan JSON: {"rank", "rays", "max_cones"}.

    Ray indices in the file are 0-based; any float literal is rejected so
    coordinates stay exact.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        data = json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except FanFormatError:
        raise
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FanFormatError(f"invalid fan JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FanFormatError("fan file must contain a JSON object")
    missing = {"rank", "rays", "max_cones"} - set(data)
    if missing:
        raise FanFormatError(f"fan file missing keys: {sorted(missing)}")
    rank = data["rank"]
    if isinstance(rank, bool) or not isinstance(rank, int):
        raise FanFormatError("rank must be an integer")
    rays = data["rays"]
    cones = data["max_cones"]
    if not isinstance(rays, list) or not all(isinstance(r, list) for r in rays):
        raise FanFormatError("rays must be a list of integer vectors")
    if not isinstance(cones, list) or not all(isinstance(c, list) for c in cones):
        raise FanFormatError("max_cones must be a list of index lists")
    for r in rays:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                raise FanFormatError("ray coordinates must be integers")
    n = len(rays)
    for c in cones:
        for i in c:
            if isinstance(i, bool) or not isinstance(i, int):
                raise FanFormatError("cone entries must be integers")
            if not 0 <= i < n:
                raise FanFormatError(f"cone ray index {i} out of range (0-based)")
    fan = StackyFan(
        rank,
        tuple(tuple(r) for r in rays),
        tuple(frozenset(i + 1 for i in c) for c in cones),
    )
    validate(fan, seed=seed)
    return fan


def fan_to_json(fan: StackyFan) -> str:
    """Canonical JSON serialization (0-based cone indices, sorted)."""
    payload = {
        "rank": fan.rank,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [sorted(i - 1 for i in cone) for cone in fan.max_cones],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def fan_fingerprint(fan: StackyFan) -> str:
    """Stable hex fingerprint of the canonical serialization."""
    return hashlib.sha256(fan_to_json(fan).encode("utf-8")).hexdigest()[:16]


# ---------------------------------------------------------------------------
# validation


def parallel_rays(v: Sequence[int], u: Sequence[int]) -> bool:
    n = len(v)
    return all(v[i] * u[j] == v[j] * u[i] for i in range(n) for j in range(i + 1, n))


def _facet_normal(fan: StackyFan, facet: frozenset[int]):
    rows = [fan.ray(i) for i in sorted(facet)]
    basis = rational_kernel(rows, ncols=fan.rank)
    if len(basis) != 1:
        raise FanValidationError("maximal cone not simplicial: facet span degenerate")
    return basis[0]


def validate(fan: StackyFan, seed: int = DEFAULT_SEED) -> None:
    """Check the fan axioms, naming the violated invariant on failure.

    Completeness is certified by facet pairing (every facet of a maximal
    cone shared by exactly two, with the opposite rays strictly separated)
    plus membership of pseudo-random rational directions in some cone.
    """
    m = fan.rank
    n = fan.nrays
    if m < 1:
        raise FanValidationError("rank must be at least 1")
    if n == 0:
        raise FanValidationError("fan has no rays")
    for r in fan.rays:
        if len(r) != m:
            raise FanValidationError("ray length does not match rank")
        if all(x == 0 for x in r):
            raise FanValidationError("zero ray")
    for i in range(n):
        for j in range(i + 1, n):
            if fan.rays[i] == fan.rays[j]:
                raise FanValidationError(f"duplicate ray vector at positions {i + 1}, {j + 1}")
            if parallel_rays(fan.rays[i], fan.rays[j]):
                di = dot(fan.rays[i], fan.rays[j])
                if di > 0:
                    raise FanValidationError(
                        f"rays {i + 1} and {j + 1} span the same 1-cone"
                    )
    if not fan.max_cones:
        raise FanValidationError("fan has no maximal cones")
    used: set[int] = set()
    for cone in fan.max_cones:
        if len(cone) != m:
            raise FanValidationError("maximal cone size differs from rank")
        for i in cone:
            if not 1 <= i <= n:
                raise FanValidationError(f"cone ray index {i} out of range")
        used |= cone
        rows = [fan.ray(i) for i in sorted(cone)]
        if rat_rank(rows) != m:
            raise FanValidationError(f"maximal cone {sorted(cone)} not simplicial")
    if used != set(range(1, n + 1)):
        missing = sorted(set(range(1, n + 1)) - used)
        raise FanValidationError(f"rays {missing} unused by maximal cones")
    if len(set(fan.max_cones)) != len(fan.max_cones):
        raise FanValidationError("duplicate maximal cone")

    facets: dict[frozenset[int], list[int]] = {}
    for ci, cone in enumerate(fan.max_cones):
        for i in cone:
            facet = cone - {i}
            facets.setdefault(facet, []).append(i)
    for facet, opposite in facets.items():
        if len(opposite) == 1:
            raise FanValidationError(f"facet {sorted(facet)} unpaired")
        if len(opposite) > 2:
            raise FanValidationError(f"facet {sorted(facet)} shared by more than two cones")
        h = _facet_normal(fan, facet)
        s0 = dot(h, fan.ray(opposite[0]))
        s1 = dot(h, fan.ray(opposite[1]))
        if s0 == 0 or s1 == 0 or (s0 > 0) == (s1 > 0):
            raise FanValidationError(
                f"facet {sorted(facet)} does not separate its two opposite rays"
            )

    rng = random.Random(seed)
    cone_cols = [
        [fan.ray(i) for i in sorted(cone)] for cone in fan.max_cones
    ]
    samples = 0
    while samples < COVERAGE_SAMPLES:
        d = tuple(rng.randint(-999, 999) for _ in range(m))
        if all(x == 0 for x in d):
            continue
        samples += 1
        if not any(_in_cone(cols, d) for cols in cone_cols):
            raise FanValidationError(
                f"direction {d} not covered by any maximal cone"
            )


def _in_cone(cols: list[IntVector], d: Sequence[int]) -> bool:
    a = [[cols[j][i] for j in range(len(cols))] for i in range(len(d))]
    try:
        lam = solve_square(a, d)
    except Exception:
        return False
    return all(x >= 0 for x in lam)


# ---------------------------------------------------------------------------
# ray queries


@lru_cache(maxsize=None)
def collinear_pairs(fan: StackyFan) -> tuple[tuple[int, int], ...]:
    """Pairs (i, j), i < j, whose rays span the same line through 0.

    In a valid fan two distinct rays on one line point in opposite
    directions.
    """
    out = []
    for i in range(1, fan.nrays + 1):
        for j in range(i + 1, fan.nrays + 1):
            if parallel_rays(fan.ray(i), fan.ray(j)):
                out.append((i, j))
    return tuple(out)


@dataclass(frozen=True)
class RayNeighborhood:
    center: int
    members: frozenset[int]
    cycle: Optional[tuple[int, ...]]


@lru_cache(maxsize=None)
def two_cone_pairs(fan: StackyFan) -> frozenset[frozenset[int]]:
    """All 2-element subsets of maximal cones (the two-dimensional cones)."""
    out: set[frozenset[int]] = set()
    for cone in fan.max_cones:
        members = sorted(cone)
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                out.add(frozenset((members[a], members[b])))
    return frozenset(out)


@lru_cache(maxsize=None)
def neighborhood(fan: StackyFan, s: int) -> RayNeighborhood:
    """Rays sharing a two-dimensional cone with ray s.

    For rank 3 the members are also returned as the cycle around s: walk
    the edges {i, j} with {s, i, j} a maximal cone, starting at the
    smallest member toward its smaller neighbor, so the result is fixed up
    to the rotation/reflection that canonicalization removes.
    """
    if not 1 <= s <= fan.nrays:
        raise ValueError(f"ray index {s} out of range")
    members = frozenset(
        j for pair in two_cone_pairs(fan) if s in pair for j in pair if j != s
    )
    if fan.rank != 3:
        return RayNeighborhood(s, members, None)
    adj: dict[int, list[int]] = {j: [] for j in members}
    for cone in fan.max_cones:
        if s in cone:
            i, j = sorted(cone - {s})
            adj[i].append(j)
            adj[j].append(i)
    for j, nb in adj.items():
        if len(set(nb)) != 2 or len(nb) != 2:
            raise FanValidationError(f"link of ray {s} is not a single cycle")
    start = min(members)
    second = min(adj[start])
    cycle = [start, second]
    while True:
        prev, cur = cycle[-2], cycle[-1]
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if nxt == start:
            break
        cycle.append(nxt)
        if len(cycle) > len(members):
            raise FanValidationError(f"link of ray {s} is not a single cycle")
    if len(cycle) != len(members):
        raise FanValidationError(f"link of ray {s} is not a single cycle")
    return RayNeighborhood(s, members, tuple(cycle))
