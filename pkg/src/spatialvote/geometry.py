"""Enumerating the ranking completions of one voter's box.

In one dimension the ranking changes only at midpoints of candidate pairs,
so a sweep over those tie points suffices.  In higher dimensions the
candidate-pair bisector hyperplanes partition space into faces on which the
distance ranking is constant; the faces are built incrementally by splitting
every face a new hyperplane crosses, with feasibility (and witnesses) decided
by the exact rational LFP solver.

Boundary convention: every hyperplane's nonstrict side is the one containing
the lower-indexed candidate of its pair, so points on the hyperplane fall in
the face whose ranking matches index tie-breaking.  Two faces produced this
way never share a point.

Note on tie-point counting: with index tie-breaking, the ranking at a 1D tie
point equals the ranking of the sub-interval to its left, so probing the tie
points never produces a ranking beyond the interval representatives.  The
probes are kept anyway so boundary-only rankings cannot be missed if the box
starts or ends exactly on a tie point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import DimensionMismatch
from .lfp import InequalitySystem, LinearInequality, feasible
from .model import Candidate, Ranking, SpatialPoint, VoterBox, rank_from_point


@dataclass(frozen=True)
class Hyperplane:
    """The bisector of a candidate pair: points equidistant from both.

    ``coeffs . x = constant`` with coeffs = 2(x_c' - x_c) and constant
    |x_c'|^2 - |x_c|^2, where c is the lower-indexed candidate of `pair`.
    Points with ``coeffs . x < constant`` are strictly closer to c.
    """

    coeffs: tuple[Fraction, ...]
    constant: Fraction
    pair: tuple[int, int]

    def closed_side(self) -> LinearInequality:
        """The nonstrict side containing (and tying toward) the lower-indexed candidate."""
        return LinearInequality(self.coeffs, self.constant, strict=False)

    def open_side(self) -> LinearInequality:
        """The strict side containing the higher-indexed candidate."""
        return self.closed_side().negation()


@dataclass(frozen=True)
class Face:
    """A region of R^d given by linear inequalities, possibly over-specified."""

    inequalities: tuple[LinearInequality, ...]
    witness: Optional[SpatialPoint] = None


@dataclass(frozen=True)
class RankingWithWitness:
    ranking: Ranking
    witness: SpatialPoint


def tie_points_1d(
    candidates: Sequence[Candidate], interval: tuple[Fraction, Fraction]
) -> list[Fraction]:
    """All points of [lo, hi] equidistant from two or more candidates."""
    lo, hi = interval
    if lo > hi:
        raise ValueError("interval lower bound exceeds upper bound")
    points = set()
    for a, b in itertools.combinations(candidates, 2):
        if len(a.position) != 1 or len(b.position) != 1:
            raise DimensionMismatch("tie_points_1d needs 1-dimensional candidates")
        mid = (a.position[0] + b.position[0]) / 2
        if lo <= mid <= hi:
            points.add(mid)
    return sorted(points)


def enumerate_rankings_1d(
    candidates: Sequence[Candidate], interval: tuple[Fraction, Fraction]
) -> list[RankingWithWitness]:
    """One witness per distinct ranking over a 1D interval of ideal points.

    Probes every tie point and every midpoint between consecutive
    breakpoints; at most C(m,2)+1 distinct rankings come back.
    """
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    breaks = sorted({lo, hi} | set(tie_points_1d(candidates, (lo, hi))))
    probes: list[Fraction] = []
    for a, b in zip(breaks, breaks[1:]):
        probes.append(a)
        probes.append((a + b) / 2)
    probes.append(breaks[-1])
    out: list[RankingWithWitness] = []
    seen: set[Ranking] = set()
    for x in probes:
        r = rank_from_point((x,), candidates)
        if r not in seen:
            seen.add(r)
            out.append(RankingWithWitness(r, (x,)))
    return out


def bisectors(candidates: Sequence[Candidate]) -> list[Hyperplane]:
    """One bisector per unordered pair with distinct positions."""
    planes = []
    for i, j in itertools.combinations(range(len(candidates)), 2):
        pi, pj = candidates[i].position, candidates[j].position
        if pi == pj:
            continue  # permanently tied pair, ordered by index
        coeffs = tuple(2 * (b - a) for a, b in zip(pi, pj))
        constant = sum(b * b for b in pj) - sum(a * a for a in pi)
        planes.append(Hyperplane(coeffs, constant, (i, j)))
    return planes


def _trivial_inequality(dimension: int) -> LinearInequality:
    return LinearInequality((Fraction(0),) * dimension, Fraction(0), strict=False)


def _intersects(
    dimension: int, inequalities: tuple[LinearInequality, ...], plane: Hyperplane
) -> Optional[SpatialPoint]:
    """A point of the face lying exactly on `plane`, or None."""
    on_plane = (
        LinearInequality(plane.coeffs, plane.constant, strict=False),
        LinearInequality(tuple(-a for a in plane.coeffs), -plane.constant, strict=False),
    )
    return feasible(InequalitySystem(dimension, inequalities + on_plane))


def specify_faces(hyperplanes: Sequence[Hyperplane], dimension: int) -> list[Face]:
    """Incremental face construction over a hyperplane arrangement.

    Starts from the trivial all-of-R^d face and splits every face crossed by
    each hyperplane in turn into its closed and open sides.  The output size
    is bounded by sum_{i<=d} C(|H|, i).
    """
    faces: list[tuple[LinearInequality, ...]] = [(_trivial_inequality(dimension),)]
    for plane in hyperplanes:
        added = []
        for idx, ineqs in enumerate(faces):
            if _intersects(dimension, ineqs, plane) is not None:
                faces[idx] = ineqs + (plane.closed_side(),)
                open_side = ineqs + (plane.open_side(),)
                if feasible(InequalitySystem(dimension, open_side)) is not None:
                    added.append(open_side)
        faces.extend(added)
    return [Face(ineqs) for ineqs in faces]


def box_inequalities(box: VoterBox) -> list[LinearInequality]:
    """The 2d nonstrict inequalities describing an axis-parallel box."""
    d = box.dimension
    out = []
    for i, (lo, hi) in enumerate(box.bounds):
        unit = tuple(Fraction(int(j == i)) for j in range(d))
        out.append(LinearInequality(unit, hi, strict=False))
        out.append(LinearInequality(tuple(-u for u in unit), -lo, strict=False))
    return out


def _restrict_to_free_dims(
    coeffs: Sequence[Fraction], constant: Fraction, free: Sequence[int], fixed: dict[int, Fraction]
) -> tuple[tuple[Fraction, ...], Fraction]:
    """Substitute the fixed coordinates, leaving coefficients on free dims."""
    const = constant - sum(coeffs[i] * v for i, v in fixed.items())
    return tuple(coeffs[i] for i in free), const


def enumerate_rankings_dd(
    candidates: Sequence[Candidate], box: VoterBox
) -> list[RankingWithWitness]:
    """All distinct ranking completions of a d-dimensional box, with witnesses.

    Splits faces with the same closed/open convention as `specify_faces`, but
    seeds the construction with the box inequalities so only faces meeting
    the box are ever materialized, and works in the box's non-degenerate
    dimensions only.  The resulting ranking set is identical to intersecting
    the full-space faces with the box afterwards.
    """
    d = box.dimension
    if any(len(c.position) != d for c in candidates):
        raise DimensionMismatch("candidates and box disagree on dimension")
    if d == 1:
        return enumerate_rankings_1d(candidates, box.bounds[0])
    if box.is_degenerate():
        point = tuple(lo for lo, _ in box.bounds)
        return [RankingWithWitness(rank_from_point(point, candidates), point)]

    free = [i for i, (lo, hi) in enumerate(box.bounds) if lo < hi]
    fixed = {i: lo for i, (lo, hi) in enumerate(box.bounds) if lo == hi}
    e = len(free)

    seed = []
    for pos, i in enumerate(free):
        lo, hi = box.bounds[i]
        unit = tuple(Fraction(int(j == pos)) for j in range(e))
        seed.append(LinearInequality(unit, hi, strict=False))
        seed.append(LinearInequality(tuple(-u for u in unit), -lo, strict=False))

    # faces in the free subspace, each carried with a known interior witness
    start = feasible(InequalitySystem(e, tuple(seed)))
    assert start is not None
    faces: list[tuple[tuple[LinearInequality, ...], SpatialPoint]] = [(tuple(seed), start)]

    for plane in bisectors(candidates):
        coeffs, const = _restrict_to_free_dims(plane.coeffs, plane.constant, free, fixed)
        if all(a == 0 for a in coeffs):
            continue  # the plane is parallel to every free direction
        closed = LinearInequality(coeffs, const, strict=False)
        opened = closed.negation()
        added = []
        for idx, (ineqs, wit) in enumerate(faces):
            on_plane = feasible(
                InequalitySystem(
                    e,
                    ineqs
                    + (closed, LinearInequality(tuple(-a for a in coeffs), -const, strict=False)),
                )
            )
            if on_plane is None:
                continue
            open_wit = feasible(InequalitySystem(e, ineqs + (opened,)))
            faces[idx] = (ineqs + (closed,), on_plane)
            if open_wit is not None:
                added.append((ineqs + (opened,), open_wit))
        faces.extend(added)

    out: list[RankingWithWitness] = []
    seen: set[Ranking] = set()
    for _, wit in faces:
        full = _lift(wit, free, fixed, d)
        r = rank_from_point(full, candidates)
        if r not in seen:
            seen.add(r)
            out.append(RankingWithWitness(r, full))
    out.sort(key=lambda rw: rw.ranking)
    return out


def _lift(
    point: Sequence[Fraction], free: Sequence[int], fixed: dict[int, Fraction], d: int
) -> SpatialPoint:
    coords: list[Fraction] = [Fraction(0)] * d
    for pos, i in enumerate(free):
        coords[i] = point[pos]
    for i, v in fixed.items():
        coords[i] = v
    return tuple(coords)


@lru_cache(maxsize=65536)
def ranking_completions(
    candidates: tuple[Candidate, ...], box: VoterBox
) -> tuple[RankingWithWitness, ...]:
    """Cached per-voter enumeration; the workhorse for winners and oracle."""
    return tuple(enumerate_rankings_dd(candidates, box))
