"""Brute-force ground truth over all ranking completions of a profile.

The completion space is the Cartesian product of each voter's ranking
completions.  Enumeration is streaming (an odometer over per-voter lists);
the winner-set folds additionally collapse per-voter completions that
contribute identical score vectors, which changes nothing about the result
but keeps the product small for coarse rules like k-approval.
"""

from __future__ import annotations

from math import prod
from typing import Iterator, Sequence

from .errors import InstanceTooLarge
from .geometry import ranking_completions
from .model import (
    PartialSpatialProfile,
    Ranking,
    ScoringRule,
    realize_score_vector,
    winners_of_scores,
)

DEFAULT_GUARD = 10**6


def completion_lists(profile: PartialSpatialProfile) -> list[tuple]:
    """Per-voter deduplicated ranking completions (with witnesses)."""
    return [ranking_completions(profile.candidates, v) for v in profile.voters]


def completion_count(profile: PartialSpatialProfile) -> int:
    return prod(len(lst) for lst in completion_lists(profile))


def _check_guard(count: int, guard: int) -> None:
    if count > guard:
        raise InstanceTooLarge(f"{count} completions exceed the guard of {guard}")


def enumerate_completions(
    profile: PartialSpatialProfile, guard: int = DEFAULT_GUARD
) -> Iterator[tuple[Ranking, ...]]:
    """Yield every ranking profile exactly once, voter-major lexicographic."""
    lists = completion_lists(profile)
    _check_guard(prod(len(lst) for lst in lists), guard)
    n = len(lists)
    if n == 0:
        yield ()
        return
    idx = [0] * n
    while True:
        yield tuple(lists[i][idx[i]].ranking for i in range(n))
        j = n - 1
        while j >= 0 and idx[j] == len(lists[j]) - 1:
            idx[j] = 0
            j -= 1
        if j < 0:
            return
        idx[j] += 1


def _score_choices(
    profile: PartialSpatialProfile, rule: ScoringRule, guard: int
) -> list[list[tuple[int, ...]]]:
    """Per voter, the distinct per-candidate score contributions."""
    lists = completion_lists(profile)
    _check_guard(prod(len(lst) for lst in lists), guard)
    m = profile.num_candidates
    vec = realize_score_vector(rule, m)
    choices = []
    for lst in lists:
        seen = set()
        for rw in lst:
            contrib = [0] * m
            for pos, cand in enumerate(rw.ranking):
                contrib[cand] = vec[pos]
            seen.add(tuple(contrib))
        choices.append(sorted(seen))
    return choices


def brute_pw(
    profile: PartialSpatialProfile, rule: ScoringRule, guard: int = DEFAULT_GUARD
) -> frozenset[int]:
    """Union of winner sets over every completion."""
    return _fold(profile, rule, guard, want_union=True)


def brute_nw(
    profile: PartialSpatialProfile, rule: ScoringRule, guard: int = DEFAULT_GUARD
) -> frozenset[int]:
    """Intersection of winner sets over every completion; may be empty."""
    return _fold(profile, rule, guard, want_union=False)


def _fold(
    profile: PartialSpatialProfile, rule: ScoringRule, guard: int, want_union: bool
) -> frozenset[int]:
    choices = _score_choices(profile, rule, guard)
    m = profile.num_candidates
    acc: set[int] | None = None

    def rec(i: int, totals: tuple[int, ...]):
        nonlocal acc
        if i == len(choices):
            w = winners_of_scores(totals)
            if acc is None:
                acc = set(w)
            elif want_union:
                acc |= w
            else:
                acc &= w
            return
        for contrib in choices[i]:
            rec(i + 1, tuple(a + b for a, b in zip(totals, contrib)))
            if acc is not None:
                if want_union and len(acc) == m:
                    return
                if not want_union and not acc:
                    return

    rec(0, (0,) * m)
    assert acc is not None
    return frozenset(acc)


def is_possible_winner(
    profile: PartialSpatialProfile,
    rule: ScoringRule,
    candidate: int,
    guard: int = DEFAULT_GUARD,
) -> bool:
    """Membership query with early exit on the first completion won by `candidate`."""
    choices = _score_choices(profile, rule, guard)

    def rec(i: int, totals: tuple[int, ...]) -> bool:
        if i == len(choices):
            return totals[candidate] == max(totals)
        return any(
            rec(i + 1, tuple(a + b for a, b in zip(totals, contrib)))
            for contrib in choices[i]
        )

    return rec(0, (0,) * profile.num_candidates)


def is_necessary_winner(
    profile: PartialSpatialProfile,
    rule: ScoringRule,
    candidate: int,
    guard: int = DEFAULT_GUARD,
) -> bool:
    """Membership query with early exit on the first completion lost by `candidate`."""
    choices = _score_choices(profile, rule, guard)

    def rec(i: int, totals: tuple[int, ...]) -> bool:
        if i == len(choices):
            return totals[candidate] == max(totals)
        return all(
            rec(i + 1, tuple(a + b for a, b in zip(totals, contrib)))
            for contrib in choices[i]
        )

    return rec(0, (0,) * profile.num_candidates)
