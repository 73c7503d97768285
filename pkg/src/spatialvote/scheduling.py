"""Non-preemptive scheduling with arrival times and deadlines.

Two feasibility solvers (an equal-length solver used by the possible-winner
algorithms, and a small exhaustive oracle) plus the translator from
single-machine scheduling instances to 2D spatial possible-winner instances.

All times are integers.  A job with arrival a, deadline d, and processing
time p must start at some integer s with a <= s <= d - p; a machine runs at
most one job at a time, with jobs occupying the half-open interval [s, s+p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InstanceTooLarge, MixedProcessingTimes, PreconditionViolated
from .geometry import ranking_completions
from .model import Candidate, PartialSpatialProfile, ScoringRule, VoterBox


@dataclass(frozen=True)
class Job:
    id: str
    arrival: int
    deadline: int
    processing: int

    def __post_init__(self) -> None:
        if not (isinstance(self.arrival, int) and isinstance(self.deadline, int) and isinstance(self.processing, int)):
            raise ValueError(f"job {self.id!r}: times must be integers")
        if self.arrival < 1:
            raise ValueError(f"job {self.id!r}: arrival must be >= 1")
        if self.processing < 1:
            raise ValueError(f"job {self.id!r}: processing time must be >= 1")
        if self.deadline < 1:
            raise ValueError(f"job {self.id!r}: deadline must be >= 1")


@dataclass(frozen=True)
class SchedulingInstance:
    jobs: tuple[Job, ...]
    machines: int

    def __post_init__(self) -> None:
        if self.machines < 1:
            raise ValueError("need at least one machine")
        if len({j.id for j in self.jobs}) != len(self.jobs):
            raise ValueError("job ids must be unique")
        object.__setattr__(self, "jobs", tuple(self.jobs))


@dataclass
class Schedule:
    """Per-job (start, machine) assignment."""

    assignments: dict[str, tuple[int, int]]


def check_schedule(instance: SchedulingInstance, schedule: Schedule) -> None:
    """Raise AssertionError unless the schedule satisfies all invariants."""
    assert set(schedule.assignments) == {j.id for j in instance.jobs}
    per_machine: dict[int, list[tuple[int, int]]] = {}
    for job in instance.jobs:
        start, machine = schedule.assignments[job.id]
        assert isinstance(start, int)
        assert job.arrival <= start <= job.deadline - job.processing
        assert 0 <= machine < instance.machines
        per_machine.setdefault(machine, []).append((start, start + job.processing))
    for intervals in per_machine.values():
        intervals.sort()
        for (_, end), (start, _) in zip(intervals, intervals[1:]):
            assert start >= end, "overlapping jobs on one machine"


def _assign_machines(
    jobs: Sequence[Job], starts: dict[str, int], machines: int
) -> dict[str, tuple[int, int]]:
    """Greedy interval coloring; succeeds whenever the overlap stays <= machines."""
    free = [0] * machines
    assignments = {}
    for job in sorted(jobs, key=lambda j: (starts[j.id], j.id)):
        start = starts[job.id]
        for h in range(machines):
            if free[h] <= start:
                free[h] = start + job.processing
                assignments[job.id] = (start, h)
                break
        else:  # pragma: no cover - caller guarantees bounded overlap
            raise AssertionError("machine assignment failed")
    return assignments


def feasible_equal_length(instance: SchedulingInstance, p: int) -> Optional[Schedule]:
    """Feasibility for jobs that all share processing time p.

    Earliest-deadline-first over integer time with backtracking: whenever a
    machine is free and jobs are available, either the available job with the
    earliest deadline starts now, or nothing starts at this time unit.  For
    equal-length jobs a standard exchange argument makes this complete.
    Failed states are memoized.
    """
    jobs = instance.jobs
    for job in jobs:
        if job.processing != p:
            raise MixedProcessingTimes(f"job {job.id!r} has length {job.processing}, expected {p}")
    if not jobs:
        return Schedule({})
    if any(job.arrival > job.deadline - p for job in jobs):
        return None

    t = instance.machines
    latest = {i: job.deadline - p for i, job in enumerate(jobs)}
    order_key = {i: (job.deadline, job.arrival, job.id) for i, job in enumerate(jobs)}
    starts: dict[int, int] = {}
    failed: set = set()

    def dfs(time: int, busy: tuple[int, ...], remaining: frozenset) -> bool:
        if not remaining:
            return True
        if min(latest[i] for i in remaining) < time:
            return False
        key = (time, busy, remaining)
        if key in failed:
            return False
        available = [i for i in remaining if jobs[i].arrival <= time]
        if available and len(busy) < t:
            pick = min(available, key=order_key.__getitem__)
            starts[pick] = time
            if dfs(time, tuple(sorted(busy + (time + p,))), remaining - {pick}):
                return True
            del starts[pick]
            nxt = time + 1
            if dfs(nxt, tuple(b for b in busy if b > nxt), remaining):
                return True
        else:
            events = []
            if busy and len(busy) >= t:
                events.append(busy[0])
            future = [jobs[i].arrival for i in remaining if jobs[i].arrival > time]
            if future:
                events.append(min(future))
            if events:
                nxt = min(events)
                if dfs(nxt, tuple(b for b in busy if b > nxt), remaining):
                    return True
        failed.add(key)
        return False

    first = min(job.arrival for job in jobs)
    if not dfs(first, (), frozenset(range(len(jobs)))):
        return None
    by_id = {jobs[i].id: s for i, s in starts.items()}
    schedule = Schedule(_assign_machines(jobs, by_id, t))
    check_schedule(instance, schedule)
    return schedule


def brute_force_schedule(
    instance: SchedulingInstance, max_jobs: int = 10, max_horizon: int = 20
) -> Optional[Schedule]:
    """Exhaustive search over integer start times; exact at desk scale."""
    jobs = instance.jobs
    if not jobs:
        return Schedule({})
    horizon = max(job.deadline for job in jobs)
    if len(jobs) > max_jobs or horizon > max_horizon:
        raise InstanceTooLarge(
            f"{len(jobs)} jobs / horizon {horizon} exceed the brute-force guard "
            f"({max_jobs} jobs, horizon {max_horizon})"
        )
    t = instance.machines
    order = sorted(range(len(jobs)), key=lambda i: (jobs[i].arrival, jobs[i].deadline, jobs[i].id))
    load = [0] * (horizon + 1)
    starts: dict[str, int] = {}

    def dfs(pos: int) -> bool:
        if pos == len(order):
            return True
        job = jobs[order[pos]]
        for s in range(job.arrival, job.deadline - job.processing + 1):
            span = range(s, s + job.processing)
            if all(load[x] < t for x in span):
                for x in span:
                    load[x] += 1
                starts[job.id] = s
                if dfs(pos + 1):
                    return True
                del starts[job.id]
                for x in span:
                    load[x] -= 1
        return False

    if not dfs(0):
        return None
    schedule = Schedule(_assign_machines(jobs, starts, t))
    check_schedule(instance, schedule)
    return schedule


def reduce_scheduling_to_pw(
    instance: SchedulingInstance, k: int, validate: bool = True
) -> tuple[PartialSpatialProfile, str, ScoringRule]:
    """Translate a single-machine instance with lengths {k-1, k} into a 2D
    spatial election in which the target candidate is a possible winner under
    k-approval exactly when the instance is feasible.

    One far-off target candidate sits at (0, 3*D) and D line candidates at
    (i + 1/2, 0).  A length-k job becomes a voter at height 0 whose box
    spans exactly the approval windows between its arrival and deadline; a
    length-(k-1) job becomes such a voter at height 3*D (those voters always
    approve the target as well).  Filler voters with no uncertainty bring
    every line candidate up to the same baseline approval count.
    """
    if instance.machines != 1:
        raise PreconditionViolated("the reduction needs exactly one machine")
    if k < 3:
        raise PreconditionViolated("the reduction needs k >= 3")
    if not instance.jobs:
        raise PreconditionViolated("the reduction needs at least one job")
    for job in instance.jobs:
        if job.processing not in (k - 1, k):
            raise PreconditionViolated(f"job {job.id!r} has length {job.processing}, expected {k - 1} or {k}")
        if job.deadline - job.arrival < job.processing:
            raise PreconditionViolated(
                f"job {job.id!r} cannot fit between its arrival and deadline"
            )

    d_max = max(job.deadline for job in instance.jobs)
    span = -(-(d_max - 1) // k) * k  # smallest multiple of k that is >= d_max - 1

    jobs = list(instance.jobs)
    if not any(job.processing == k - 1 for job in jobs):
        # the target candidate is approved only by length-(k-1) job voters, so
        # it needs at least one; add a padding job in a fresh block past every
        # deadline, where it schedules trivially and conflicts with nothing.
        pad_id = "pad"
        while any(job.id == pad_id for job in jobs):
            pad_id += "_"
        jobs.append(Job(pad_id, span + 1, span + k, k - 1))
        span += k

    target = Candidate("cstar", (Fraction(0), Fraction(3 * span)))
    line = [
        Candidate(f"c{i}", (Fraction(2 * i + 1, 2), Fraction(0))) for i in range(1, span + 1)
    ]
    candidates = (target, *line)

    voters: list[VoterBox] = []
    short_jobs = [job for job in jobs if job.processing == k - 1]
    for job in jobs:
        p = job.processing
        y = Fraction(0) if p == k else Fraction(3 * span)
        # window starts range over [arrival, deadline - p]; the voter box in x
        # runs between the centers of the first and last window.
        lo = Fraction(2 * job.arrival + p, 2)
        hi = Fraction(2 * job.deadline - p, 2)
        voters.append(VoterBox(f"v_{job.id}", ((lo, hi), (y, y))))
    baseline = len(short_jobs) - 1
    if baseline > 0:
        for block in range(span // k):
            center = Fraction(2 * (block * k + 1) + k, 2)
            for rep in range(baseline):
                voters.append(
                    VoterBox(f"fill_{block}_{rep}", ((center, center), (Fraction(0), Fraction(0))))
                )

    profile = PartialSpatialProfile(2, candidates, tuple(voters))
    if validate:
        _validate_reduction(profile, jobs, k, span)
    return profile, "cstar", ScoringRule.k_approval(k)


def _validate_reduction(
    profile: PartialSpatialProfile, jobs: Sequence[Job], k: int, span: int
) -> None:
    """Check that every job voter realizes exactly the intended approval windows."""
    target_idx = 0  # cstar is listed first
    by_id = {v.id: v for v in profile.voters}
    for job in jobs:
        p = job.processing
        voter = by_id[f"v_{job.id}"]
        approvals = set()
        for rw in ranking_completions(profile.candidates, voter):
            approvals.add(frozenset(rw.ranking[:k]))
        expected = set()
        for start in range(job.arrival, job.deadline - p + 1):
            window = frozenset(range(start, start + p))
            if p == k - 1:
                window = window | {target_idx}
            expected.add(window)
        if approvals != expected:
            raise PreconditionViolated(
                f"voter for job {job.id!r} realizes unexpected approval windows"
            )
