"""Command-line front end: instance file I/O, generation, and batch queries.

Instance documents are JSON with a `schema_version` field and a `kind` of
either "election" or "scheduling".  Every rational number is carried as a
string ("3/2", "-1", "2") so no value ever passes through binary floats;
plain JSON integers are accepted on input and normalized on output.  Output
is deterministic: keys sorted, candidate sets sorted by id, identical
invocations byte-identical.

Exit codes: 0 success, 1 structured diagnostic (bad input, undefined rule,
no polynomial algorithm without --allow-exponential), 2 guard violation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import oracle
from .errors import InstanceTooLarge, InvalidInstance, SpatialVoteError
from .geometry import bisectors, ranking_completions, specify_faces
from .model import (
    Candidate,
    PartialSpatialProfile,
    ScoringRule,
    VoterBox,
    as_rational,
    rule_from_text,
    rule_to_text,
)
from .scheduling import Job, SchedulingInstance, reduce_scheduling_to_pw
from .winners import necessary_winner, possible_winner, route_for

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------


def _rat(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InvalidInstance(f"{where}: expected a rational string or integer, got {value!r}")
    try:
        return as_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInstance(f"{where}: {exc}") from exc


def _expect(doc: Any, field: str, where: str) -> Any:
    if not isinstance(doc, dict) or field not in doc:
        raise InvalidInstance(f"{where}: missing field {field!r}")
    return doc[field]


def parse_election(doc: dict) -> PartialSpatialProfile:
    dimension = _expect(doc, "dimension", "election")
    if not isinstance(dimension, int) or dimension < 1:
        raise InvalidInstance("election.dimension: expected a positive integer")
    candidates = []
    for i, entry in enumerate(_expect(doc, "candidates", "election")):
        where = f"election.candidates[{i}]"
        cid = _expect(entry, "id", where)
        position = tuple(_rat(x, f"{where}.position[{j}]") for j, x in enumerate(_expect(entry, "position", where)))
        candidates.append(Candidate(cid, position))
    voters = []
    for i, entry in enumerate(doc.get("voters", [])):
        where = f"election.voters[{i}]"
        vid = _expect(entry, "id", where)
        bounds = []
        for j, pair in enumerate(_expect(entry, "bounds", where)):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise InvalidInstance(f"{where}.bounds[{j}]: expected a [lo, hi] pair")
            bounds.append((_rat(pair[0], f"{where}.bounds[{j}][0]"), _rat(pair[1], f"{where}.bounds[{j}][1]")))
        try:
            voters.append(VoterBox(vid, tuple(bounds)))
        except ValueError as exc:
            raise InvalidInstance(f"{where}: {exc}") from exc
    try:
        return PartialSpatialProfile(dimension, tuple(candidates), tuple(voters))
    except (ValueError, SpatialVoteError) as exc:
        raise InvalidInstance(f"election: {exc}") from exc


def parse_scheduling(doc: dict) -> SchedulingInstance:
    machines = _expect(doc, "machines", "scheduling")
    if not isinstance(machines, int):
        raise InvalidInstance("scheduling.machines: expected an integer")
    jobs = []
    for i, entry in enumerate(_expect(doc, "jobs", "scheduling")):
        where = f"scheduling.jobs[{i}]"
        fields = {}
        for f in ("arrival", "deadline", "processing"):
            value = _expect(entry, f, where)
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidInstance(f"{where}.{f}: expected an integer")
            fields[f] = value
        try:
            jobs.append(Job(_expect(entry, "id", where), **fields))
        except ValueError as exc:
            raise InvalidInstance(f"{where}: {exc}") from exc
    try:
        return SchedulingInstance(tuple(jobs), machines)
    except ValueError as exc:
        raise InvalidInstance(f"scheduling: {exc}") from exc


def parse_document(doc: Any) -> PartialSpatialProfile | SchedulingInstance:
    kind = _expect(doc, "kind", "document")
    version = _expect(doc, "schema_version", "document")
    if version != SCHEMA_VERSION:
        raise InvalidInstance(f"document: unsupported schema_version {version!r}")
    if kind == "election":
        return parse_election(doc)
    if kind == "scheduling":
        return parse_scheduling(doc)
    raise InvalidInstance(f"document: unknown kind {kind!r}")


def election_to_document(profile: PartialSpatialProfile) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "election",
        "dimension": profile.dimension,
        "candidates": [
            {"id": c.id, "position": [str(x) for x in c.position]} for c in profile.candidates
        ],
        "voters": [
            {"id": v.id, "bounds": [[str(lo), str(hi)] for lo, hi in v.bounds]}
            for v in profile.voters
        ],
    }


def scheduling_to_document(instance: SchedulingInstance) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "scheduling",
        "machines": instance.machines,
        "jobs": [
            {"id": j.id, "arrival": j.arrival, "deadline": j.deadline, "processing": j.processing}
            for j in instance.jobs
        ],
    }


def serialize(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def load_document(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInstance(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _load_election(path: str) -> PartialSpatialProfile:
    instance = parse_document(load_document(path))
    if not isinstance(instance, PartialSpatialProfile):
        raise InvalidInstance(f"{path}: expected an election document")
    return instance


def _load_scheduling(path: str) -> SchedulingInstance:
    instance = parse_document(load_document(path))
    if not isinstance(instance, SchedulingInstance):
        raise InvalidInstance(f"{path}: expected a scheduling document")
    return instance


# ---------------------------------------------------------------------------
# Random instance generation (deterministic given the seed)
# ---------------------------------------------------------------------------


def generate_election(
    seed: int,
    dimension: int,
    num_candidates: int,
    num_voters: int,
    coord_range: int = 8,
    denominator: int = 4,
) -> PartialSpatialProfile:
    """Random profile with coordinates in [-coord_range, coord_range] on a
    grid of the given denominator; d=1 candidate positions are distinct."""
    rng = random.Random(seed)

    def coord() -> Fraction:
        return Fraction(rng.randint(-coord_range * denominator, coord_range * denominator), denominator)

    positions: set[tuple[Fraction, ...]] = set()
    candidates = []
    for i in range(num_candidates):
        while True:
            p = tuple(coord() for _ in range(dimension))
            if dimension > 1 or p not in positions:
                positions.add(p)
                break
        candidates.append(Candidate(f"c{i + 1}", p))
    voters = []
    for i in range(num_voters):
        bounds = []
        for _ in range(dimension):
            a, b = coord(), coord()
            bounds.append((min(a, b), max(a, b)))
        voters.append(VoterBox(f"v{i + 1}", tuple(bounds)))
    return PartialSpatialProfile(dimension, tuple(candidates), tuple(voters))


def generate_scheduling(
    seed: int, num_jobs: int, machines: int = 1, horizon: int = 10, max_processing: int = 4
) -> SchedulingInstance:
    """Random instance in which every job fits between arrival and deadline."""
    rng = random.Random(seed)
    jobs = []
    for i in range(num_jobs):
        p = rng.randint(1, max_processing)
        arrival = rng.randint(1, max(1, horizon - p))
        deadline = rng.randint(arrival + p, horizon + max_processing)
        jobs.append(Job(f"j{i + 1}", arrival, deadline, p))
    return SchedulingInstance(tuple(jobs), machines)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(serialize(payload))
    else:
        for line in text_lines:
            print(line)


def _winner_payload(profile: PartialSpatialProfile, members: Sequence[int]) -> list[str]:
    return sorted(profile.candidates[i].id for i in members)


def cmd_rankings(args) -> int:
    profile = _load_election(args.instance)
    voters = profile.voters
    if args.voter is not None:
        voters = tuple(v for v in voters if v.id == args.voter)
        if not voters:
            raise InvalidInstance(f"no voter with id {args.voter!r}")
    payload = {"rankings": {}}
    lines = []
    for voter in voters:
        entries = []
        for rw in ranking_completions(profile.candidates, voter):
            ids = [profile.candidates[i].id for i in rw.ranking]
            entries.append({"ranking": ids, "witness": [str(x) for x in rw.witness]})
            lines.append(f"{voter.id}: {' > '.join(ids)}  (at {', '.join(str(x) for x in rw.witness)})")
        payload["rankings"][voter.id] = entries
    _emit(args, payload, lines)
    return 0


def _membership_command(args, decide) -> int:
    profile = _load_election(args.instance)
    rule = rule_from_text(args.rule)
    if args.candidate is not None:
        c = profile.candidate_index(args.candidate)
        verdict = decide(profile, rule, c)
        _emit(args, {"candidate": args.candidate, "member": verdict}, [str(verdict).lower()])
        return 0
    members = [c for c in range(profile.num_candidates) if decide(profile, rule, c)]
    ids = _winner_payload(profile, members)
    _emit(args, {"winners": ids}, [" ".join(ids) if ids else "(none)"])
    return 0


def cmd_nw(args) -> int:
    return _membership_command(args, necessary_winner)


def cmd_pw(args) -> int:
    guard = _guard_value(args)

    def decide(profile, rule, c):
        return possible_winner(profile, rule, c, allow_exponential=args.allow_exponential, guard=guard)

    return _membership_command(args, decide)


def cmd_oracle(args) -> int:
    profile = _load_election(args.instance)
    rule = rule_from_text(args.rule)
    guard = _guard_value(args)
    fn = oracle.brute_pw if args.which == "pw" else oracle.brute_nw
    ids = _winner_payload(profile, sorted(fn(profile, rule, guard)))
    _emit(args, {"winners": ids}, [" ".join(ids) if ids else "(none)"])
    return 0


def cmd_reduce_sched(args) -> int:
    instance = _load_scheduling(args.instance)
    profile, target, rule = reduce_scheduling_to_pw(instance, args.k)
    doc = election_to_document(profile)
    doc["target_candidate"] = target
    doc["rule"] = rule_to_text(rule)
    sys.stdout.write(serialize(doc))
    return 0


def cmd_gen(args) -> int:
    if args.kind == "election":
        profile = generate_election(
            args.seed, args.dimension, args.num_candidates, args.num_voters, args.coord_range
        )
        sys.stdout.write(serialize(election_to_document(profile)))
    else:
        instance = generate_scheduling(args.seed, args.num_jobs, args.machines, args.horizon)
        sys.stdout.write(serialize(scheduling_to_document(instance)))
    return 0


def cmd_faces(args) -> int:
    profile = _load_election(args.instance)
    planes = bisectors(profile.candidates)
    faces = specify_faces(planes, profile.dimension)
    payload = {"num_hyperplanes": len(planes), "num_faces": len(faces)}
    _emit(args, payload, [f"{len(faces)} faces over {len(planes)} hyperplanes"])
    return 0


def _guard_value(args) -> int:
    if getattr(args, "guard", None) is not None:
        return args.guard
    env = os.environ.get("SVK_GUARD")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InvalidInstance(f"SVK_GUARD: {exc}") from exc
    return oracle.DEFAULT_GUARD


# ---------------------------------------------------------------------------
# Argument parsing and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spatialvote",
        description="Possible and necessary winners for spatial elections with box uncertainty.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, rule=False, candidate=False, guard=False):
        p.add_argument("--instance", required=True, help="path to an instance JSON document")
        if rule:
            p.add_argument("--rule", required=True, help="rule descriptor, e.g. plurality, approval:2, fkt:2:1")
        if candidate:
            p.add_argument("--candidate", help="restrict to a membership verdict for this candidate id")
        if guard:
            p.add_argument("--guard", type=int, help="completion-count guard (default SVK_GUARD or 10^6)")
        p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("rankings", help="ranking completions per voter, with witnesses")
    common(p)
    p.add_argument("--voter", help="restrict to one voter id")
    p.set_defaults(fn=cmd_rankings)

    p = sub.add_parser("nw", help="necessary winners")
    common(p, rule=True, candidate=True)
    p.set_defaults(fn=cmd_nw)

    p = sub.add_parser("pw", help="possible winners")
    common(p, rule=True, candidate=True, guard=True)
    p.add_argument("--allow-exponential", action="store_true", help="fall back to the oracle when no polynomial algorithm applies")
    p.set_defaults(fn=cmd_pw)

    p = sub.add_parser("oracle", help="exact brute-force possible/necessary winner sets")
    p.add_argument("which", choices=("pw", "nw"))
    common(p, rule=True, guard=True)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("reduce-sched", help="translate a scheduling instance to a possible-winner instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--k", type=int, required=True, help="approval count (jobs must have lengths k-1 or k)")
    p.set_defaults(fn=cmd_reduce_sched)

    p = sub.add_parser("gen", help="generate a random instance (deterministic per seed)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--kind", choices=("election", "scheduling"), default="election")
    p.add_argument("--dimension", type=int, default=1)
    p.add_argument("--num-candidates", type=int, default=3)
    p.add_argument("--num-voters", type=int, default=3)
    p.add_argument("--coord-range", type=int, default=8)
    p.add_argument("--num-jobs", type=int, default=3)
    p.add_argument("--machines", type=int, default=1)
    p.add_argument("--horizon", type=int, default=10)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("faces", help="size of the bisector arrangement of an instance")
    common(p)
    p.set_defaults(fn=cmd_faces)

    return parser


def _diagnostic(exc: Exception) -> str:
    return serialize({"error": {"type": type(exc).__name__, "message": str(exc)}})


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InstanceTooLarge as exc:
        sys.stderr.write(_diagnostic(exc))
        return 2
    except (SpatialVoteError, ValueError) as exc:
        sys.stderr.write(_diagnostic(exc))
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
