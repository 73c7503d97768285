"""Possible and necessary winners for spatial elections with box uncertainty."""

from .errors import (
    DimensionMismatch,
    InstanceTooLarge,
    InvalidInstance,
    MixedProcessingTimes,
    NoPolynomialAlgorithm,
    PreconditionViolated,
    RuleMismatch,
    RuleUndefinedAtM,
    SpatialVoteError,
)
from .geometry import (
    Face,
    Hyperplane,
    RankingWithWitness,
    bisectors,
    enumerate_rankings_1d,
    enumerate_rankings_dd,
    ranking_completions,
    specify_faces,
)
from .model import (
    Candidate,
    PartialSpatialProfile,
    Ranking,
    Rational,
    ScoringRule,
    SpatialPoint,
    VoterBox,
    as_rational,
    rank_from_point,
    realize_score_vector,
    rule_from_text,
    rule_to_text,
    score_profile,
    winners_of_rankings,
)
from .oracle import brute_nw, brute_pw, enumerate_completions, is_necessary_winner, is_possible_winner
from .scheduling import (
    Job,
    Schedule,
    SchedulingInstance,
    brute_force_schedule,
    feasible_equal_length,
    reduce_scheduling_to_pw,
)
from .winners import (
    necessary_winner,
    possible_winner,
    pw_fkt_1d,
    pw_plurality,
    pw_two_valued_1d,
    pw_veto,
    pw_weighted_veto_1d,
    route_for,
)

__version__ = "0.1.0"

__all__ = [
    "Candidate",
    "DimensionMismatch",
    "Face",
    "Hyperplane",
    "InstanceTooLarge",
    "InvalidInstance",
    "Job",
    "MixedProcessingTimes",
    "NoPolynomialAlgorithm",
    "PartialSpatialProfile",
    "PreconditionViolated",
    "Ranking",
    "RankingWithWitness",
    "Rational",
    "RuleMismatch",
    "RuleUndefinedAtM",
    "Schedule",
    "SchedulingInstance",
    "ScoringRule",
    "SpatialPoint",
    "SpatialVoteError",
    "VoterBox",
    "as_rational",
    "bisectors",
    "brute_force_schedule",
    "brute_nw",
    "brute_pw",
    "enumerate_completions",
    "enumerate_rankings_1d",
    "enumerate_rankings_dd",
    "feasible_equal_length",
    "is_necessary_winner",
    "is_possible_winner",
    "necessary_winner",
    "possible_winner",
    "pw_fkt_1d",
    "pw_plurality",
    "pw_two_valued_1d",
    "pw_veto",
    "pw_weighted_veto_1d",
    "rank_from_point",
    "ranking_completions",
    "realize_score_vector",
    "reduce_scheduling_to_pw",
    "route_for",
    "rule_from_text",
    "rule_to_text",
    "score_profile",
    "specify_faces",
    "winners_of_rankings",
]
