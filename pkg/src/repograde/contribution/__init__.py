"""Individual contribution analysis across four dimensions."""

from repograde.contribution.aggregate import (
    ContributionVector,
    ImbalanceAlert,
    NormalizedContribution,
    TeamContribution,
    aggregate_contribution,
    detect_imbalance,
    normalize_team,
    scale_to_team_max,
)
from repograde.contribution.classify import CommitClass, classify_commit
from repograde.contribution.ownership import OwnershipMap, compute_ownership
from repograde.contribution.participation import (
    ParticipationStats,
    score_issue_participation,
)
from repograde.contribution.reviews import (
    Lexicons,
    ReviewScore,
    load_lexicons,
    score_reviews,
)
from repograde.contribution.temporal import (
    TemporalProfile,
    cluster_commit_times,
    dbscan_1d,
)

__all__ = [
    "CommitClass",
    "ContributionVector",
    "ImbalanceAlert",
    "Lexicons",
    "NormalizedContribution",
    "OwnershipMap",
    "ParticipationStats",
    "ReviewScore",
    "TeamContribution",
    "TemporalProfile",
    "aggregate_contribution",
    "classify_commit",
    "cluster_commit_times",
    "compute_ownership",
    "dbscan_1d",
    "detect_imbalance",
    "load_lexicons",
    "normalize_team",
    "scale_to_team_max",
    "score_issue_participation",
    "score_reviews",
]
