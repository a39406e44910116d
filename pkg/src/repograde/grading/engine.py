"""Grade combination, floors, statistical anomaly detection, feedback.

The final score is the convex combination ``s_f = w_p * PQS + w_n *
NCS``.  Anomaly detection is purely statistical and recomputable:
quartiles use linear rank interpolation (documented below) so an
independent oracle can reproduce every flag decision exactly.
"""

from __future__ import annotations

from statistics import median, pstdev, quantiles

from repograde.contribution.aggregate import (ContributionVector,
                                              TeamContribution)
from repograde.errors import ValidationError
from repograde.grading.records import (AnomalyFlag, FeedbackSummary,
                                       GradeRecord)
from repograde.model import StudentId, WeightConfig
from repograde.quality.scoring import QualityReport

# Component labels used in rendered feedback sentences.
_QUALITY_LABELS = (
    ("testing", "code coverage"),
    ("documentation", "documentation"),
    ("code_quality", "code quality"),
    ("functionality", "functionality"),
    ("usability", "usability"),
)
_CONTRIBUTION_LABELS = (
    ("commits", "commit activity"),
    ("ownership", "code authorship"),
    ("participation", "issue participation"),
    ("reviews", "code review participation"),
)
STRENGTH_THRESHOLD = 75.0
WEAKNESS_THRESHOLD = 40.0


def combine(pqs: float, ncs: float, pqs_weight: float,
            ncs_weight: float) -> float:
    """Final score: convex combination of project quality and contribution.

    Raises:
        ValidationError: weights do not sum to 1.
    """
    if abs(pqs_weight + ncs_weight - 1.0) > 1e-9:
        raise ValidationError(
            f"grade weights must sum to 1, got {pqs_weight} + {ncs_weight}")
    return pqs_weight * pqs + ncs_weight * ncs


def apply_floor_cap(record: GradeRecord, share: float,
                    config: WeightConfig,
                    flag_id: str) -> tuple[GradeRecord, AnomalyFlag | None]:
    """Apply the contribution floor to one record.

    A share strictly below ``floor_share`` floors the grade at
    ``floor_grade``, marks the record ``flagged_pending``, and raises a
    ``floor_triggered`` flag for mandatory review.  The over-
    contribution cap is applied before normalization (in the
    contribution stage), not here.
    """
    if share >= config.floor_share:
        return record, None
    floored = max(record.s_f, float(config.floor_grade))
    flag = AnomalyFlag(
        id=flag_id,
        team_id=record.team_id,
        kind="floor_triggered",
        student=record.student,
        evidence={
            "share": share,
            "floor_share": config.floor_share,
            "s_f_before_floor": record.s_f,
            "floor_grade": config.floor_grade,
        },
    )
    updated = GradeRecord(
        student=record.student, team_id=record.team_id, pqs=record.pqs,
        ncs=record.ncs, s_f=floored, adjustments=record.adjustments,
        status="flagged_pending")
    return updated, flag


def interpolated_quartiles(values: list[float]) -> tuple[float, float]:
    """Quartiles by linear interpolation over sorted data (inclusive
    method): Q_p sits at fractional rank p * (n - 1).

    This is the method that makes a lone extreme in a team of four
    trip the 1.5*IQR fence; half-median quartile schemes leave such
    teams permanently unflaggable.  A single-element list returns
    (x, x) so the fences collapse and nothing can be flagged.
    """
    data = sorted(values)
    n = len(data)
    if n == 0:
        raise ValidationError("quartiles of empty data")
    if n == 1:
        return data[0], data[0]
    q1, _, q3 = quantiles(data, n=4, method="inclusive")
    return float(q1), float(q3)


def detect_anomalies(team_id: str,
                     records: dict[StudentId, GradeRecord],
                     contribution: TeamContribution,
                     quality: QualityReport,
                     config: WeightConfig) -> list[AnomalyFlag]:
    """Raise statistical flags for one team.

    a) low/high outlier: raw index beyond the 1.5*IQR fences
       (linearly interpolated quartiles) or population |z| above
       the threshold.
    b) authorship mismatch: total commit count strictly above the
       team's Q3 while ownership share is strictly below the team's
       Q1 (frequent commits, minimal surviving authorship).
    c) review imbalance: one member holds more than the configured
       fraction of the team's reviews (teams of at least two).
    d) quality/engagement gap: strong PQS while the team's median
       commit component is weak (team-level flag).
    """
    students = sorted(records)
    flags: list[AnomalyFlag] = []
    raw = contribution.normalized.raw_index
    values = [raw[s] for s in students]

    q1, q3 = interpolated_quartiles(values)
    iqr = q3 - q1
    low_fence = q1 - config.iqr_multiplier * iqr
    high_fence = q3 + config.iqr_multiplier * iqr
    sigma = pstdev(values) if len(values) > 1 else 0.0
    mu = sum(values) / len(values) if values else 0.0

    for student in students:
        x = raw[student]
        z = (x - mu) / sigma if sigma > 0 else 0.0
        kind = None
        if x < low_fence or z < -config.z_threshold:
            kind = "low_outlier"
        elif x > high_fence or z > config.z_threshold:
            kind = "high_outlier"
        if kind:
            flags.append(AnomalyFlag(
                id=f"{team_id}:{kind}:{student}",
                team_id=team_id, kind=kind, student=student,
                evidence={"raw_index": x, "q1": q1, "q3": q3,
                          "low_fence": low_fence, "high_fence": high_fence,
                          "z": z}))

    # Over-contribution by share (pre-normalization evidence) also
    # surfaces as a high outlier so it reaches the review queue.
    flagged_high = {f.student for f in flags if f.kind == "high_outlier"}
    for alert in contribution.alerts:
        if alert.kind == "over_contributor" and alert.student not in flagged_high:
            flags.append(AnomalyFlag(
                id=f"{team_id}:high_outlier:{alert.student}",
                team_id=team_id, kind="high_outlier", student=alert.student,
                evidence={"rule": "over_contributor_share",
                          "share": alert.share, "bound": alert.bound}))

    counts = contribution.total_commits
    shares = contribution.ownership_share
    if len(students) >= 2:
        count_q1, count_q3 = interpolated_quartiles(
            [float(counts.get(s, 0)) for s in students])
        share_q1, share_q3 = interpolated_quartiles(
            [shares.get(s, 0.0) for s in students])
        for student in students:
            if (counts.get(student, 0) > count_q3
                    and shares.get(student, 0.0) < share_q1):
                flags.append(AnomalyFlag(
                    id=f"{team_id}:authorship_mismatch:{student}",
                    team_id=team_id, kind="authorship_mismatch",
                    student=student,
                    evidence={"total_commits": counts.get(student, 0),
                              "commit_q3": count_q3,
                              "ownership_share": shares.get(student, 0.0),
                              "share_q1": share_q1,
                              "trivial_commits":
                                  contribution.trivial_commits.get(student, 0)}))

    review_total = sum(contribution.review_counts.get(s, 0) for s in students)
    if review_total > 0 and len(students) >= 2:
        for student in students:
            fraction = contribution.review_counts.get(student, 0) / review_total
            if fraction > config.review_share_threshold:
                flags.append(AnomalyFlag(
                    id=f"{team_id}:review_imbalance:{student}",
                    team_id=team_id, kind="review_imbalance", student=student,
                    evidence={"review_count":
                                  contribution.review_counts.get(student, 0),
                              "team_reviews": review_total,
                              "fraction": fraction,
                              "threshold": config.review_share_threshold}))

    commit_components = [contribution.vectors[s].commit_score
                         for s in students if s in contribution.vectors]
    if commit_components:
        med_commit = float(median(commit_components))
        if (quality.pqs >= config.quality_gap_pqs
                and med_commit < config.quality_gap_commit_median):
            flags.append(AnomalyFlag(
                id=f"{team_id}:quality_engagement_gap",
                team_id=team_id, kind="quality_engagement_gap", student=None,
                evidence={"pqs": quality.pqs,
                          "median_commit_component": med_commit,
                          "pqs_threshold": config.quality_gap_pqs,
                          "commit_threshold":
                              config.quality_gap_commit_median}))
    return flags


def generate_feedback(record: GradeRecord, quality: QualityReport,
                      vector: ContributionVector | None) -> FeedbackSummary:
    """Template-rendered personal feedback from component scores.

    Components at or above 75 are strengths, at or below 40 are
    weaknesses; a strong project paired with a weak normalized
    contribution earns an extra below-team-average note.
    """
    named_scores: list[tuple[str, float]] = []
    for attr, label in _QUALITY_LABELS:
        if quality.weights.get(attr, 0.2) == 0.0:
            continue  # submodule absent (weight redistributed)
        named_scores.append((label, getattr(quality, attr)))
    if vector is not None:
        for name, label in _CONTRIBUTION_LABELS:
            named_scores.append((label, vector.component(name)))

    strengths = tuple(label for label, score in named_scores
                      if score >= STRENGTH_THRESHOLD)
    weaknesses = tuple(label for label, score in named_scores
                       if score <= WEAKNESS_THRESHOLD)

    sentences = []
    if strengths and weaknesses:
        sentences.append(
            f"Your {_join(strengths)} {_verb(strengths)} strong, but "
            f"{_join(weaknesses)} {_verb(weaknesses)} low.")
    elif strengths:
        sentences.append(f"Your {_join(strengths)} {_verb(strengths)} strong.")
    elif weaknesses:
        sentences.append(f"Your {_join(weaknesses)} {_verb(weaknesses)} low.")
    else:
        sentences.append("Balanced performance across all assessed areas.")

    if record.pqs >= 85.0 and record.ncs < 50.0:
        sentences.append(
            "Project quality was excellent, but individual contribution "
            "was significantly below team average.")

    return FeedbackSummary(
        student=record.student,
        strengths=strengths,
        weaknesses=weaknesses,
        rendered=" ".join(sentences),
    )


def _join(labels: tuple[str, ...]) -> str:
    if len(labels) == 1:
        return labels[0]
    return ", ".join(labels[:-1]) + " and " + labels[-1]


def _verb(labels: tuple[str, ...]) -> str:
    return "was" if len(labels) == 1 else "were"
