"""Contribution aggregation: rubric weighting and team normalization.

The four dimension scores are first scaled within the team so the
maximum maps to 100 (an all-zero dimension stays all zero), combined
by the weighted rubric into a raw index, then normalized across the
team by min-max or z-score.  Raw indices above ``cap_multiple`` times
the team median are clamped before normalization (anti grade-hogging);
contribution shares are always computed from the pre-cap indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from statistics import median, pstdev

from repograde.model import ICA_COMPONENTS, StudentId, clamp_score


@dataclass(frozen=True)
class ContributionVector:
    """Team-scaled dimension scores for one student (each 0-100)."""

    commit_score: float
    ownership_score: float
    participation_score: float
    review_score: float

    def component(self, name: str) -> float:
        return {
            "commits": self.commit_score,
            "ownership": self.ownership_score,
            "participation": self.participation_score,
            "reviews": self.review_score,
        }[name]

    def to_dict(self) -> dict:
        return {
            "commit_score": self.commit_score,
            "ownership_score": self.ownership_score,
            "participation_score": self.participation_score,
            "review_score": self.review_score,
        }


@dataclass(frozen=True)
class NormalizedContribution:
    """Raw index, normalized score, and team share per student."""

    raw_index: dict[StudentId, float]
    capped_index: dict[StudentId, float]
    ncs: dict[StudentId, float]
    share: dict[StudentId, float]
    method: str

    def to_dict(self) -> dict:
        students = sorted(self.raw_index)
        return {
            "method": self.method,
            "students": {
                s: {
                    "raw_index": self.raw_index[s],
                    "capped_index": self.capped_index[s],
                    "ncs": self.ncs[s],
                    "share": self.share[s],
                } for s in students
            },
        }


@dataclass(frozen=True)
class ImbalanceAlert:
    kind: str  # freeloader | over_contributor
    student: StudentId
    share: float
    bound: float

    def to_dict(self) -> dict:
        return {"kind": self.kind, "student": self.student,
                "share": self.share, "bound": self.bound}


@dataclass(frozen=True)
class TeamContribution:
    """Everything the grading engine needs about one team's members."""

    team_id: str
    vectors: dict[StudentId, ContributionVector]
    normalized: NormalizedContribution
    alerts: tuple[ImbalanceAlert, ...]
    total_commits: dict[StudentId, int]
    substantive_commits: dict[StudentId, int]
    trivial_commits: dict[StudentId, int]
    ownership_share: dict[StudentId, float]
    review_counts: dict[StudentId, int]
    heatmap: dict = field(default_factory=dict)
    timeline: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)


def scale_to_team_max(raw: dict[StudentId, float]) -> dict[StudentId, float]:
    """Scale a dimension so the team maximum maps to 100.

    A dimension whose maximum is 0 (nobody did anything) maps to all
    zeros rather than all hundreds.
    """
    if not raw:
        return {}
    top = max(raw.values())
    if top <= 0:
        return {s: 0.0 for s in raw}
    return {s: clamp_score(100.0 * v / top) for s, v in raw.items()}


def aggregate_contribution(vector: ContributionVector,
                           ica_weights: dict[str, float]) -> float:
    """Weighted rubric: raw contribution index for one student."""
    return sum(ica_weights[name] * vector.component(name)
               for name in ICA_COMPONENTS)


def normalize_team(indices: dict[StudentId, float], method: str,
                   cap_multiple: float) -> NormalizedContribution:
    """Normalize raw indices within a team onto the 0-100 scale.

    min_max maps [min, max] onto [0, 100]; a degenerate team (all
    equal) maps to all 100 (equal work earns full contribution
    credit).  z_score maps to 50 + 15z clamped into [0, 100] using the
    population standard deviation; a team of one or zero spread maps
    to all 50.  Shares always come from the pre-cap raw indices.
    """
    students = sorted(indices)
    raw = {s: float(indices[s]) for s in students}
    total = sum(raw.values())
    share = ({s: v / total for s, v in raw.items()} if total > 0
             else {s: 0.0 for s in students})

    med = median(raw.values()) if raw else 0.0
    if med > 0:
        bound = cap_multiple * med
        capped = {s: min(v, bound) for s, v in raw.items()}
    else:
        capped = dict(raw)

    values = list(capped.values())
    ncs: dict[StudentId, float]
    if method == "min_max":
        lo, hi = min(values), max(values)
        if hi - lo <= 0:
            ncs = {s: 100.0 for s in students}
        else:
            ncs = {s: clamp_score(100.0 * (capped[s] - lo) / (hi - lo))
                   for s in students}
    elif method == "z_score":
        sigma = pstdev(values) if len(values) > 1 else 0.0
        if sigma <= 0:
            ncs = {s: 50.0 for s in students}
        else:
            mu = sum(values) / len(values)
            ncs = {s: clamp_score(50.0 + 15.0 * (capped[s] - mu) / sigma)
                   for s in students}
    else:
        raise ValueError(f"unknown normalization method {method!r}")

    return NormalizedContribution(raw_index=raw, capped_index=capped,
                                  ncs=ncs, share=share, method=method)


def detect_imbalance(norm: NormalizedContribution, floor_share: float,
                     cap_multiple: float) -> list[ImbalanceAlert]:
    """Flag freeloading and over-contribution from team shares.

    A share strictly below ``floor_share`` is a freeloader alert; a
    share strictly above ``cap_multiple / team_size`` is an
    over-contributor alert.
    """
    team_size = len(norm.share)
    if team_size == 0:
        return []
    upper_bound = cap_multiple / team_size
    alerts: list[ImbalanceAlert] = []
    for student in sorted(norm.share):
        share = norm.share[student]
        if share < floor_share:
            alerts.append(ImbalanceAlert(kind="freeloader", student=student,
                                         share=share, bound=floor_share))
        elif share > upper_bound:
            alerts.append(ImbalanceAlert(kind="over_contributor",
                                         student=student, share=share,
                                         bound=upper_bound))
    return alerts
