"""Grade, flag, and feedback record types with JSON round-tripping."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from repograde.errors import ValidationError
from repograde.model import StudentId, clamp_score

GRADE_STATUSES = ("auto_approved", "flagged_pending",
                  "approved_with_override")
FLAG_KINDS = ("low_outlier", "high_outlier", "authorship_mismatch",
              "review_imbalance", "quality_engagement_gap",
              "floor_triggered")
FLAG_STATUSES = ("open", "resolved")


@dataclass(frozen=True)
class Adjustment:
    delta: float
    reason: str
    actor: str

    def to_dict(self) -> dict:
        return {"delta": self.delta, "reason": self.reason,
                "actor": self.actor}


@dataclass(frozen=True)
class GradeRecord:
    """One student's grade with its derivation and override history.

    ``final`` is always ``clamp(s_f + sum of adjustment deltas)``; a
    record can only be ``auto_approved`` while it has no adjustments.
    """

    student: StudentId
    team_id: str
    pqs: float
    ncs: float
    s_f: float
    adjustments: tuple[Adjustment, ...] = ()
    status: str = "flagged_pending"

    def __post_init__(self) -> None:
        if self.status not in GRADE_STATUSES:
            raise ValidationError(f"unknown grade status {self.status!r}")
        if self.status == "auto_approved" and self.adjustments:
            raise ValidationError(
                "auto_approved records cannot carry adjustments")

    @property
    def final(self) -> float:
        return clamp_score(self.s_f + sum(a.delta for a in self.adjustments))

    def with_adjustment(self, adjustment: Adjustment,
                        status: str) -> "GradeRecord":
        return replace(self, adjustments=self.adjustments + (adjustment,),
                       status=status)

    def to_dict(self) -> dict:
        return {
            "student": self.student,
            "team_id": self.team_id,
            "pqs": self.pqs,
            "ncs": self.ncs,
            "s_f": self.s_f,
            "adjustments": [a.to_dict() for a in self.adjustments],
            "final": self.final,
            "status": self.status,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GradeRecord":
        return cls(
            student=data["student"],
            team_id=data["team_id"],
            pqs=data["pqs"],
            ncs=data["ncs"],
            s_f=data["s_f"],
            adjustments=tuple(Adjustment(**a) for a in data["adjustments"]),
            status=data["status"],
        )


@dataclass(frozen=True)
class AnomalyFlag:
    """An irregularity queued for instructor review."""

    id: str
    team_id: str
    kind: str
    student: StudentId | None = None
    evidence: dict = field(default_factory=dict)
    status: str = "open"
    resolution_note: str = ""

    def __post_init__(self) -> None:
        if self.kind not in FLAG_KINDS:
            raise ValidationError(f"unknown flag kind {self.kind!r}")
        if self.status not in FLAG_STATUSES:
            raise ValidationError(f"unknown flag status {self.status!r}")
        if self.status == "resolved" and not self.resolution_note:
            raise ValidationError(
                "resolved flags require a non-empty resolution note")

    def resolved(self, note: str) -> "AnomalyFlag":
        return replace(self, status="resolved", resolution_note=note)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "team_id": self.team_id,
            "kind": self.kind,
            "student": self.student,
            "evidence": dict(sorted(self.evidence.items())),
            "status": self.status,
            "resolution_note": self.resolution_note,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnomalyFlag":
        return cls(
            id=data["id"],
            team_id=data["team_id"],
            kind=data["kind"],
            student=data.get("student"),
            evidence=dict(data.get("evidence", {})),
            status=data["status"],
            resolution_note=data.get("resolution_note", ""),
        )


@dataclass(frozen=True)
class FeedbackSummary:
    student: StudentId
    strengths: tuple[str, ...]
    weaknesses: tuple[str, ...]
    rendered: str

    def to_dict(self) -> dict:
        return {
            "student": self.student,
            "strengths": list(self.strengths),
            "weaknesses": list(self.weaknesses),
            "rendered": self.rendered,
        }
