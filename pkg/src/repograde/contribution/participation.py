"""Issue-tracker participation: non-code contribution counting."""

from __future__ import annotations

from dataclasses import dataclass, field
from statistics import median

from repograde.ingest.forge import IssueEvent
from repograde.model import StudentId, TeamRoster, resolve_identity


@dataclass(frozen=True)
class ParticipationStats:
    """Per-student issue-tracker activity.

    ``responsiveness_hours`` is the median latency from a teammate's
    comment (on an issue the student had already participated in) to
    the student's next comment there; None when no such reply exists.
    """

    issues_opened: int = 0
    issues_closed: int = 0
    comments: int = 0
    references: int = 0
    label_histogram: dict[str, int] = field(default_factory=dict)
    responsiveness_hours: float | None = None

    @property
    def activity_count(self) -> int:
        return (self.issues_opened + self.issues_closed
                + self.comments + self.references)

    def to_dict(self) -> dict:
        return {
            "issues_opened": self.issues_opened,
            "issues_closed": self.issues_closed,
            "comments": self.comments,
            "references": self.references,
            "label_histogram": dict(sorted(self.label_histogram.items())),
            "responsiveness_hours": self.responsiveness_hours,
        }


def score_issue_participation(events: list[IssueEvent] | tuple[IssueEvent, ...],
                              roster: TeamRoster
                              ) -> dict[StudentId, ParticipationStats]:
    """Count and categorize issue interactions per roster member.

    Events whose actor resolves to no member are ignored.  Labels are
    histogrammed over every event the student performed.
    """
    opened: dict[StudentId, int] = {}
    closed: dict[StudentId, int] = {}
    comments: dict[StudentId, int] = {}
    references: dict[StudentId, int] = {}
    labels: dict[StudentId, dict[str, int]] = {}
    latencies: dict[StudentId, list[float]] = {}

    by_issue: dict[int, list[tuple[IssueEvent, StudentId]]] = {}
    for event in sorted(events, key=lambda e: e.timestamp):
        student = resolve_identity(event.actor_identity, roster)
        if student is None:
            continue
        by_issue.setdefault(event.issue_id, []).append((event, student))
        if event.kind == "opened":
            opened[student] = opened.get(student, 0) + 1
        elif event.kind == "closed":
            closed[student] = closed.get(student, 0) + 1
        elif event.kind == "commented":
            comments[student] = comments.get(student, 0) + 1
        elif event.kind == "referenced_in_commit":
            references[student] = references.get(student, 0) + 1
        hist = labels.setdefault(student, {})
        for label in event.labels:
            hist[label] = hist.get(label, 0) + 1

    # Reply latency: each teammate comment is paired with the prior
    # participant's next comment strictly after it on the same issue.
    for issue_events in by_issue.values():
        participated: set[StudentId] = set()
        for idx, (event, actor) in enumerate(issue_events):
            if event.kind == "commented":
                for student in participated - {actor}:
                    for later, later_actor in issue_events[idx + 1:]:
                        if later_actor == student and later.kind == "commented":
                            delta = later.timestamp - event.timestamp
                            latencies.setdefault(student, []).append(
                                delta.total_seconds() / 3600.0)
                            break
            participated.add(actor)

    stats: dict[StudentId, ParticipationStats] = {}
    for member in roster.members:
        member_latencies = latencies.get(member)
        stats[member] = ParticipationStats(
            issues_opened=opened.get(member, 0),
            issues_closed=closed.get(member, 0),
            comments=comments.get(member, 0),
            references=references.get(member, 0),
            label_histogram=labels.get(member, {}),
            responsiveness_hours=(median(member_latencies)
                                  if member_latencies else None),
        )
    return stats
