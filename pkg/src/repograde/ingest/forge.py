"""Loader for the offline forge-export file (JSON Lines).

Each line is one event object carrying a ``type`` discriminator:

* ``{"type": "issue", "issue_id", "kind", "actor", "timestamp",
  "labels", "body"}`` with kind in {opened, commented, closed,
  referenced_in_commit}
* ``{"type": "review", "pr_id", "reviewer", "timestamp", "body",
  "verdict"}`` with verdict in {approve, comment, request_changes}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

from repograde.errors import ParseError

ISSUE_KINDS = ("opened", "commented", "closed", "referenced_in_commit")
REVIEW_VERDICTS = ("approve", "comment", "request_changes")


@dataclass(frozen=True)
class IssueEvent:
    issue_id: int
    kind: str
    actor_identity: str
    timestamp: datetime
    labels: tuple[str, ...] = ()
    body: str = ""

    def to_dict(self) -> dict:
        return {
            "issue_id": self.issue_id,
            "kind": self.kind,
            "actor_identity": self.actor_identity,
            "timestamp": self.timestamp.isoformat(),
            "labels": list(self.labels),
            "body": self.body,
        }


@dataclass(frozen=True)
class ReviewEvent:
    pull_request_id: int
    reviewer_identity: str
    timestamp: datetime
    body: str
    verdict: str

    def to_dict(self) -> dict:
        return {
            "pull_request_id": self.pull_request_id,
            "reviewer_identity": self.reviewer_identity,
            "timestamp": self.timestamp.isoformat(),
            "body": self.body,
            "verdict": self.verdict,
        }


def _parse_timestamp(value: object, source: str, line: int) -> datetime:
    if not isinstance(value, str):
        raise ParseError(f"timestamp must be an ISO-8601 string, got {value!r}",
                         source=source, line=line)
    try:
        return datetime.fromisoformat(value)
    except ValueError as exc:
        raise ParseError(f"malformed timestamp {value!r}",
                         source=source, line=line) from exc


def load_forge_export(path: str | Path
                      ) -> tuple[list[IssueEvent], list[ReviewEvent]]:
    """Load and partition forge events, each list sorted by timestamp.

    Raises:
        ParseError: unknown ``type`` discriminator, malformed JSON or
            timestamp, or a non-approve review with an empty body; the
            message names the offending line.
    """
    path = Path(path)
    issues: list[IssueEvent] = []
    reviews: list[ReviewEvent] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, raw_line in enumerate(fh, start=1):
            raw_line = raw_line.strip()
            if not raw_line:
                continue
            try:
                obj = json.loads(raw_line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"malformed JSON: {exc.msg}",
                                 source=str(path), line=lineno) from exc
            kind = obj.get("type")
            if kind == "issue":
                issues.append(_issue_from_obj(obj, str(path), lineno))
            elif kind == "review":
                reviews.append(_review_from_obj(obj, str(path), lineno))
            else:
                raise ParseError(f"unknown event type {kind!r}",
                                 source=str(path), line=lineno)
    issues.sort(key=lambda e: e.timestamp)
    reviews.sort(key=lambda e: e.timestamp)
    return issues, reviews


def _issue_from_obj(obj: dict, source: str, line: int) -> IssueEvent:
    kind = obj.get("kind")
    if kind not in ISSUE_KINDS:
        raise ParseError(f"unknown issue kind {kind!r}",
                         source=source, line=line)
    return IssueEvent(
        issue_id=int(obj["issue_id"]),
        kind=kind,
        actor_identity=str(obj["actor"]),
        timestamp=_parse_timestamp(obj.get("timestamp"), source, line),
        labels=tuple(obj.get("labels", ())),
        body=str(obj.get("body", "")),
    )


def _review_from_obj(obj: dict, source: str, line: int) -> ReviewEvent:
    verdict = obj.get("verdict")
    if verdict not in REVIEW_VERDICTS:
        raise ParseError(f"unknown review verdict {verdict!r}",
                         source=source, line=line)
    body = str(obj.get("body", ""))
    if not body and verdict != "approve":
        raise ParseError(
            f"review body may be empty only for verdict=approve, "
            f"got {verdict!r}", source=source, line=line)
    return ReviewEvent(
        pull_request_id=int(obj["pr_id"]),
        reviewer_identity=str(obj["reviewer"]),
        timestamp=_parse_timestamp(obj.get("timestamp"), source, line),
        body=body,
        verdict=verdict,
    )
