"""Append-only audit log: JSON Lines, strictly increasing sequence.

Every grading decision and override is an entry; replaying the log
from an empty grade book reproduces the current state byte-for-byte
(see :mod:`repograde.grading.book`).  Entries are immutable once
written; the writer only ever appends.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from repograde.errors import ValidationError

AUDIT_ACTIONS = ("grade_computed", "flag_raised", "flag_resolved",
                 "override_applied", "approved", "exported")


@dataclass(frozen=True)
class AuditEntry:
    sequence_number: int
    timestamp: str
    actor: str
    action: str
    payload: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.action not in AUDIT_ACTIONS:
            raise ValidationError(f"unknown audit action {self.action!r}")

    def to_dict(self) -> dict:
        return {
            "sequence_number": self.sequence_number,
            "timestamp": self.timestamp,
            "actor": self.actor,
            "action": self.action,
            "payload": self.payload,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True,
                          ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> "AuditEntry":
        return cls(
            sequence_number=data["sequence_number"],
            timestamp=data["timestamp"],
            actor=data["actor"],
            action=data["action"],
            payload=dict(data.get("payload", {})),
        )


def append_audit_entries(path: str | Path,
                         entries: list[AuditEntry] | tuple[AuditEntry, ...],
                         ) -> None:
    """Append entries to the log file, flushing before returning."""
    if not entries:
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", encoding="utf-8") as fh:
        for entry in entries:
            fh.write(entry.to_json_line() + "\n")
        fh.flush()


def read_audit_log(path: str | Path) -> list[AuditEntry]:
    """Read and validate the full log (strictly increasing sequence)."""
    path = Path(path)
    if not path.exists():
        return []
    entries: list[AuditEntry] = []
    last_seq = 0
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            entry = AuditEntry.from_dict(json.loads(line))
            if entry.sequence_number <= last_seq:
                raise ValidationError(
                    f"{path}:{lineno}: sequence {entry.sequence_number} not "
                    f"strictly increasing (previous {last_seq})")
            last_seq = entry.sequence_number
            entries.append(entry)
    return entries
