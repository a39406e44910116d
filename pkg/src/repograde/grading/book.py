"""Event-sourced grade book: the single writer behind grades and flags.

All mutations go through methods that emit exactly one audit entry
each; :meth:`GradeBook.replay` folds a log back into an identical
book, which is what makes the audit trail authoritative in appeals.
"""

from __future__ import annotations

import json

from repograde.errors import (ConflictError, NotFoundError, PolicyError,
                              ValidationError)
from repograde.grading.audit import AuditEntry
from repograde.grading.records import Adjustment, AnomalyFlag, GradeRecord
from repograde.model import StudentId


class GradeBook:
    """Grades and flags for one team, with an append-only history."""

    def __init__(self, team_id: str) -> None:
        self.team_id = team_id
        self.records: dict[StudentId, GradeRecord] = {}
        self.flags: dict[str, AnomalyFlag] = {}
        self.entries: list[AuditEntry] = []
        self._last_seq = 0

    # -- construction ---------------------------------------------------

    @classmethod
    def build(cls, team_id: str, records: list[GradeRecord],
              flags: list[AnomalyFlag], actor: str,
              clock: str) -> "GradeBook":
        """Create a book from freshly computed grades and flags.

        Emits grade_computed entries, flag_raised entries, then an
        approved transition for every record with no open flag.
        """
        book = cls(team_id)
        for record in sorted(records, key=lambda r: r.student):
            pending = GradeRecord(
                student=record.student, team_id=record.team_id,
                pqs=record.pqs, ncs=record.ncs, s_f=record.s_f,
                adjustments=record.adjustments, status="flagged_pending")
            book._append(actor, clock, "grade_computed",
                         {"record": pending.to_dict()})
        for flag in sorted(flags, key=lambda f: f.id):
            book._append(actor, clock, "flag_raised", {"flag": flag.to_dict()})
        flagged_students = {f.student for f in flags if f.status == "open"}
        for student in sorted(book.records):
            if student not in flagged_students:
                book._append(actor, clock, "approved",
                             {"student": student, "status": "auto_approved"})
        return book

    @classmethod
    def replay(cls, entries: list[AuditEntry],
               team_id: str | None = None) -> "GradeBook":
        """Fold an audit log from empty state back into a book."""
        book = cls(team_id or "")
        for entry in entries:
            book._apply(entry)
            book.entries.append(entry)
            book._last_seq = entry.sequence_number
            if not book.team_id:
                record = entry.payload.get("record")
                if record:
                    book.team_id = record["team_id"]
        return book

    # -- event plumbing -------------------------------------------------

    def _append(self, actor: str, clock: str, action: str,
                payload: dict) -> AuditEntry:
        entry = AuditEntry(
            sequence_number=self._last_seq + 1,
            timestamp=clock, actor=actor, action=action, payload=payload)
        self._apply(entry)
        self.entries.append(entry)
        self._last_seq = entry.sequence_number
        return entry

    def _apply(self, entry: AuditEntry) -> None:
        payload = entry.payload
        if entry.action == "grade_computed":
            record = GradeRecord.from_dict(payload["record"])
            self.records[record.student] = record
        elif entry.action == "flag_raised":
            flag = AnomalyFlag.from_dict(payload["flag"])
            self.flags[flag.id] = flag
        elif entry.action in ("override_applied", "flag_resolved"):
            self._apply_override(payload)
        elif entry.action == "approved":
            student = payload.get("student")
            if student is not None:
                record = self.records[student]
                self.records[student] = GradeRecord(
                    student=record.student, team_id=record.team_id,
                    pqs=record.pqs, ncs=record.ncs, s_f=record.s_f,
                    adjustments=record.adjustments,
                    status=payload["status"])
        elif entry.action == "exported":
            pass

    def _apply_override(self, payload: dict) -> None:
        flag = self.flags[payload["flag_id"]]
        self.flags[flag.id] = flag.resolved(payload["note"])
        student = payload.get("student")
        if student is None:
            return
        record = self.records[student]
        delta = payload.get("delta", 0.0)
        adjustments = record.adjustments
        if delta:
            adjustments = adjustments + (
                Adjustment(delta=delta, reason=payload["note"],
                           actor=payload["actor"]),)
        remaining_open = any(
            f.status == "open" and f.student == student
            for f in self.flags.values())
        status = "flagged_pending" if remaining_open else "approved_with_override"
        self.records[student] = GradeRecord(
            student=record.student, team_id=record.team_id, pqs=record.pqs,
            ncs=record.ncs, s_f=record.s_f, adjustments=adjustments,
            status=status)

    # -- review operations ----------------------------------------------

    def open_flags(self) -> list[AnomalyFlag]:
        return [self.flags[fid] for fid in sorted(self.flags)
                if self.flags[fid].status == "open"]

    def record_override(self, flag_id: str, delta: float, note: str,
                        actor: str, clock: str) -> AuditEntry:
        """Resolve a flag, optionally adjusting the student's grade.

        Appends exactly one audit entry: ``override_applied`` when a
        point delta is given, ``flag_resolved`` for a note-only
        resolution.

        Raises:
            NotFoundError: unknown flag id.
            ConflictError: the flag was already resolved.
            ValidationError: empty note, or a non-zero delta on a
                team-level flag (which has no student to adjust).
        """
        flag = self.flags.get(flag_id)
        if flag is None:
            raise NotFoundError(f"no such flag: {flag_id}")
        if flag.status != "open":
            raise ConflictError(f"flag {flag_id} is already resolved")
        if not note or not note.strip():
            raise ValidationError("override note must be non-empty")
        if flag.student is None and delta:
            raise ValidationError(
                f"flag {flag_id} is team-level; only a note-only "
                "resolution (delta 0) is allowed")
        action = "override_applied" if delta else "flag_resolved"
        payload = {
            "flag_id": flag_id,
            "student": flag.student,
            "delta": float(delta),
            "note": note,
            "actor": actor,
        }
        return self._append(actor, clock, action, payload)

    def approve_team(self, actor: str, clock: str) -> AuditEntry:
        """Mark the team review complete.

        Raises:
            PolicyError: open flags remain.
        """
        open_flags = self.open_flags()
        if open_flags:
            raise PolicyError(
                f"team {self.team_id} still has {len(open_flags)} open "
                f"flag(s): {', '.join(f.id for f in open_flags)}")
        return self._append(actor, clock, "approved",
                            {"team_id": self.team_id})

    def mark_exported(self, actor: str, clock: str, detail: str) -> AuditEntry:
        return self._append(actor, clock, "exported", {"detail": detail})

    # -- serialization ---------------------------------------------------

    def state_dict(self) -> dict:
        """Current grade state (records + flags), canonically ordered."""
        return {
            "team_id": self.team_id,
            "records": {s: self.records[s].to_dict()
                        for s in sorted(self.records)},
            "flags": {fid: self.flags[fid].to_dict()
                      for fid in sorted(self.flags)},
        }

    def state_json(self) -> str:
        return json.dumps(self.state_dict(), sort_keys=True,
                          ensure_ascii=False)

    def grades_dict(self) -> dict:
        return {
            "team_id": self.team_id,
            "records": [self.records[s].to_dict()
                        for s in sorted(self.records)],
        }

    def flags_dict(self) -> dict:
        return {
            "team_id": self.team_id,
            "flags": [self.flags[fid].to_dict()
                      for fid in sorted(self.flags)],
        }
