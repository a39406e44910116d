"""LMS export: the grade CSV consumed downstream of the pipeline."""

from __future__ import annotations

import csv
import io
from pathlib import Path

from repograde.errors import PolicyError
from repograde.grading.records import AnomalyFlag, GradeRecord

CSV_HEADER = ("student_id", "team_id", "pqs", "ncs", "final", "status",
              "flags")


def render_lms_csv(records: list[GradeRecord],
                   flags: list[AnomalyFlag],
                   allow_pending: bool = False) -> str:
    """Render the LMS CSV (sorted by team then student, 2-decimal scores).

    The flags column lists the kinds of the student's flags plus any
    team-level flags of their team, sorted and semicolon-joined.

    Raises:
        PolicyError: a record is still flagged_pending and
            ``allow_pending`` was not set.
    """
    pending = [r for r in records if r.status == "flagged_pending"]
    if pending and not allow_pending:
        raise PolicyError(
            "records still pending review: "
            + ", ".join(sorted(r.student for r in pending)))

    by_student: dict[tuple[str, str], list[str]] = {}
    team_level: dict[str, list[str]] = {}
    for flag in flags:
        if flag.student is None:
            team_level.setdefault(flag.team_id, []).append(flag.kind)
        else:
            by_student.setdefault((flag.team_id, flag.student),
                                  []).append(flag.kind)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in sorted(records, key=lambda r: (r.team_id, r.student)):
        kinds = sorted(by_student.get((record.team_id, record.student), [])
                       + team_level.get(record.team_id, []))
        writer.writerow([
            record.student,
            record.team_id,
            f"{record.pqs:.2f}",
            f"{record.ncs:.2f}",
            f"{record.final:.2f}",
            record.status,
            ";".join(kinds),
        ])
    return buffer.getvalue()


def write_lms_csv(records: list[GradeRecord], flags: list[AnomalyFlag],
                  path: str | Path, allow_pending: bool = False) -> None:
    Path(path).write_text(
        render_lms_csv(records, flags, allow_pending=allow_pending),
        encoding="utf-8")
