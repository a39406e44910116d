"""Line-ownership attribution from blame plus edit-history partial credit.

The blamed author of each surviving line gets full credit (1.0 per
line).  Students with no blame in a file but whose substantive commits
modified it get partial credit: ``partial_credit * modified_lines``
line-equivalents, where ``modified_lines`` (their added+deleted lines
in that file) is capped at the file's length, and a file's combined
partial credit never exceeds its length.  Identities that resolve to
no roster member are excluded from credit entirely.
"""

from __future__ import annotations

from dataclasses import dataclass

from repograde.contribution.classify import CommitClass
from repograde.ingest.blame import BlameRecord
from repograde.ingest.gitlog import CommitRecord
from repograde.model import StudentId, TeamRoster, resolve_identity


@dataclass(frozen=True)
class OwnershipMap:
    """Credited line weights per student and per file."""

    credited: dict[StudentId, dict[str, float]]
    line_totals: dict[str, int]
    unresolved_lines: int = 0

    def total_owned(self, student: StudentId) -> float:
        return sum(self.credited.get(student, {}).values())

    def shares(self) -> dict[StudentId, float]:
        """Each student's fraction of all credited line weight."""
        totals = {s: self.total_owned(s) for s in self.credited}
        grand = sum(totals.values())
        if grand <= 0:
            return {s: 0.0 for s in totals}
        return {s: v / grand for s, v in totals.items()}

    def to_dict(self) -> dict:
        return {
            "credited": {s: dict(sorted(paths.items()))
                         for s, paths in sorted(self.credited.items())},
            "line_totals": dict(sorted(self.line_totals.items())),
            "unresolved_lines": self.unresolved_lines,
        }


def compute_ownership(blame: list[BlameRecord] | tuple[BlameRecord, ...],
                      commits: list[CommitRecord] | tuple[CommitRecord, ...],
                      roster: TeamRoster,
                      partial_credit: float,
                      commit_classes: dict[str, CommitClass] | None = None,
                      ) -> OwnershipMap:
    """Attribute final-revision lines to students.

    ``commit_classes`` marks which commits are substantive; when
    omitted every commit counts as substantive.  With
    ``partial_credit=0`` the credited totals equal the resolved blame
    line counts exactly (conservation).
    """
    line_totals: dict[str, int] = {}
    blame_credit: dict[StudentId, dict[str, float]] = {}
    blamed_in_path: dict[str, set[StudentId]] = {}
    unresolved = 0
    for record in blame:
        line_totals[record.path] = line_totals.get(record.path, 0) + 1
        student = resolve_identity(record.author_identity, roster)
        if student is None:
            unresolved += 1
            continue
        blame_credit.setdefault(student, {})
        blame_credit[student][record.path] = (
            blame_credit[student].get(record.path, 0.0) + 1.0)
        blamed_in_path.setdefault(record.path, set()).add(student)

    # Substantive modified-line counts per (student, path).
    modified: dict[StudentId, dict[str, int]] = {}
    for commit in commits:
        if commit.resolved_author is None:
            continue
        if commit_classes is not None:
            cls = commit_classes.get(commit.hash)
            if cls is None or cls.classification != "substantive":
                continue
        per_path = modified.setdefault(commit.resolved_author, {})
        for delta in commit.deltas:
            if delta.binary:
                continue
            per_path[delta.path] = (per_path.get(delta.path, 0)
                                    + delta.lines_added + delta.lines_deleted)

    credited = {s: dict(paths) for s, paths in blame_credit.items()}
    if partial_credit > 0:
        partials: dict[str, dict[StudentId, float]] = {}
        for student in sorted(modified):
            for path, count in modified[student].items():
                total = line_totals.get(path)
                if not total:
                    continue  # file absent from the final revision
                if student in blamed_in_path.get(path, set()):
                    continue  # blame credit dominates
                grant = partial_credit * min(count, total)
                if grant > 0:
                    partials.setdefault(path, {})[student] = grant
        for path, grants in partials.items():
            total_grant = sum(grants.values())
            cap = float(line_totals[path])
            scale = cap / total_grant if total_grant > cap else 1.0
            for student, grant in grants.items():
                credited.setdefault(student, {})
                credited[student][path] = (
                    credited[student].get(path, 0.0) + grant * scale)

    for member in roster.members:
        credited.setdefault(member, {})
    return OwnershipMap(credited=credited, line_totals=line_totals,
                        unresolved_lines=unresolved)
