"""Assembly of the canonical project snapshot (pipeline data extraction).

Runs the pinned git invocations against a working copy, resolves every
author identity against the team roster, and folds the parser outputs
into one deterministic, JSON-serializable structure.
"""

from __future__ import annotations

import json
import subprocess
from dataclasses import dataclass, field
from pathlib import Path

from repograde.errors import GraderError
from repograde.ingest.blame import BlameRecord, parse_blame
from repograde.ingest.forge import (IssueEvent, ReviewEvent,
                                    load_forge_export)
from repograde.ingest.gitlog import (GIT_LOG_ARGS, CommitRecord,
                                     commit_from_dict, parse_commit_log)
from repograde.model import TeamRoster, resolve_identity

# Vendored blobs distort ownership: anything bigger than this, or that
# looks binary, is excluded from blame and duplication analysis.
MAX_TEXT_FILE_BYTES = 1 << 20
_BINARY_SNIFF_BYTES = 8192


@dataclass(frozen=True)
class ProjectSnapshot:
    """Everything the scoring stages need, parsed and identity-resolved.

    ``diffs`` maps commit hash -> path -> (before, after) file texts,
    captured at ingest so the scoring stage can classify trivial
    commits without reopening the repository.
    """

    team_id: str
    commits: tuple[CommitRecord, ...]
    blame: tuple[BlameRecord, ...]
    issues: tuple[IssueEvent, ...]
    reviews: tuple[ReviewEvent, ...]
    files: dict[str, str] = field(default_factory=dict)
    diffs: dict[str, dict[str, tuple[str, str]]] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()


def _run_git(repo_path: Path, args: tuple[str, ...]) -> bytes:
    try:
        proc = subprocess.run(
            ["git", "-C", str(repo_path), *args],
            capture_output=True, check=True)
    except FileNotFoundError as exc:
        raise OSError("git executable not found") from exc
    except subprocess.CalledProcessError as exc:
        stderr = exc.stderr.decode("utf-8", errors="replace").strip()
        raise OSError(
            f"git {' '.join(args[:1])} failed in {repo_path}: {stderr}"
        ) from exc
    return proc.stdout


def _looks_binary(data: bytes) -> bool:
    return b"\0" in data[:_BINARY_SNIFF_BYTES]


def _list_tracked_files(repo_path: Path) -> list[str]:
    out = _run_git(repo_path, ("ls-files", "-z"))
    return sorted(p for p in out.decode("utf-8", errors="replace").split("\0")
                  if p)


def _show_file(repo_path: Path, rev: str, path: str) -> str | None:
    """Text of ``path`` at ``rev``, or None when absent/binary/too big."""
    proc = subprocess.run(
        ["git", "-C", str(repo_path), "show", f"{rev}:{path}"],
        capture_output=True)
    if proc.returncode != 0:
        return None
    data = proc.stdout
    if len(data) > MAX_TEXT_FILE_BYTES or _looks_binary(data):
        return None
    return data.decode("utf-8", errors="replace")


def _capture_diffs(repo_path: Path, commits: list[CommitRecord]
                   ) -> dict[str, dict[str, tuple[str, str]]]:
    """Per-commit (before, after) texts for every non-binary delta."""
    diffs: dict[str, dict[str, tuple[str, str]]] = {}
    for commit in commits:
        per_path: dict[str, tuple[str, str]] = {}
        for delta in commit.deltas:
            if delta.binary:
                continue
            before_path = delta.old_path or delta.path
            before = _show_file(repo_path, f"{commit.hash}^", before_path)
            after = _show_file(repo_path, commit.hash, delta.path)
            if before is None and after is None:
                continue
            per_path[delta.path] = (before or "", after or "")
        if per_path:
            diffs[commit.hash] = per_path
    return diffs


def build_project_snapshot(repo_path: str | Path,
                           forge_export: str | Path | None,
                           roster: TeamRoster) -> ProjectSnapshot:
    """Mine a repository working copy into a ProjectSnapshot.

    Every author/actor identity is passed through the roster; commits
    whose identity matches no alias keep ``resolved_author=None`` and
    contribute a warning instead of aborting the run.  Blame is
    computed for every tracked non-binary file of the final revision;
    a missing forge export yields empty event lists plus a warning.

    Raises:
        OSError: the repository is unreadable or not a git work tree.
    """
    repo_path = Path(repo_path)
    if not repo_path.is_dir():
        raise OSError(f"repository path {repo_path} is not a directory")

    warnings: set[str] = set()

    raw_log = _run_git(repo_path, GIT_LOG_ARGS)
    commits = []
    for record in parse_commit_log(raw_log):
        student = resolve_identity(record.author_identity, roster)
        if student is None:
            warnings.add("unattributed identity: "
                         f"{record.author_identity!r}")
        commits.append(CommitRecord(
            hash=record.hash, author_name=record.author_name,
            author_identity=record.author_identity,
            timestamp=record.timestamp, message=record.message,
            deltas=record.deltas, resolved_author=student))

    files: dict[str, str] = {}
    blame: list[BlameRecord] = []
    for rel_path in _list_tracked_files(repo_path):
        full = repo_path / rel_path
        try:
            data = full.read_bytes()
        except OSError:
            warnings.add(f"unreadable file skipped: {rel_path}")
            continue
        if len(data) > MAX_TEXT_FILE_BYTES or _looks_binary(data):
            continue
        files[rel_path] = data.decode("utf-8", errors="replace")
        raw_blame = _run_git(
            repo_path, ("blame", "--line-porcelain", "--", rel_path))
        blame.extend(parse_blame(raw_blame, rel_path))

    issues: list[IssueEvent] = []
    reviews: list[ReviewEvent] = []
    if forge_export is not None and Path(forge_export).is_file():
        issues, reviews = load_forge_export(forge_export)
    else:
        warnings.add("forge export missing; issue and review analysis "
                     "will see no events")

    for event in issues:
        if resolve_identity(event.actor_identity, roster) is None:
            warnings.add(f"unattributed identity: {event.actor_identity!r}")
    for event in reviews:
        if resolve_identity(event.reviewer_identity, roster) is None:
            warnings.add(f"unattributed identity: {event.reviewer_identity!r}")

    blame.sort(key=lambda b: (b.path, b.line_number))
    return ProjectSnapshot(
        team_id=roster.team_id,
        commits=tuple(commits),
        blame=tuple(blame),
        issues=tuple(issues),
        reviews=tuple(reviews),
        files=files,
        diffs=_capture_diffs(repo_path, commits),
        warnings=tuple(sorted(warnings)),
    )


def snapshot_to_dict(snapshot: ProjectSnapshot) -> dict:
    """Canonical dict form with stable key and element order."""
    return {
        "team_id": snapshot.team_id,
        "commits": [c.to_dict() for c in snapshot.commits],
        "blame": [b.to_dict() for b in snapshot.blame],
        "issues": [e.to_dict() for e in snapshot.issues],
        "reviews": [e.to_dict() for e in snapshot.reviews],
        "files": {path: snapshot.files[path]
                  for path in sorted(snapshot.files)},
        "diffs": {
            commit_hash: {
                path: {"before": pair[0], "after": pair[1]}
                for path, pair in sorted(per_path.items())
            }
            for commit_hash, per_path in sorted(snapshot.diffs.items())
        },
        "warnings": list(snapshot.warnings),
    }


def snapshot_from_dict(data: dict) -> ProjectSnapshot:
    from datetime import datetime

    return ProjectSnapshot(
        team_id=data["team_id"],
        commits=tuple(commit_from_dict(c) for c in data["commits"]),
        blame=tuple(BlameRecord(**b) for b in data["blame"]),
        issues=tuple(
            IssueEvent(
                issue_id=e["issue_id"], kind=e["kind"],
                actor_identity=e["actor_identity"],
                timestamp=datetime.fromisoformat(e["timestamp"]),
                labels=tuple(e["labels"]), body=e["body"])
            for e in data["issues"]),
        reviews=tuple(
            ReviewEvent(
                pull_request_id=e["pull_request_id"],
                reviewer_identity=e["reviewer_identity"],
                timestamp=datetime.fromisoformat(e["timestamp"]),
                body=e["body"], verdict=e["verdict"])
            for e in data["reviews"]),
        files=dict(data["files"]),
        diffs={
            commit_hash: {path: (pair["before"], pair["after"])
                          for path, pair in per_path.items()}
            for commit_hash, per_path in data.get("diffs", {}).items()
        },
        warnings=tuple(data["warnings"]),
    )


def dump_snapshot(snapshot: ProjectSnapshot, path: str | Path) -> None:
    """Write ``snapshot.json`` (UTF-8, two-space indent, stable order)."""
    payload = json.dumps(snapshot_to_dict(snapshot), indent=2,
                         ensure_ascii=False) + "\n"
    Path(path).write_text(payload, encoding="utf-8")


def load_snapshot(path: str | Path) -> ProjectSnapshot:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GraderError(f"{path}: malformed snapshot: {exc}") from exc
    return snapshot_from_dict(data)
