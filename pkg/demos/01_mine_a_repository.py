"""Mine a scratch git repository into the canonical snapshot.

Builds a tiny two-author repository in a temp directory, runs the
pinned git log/blame invocations through the parsers, and prints what
the ingest stage sees.
"""

import subprocess
import tempfile
from pathlib import Path

from repograde.ingest import build_project_snapshot
from repograde.model import TeamRoster


def git(repo: Path, *args: str, env: dict | None = None) -> None:
    import os

    full = dict(os.environ, **(env or {}))
    subprocess.run(["git", "-C", str(repo), *args], check=True,
                   capture_output=True, env=full)


def commit(repo: Path, name: str, email: str, message: str,
           when: str) -> None:
    git(repo, "add", "-A")
    git(repo, "-c", f"user.name={name}", "-c", f"user.email={email}",
        "commit", "-q", "-m", message,
        env={"GIT_AUTHOR_DATE": when, "GIT_COMMITTER_DATE": when})


def main() -> None:
    root = Path(tempfile.mkdtemp(prefix="repograde-demo-"))
    repo = root / "repo"
    repo.mkdir()
    git(repo, "init", "-q", ".")

    (repo / "solver.py").write_text(
        "def solve(x):\n    return x * 2\n")
    commit(repo, "Ana", "ana@uni.edu", "initial solver",
           "2026-03-01T10:00:00+00:00")

    (repo / "solver.py").write_text(
        "def solve(x):\n    if x < 0:\n        raise ValueError(x)\n"
        "    return x * 2\n")
    (repo / "README.md").write_text("# Solver\n\nUsage: call solve().\n")
    commit(repo, "Ben", "ben@uni.edu", "guard negatives, add readme",
           "2026-03-02T11:00:00+00:00")

    roster = TeamRoster(team_id="demo-team", members=("ana", "ben"),
                        aliases={"ana@uni.edu": "ana",
                                 "ben@uni.edu": "ben"})
    snapshot = build_project_snapshot(repo, None, roster)

    print(f"team: {snapshot.team_id}")
    print(f"commits ({len(snapshot.commits)}):")
    for record in snapshot.commits:
        changes = ", ".join(
            f"{d.path} +{d.lines_added}/-{d.lines_deleted} [{d.status}]"
            for d in record.deltas)
        print(f"  {record.hash[:8]} {record.timestamp} "
              f"{record.resolved_author}: {record.message} ({changes})")

    print("\nline ownership from blame:")
    per_author: dict[str, int] = {}
    for line in snapshot.blame:
        per_author[line.author_identity] = per_author.get(
            line.author_identity, 0) + 1
    for author, count in sorted(per_author.items()):
        print(f"  {author}: {count} surviving lines")

    print("\nwarnings:", list(snapshot.warnings) or "none")


if __name__ == "__main__":
    main()
