"""End-to-end run: mine, score, grade, export, for one synthetic team.

Creates a three-member scratch repository where one member dominates,
plus a forge-event export and adapter files, then walks the pipeline
stages exactly as the CLI does and prints the resulting grades,
flags, and feedback.
"""

import json
import subprocess
import tempfile
from pathlib import Path

from repograde import pipeline
from repograde.grading.export import render_lms_csv
from repograde.ingest import build_project_snapshot
from repograde.model import TeamRoster, WeightConfig


def git(repo: Path, *args: str, env: dict | None = None) -> None:
    import os

    subprocess.run(["git", "-C", str(repo), *args], check=True,
                   capture_output=True, env=dict(os.environ, **(env or {})))


def commit(repo: Path, email: str, message: str, when: str) -> None:
    git(repo, "add", "-A")
    git(repo, "-c", f"user.name={email.split('@')[0]}",
        "-c", f"user.email={email}", "commit", "-q", "-m", message,
        env={"GIT_AUTHOR_DATE": when, "GIT_COMMITTER_DATE": when})


def build_team_repo(root: Path) -> tuple[Path, Path]:
    repo = root / "repo"
    repo.mkdir()
    git(repo, "init", "-q", ".")

    (repo / "src").mkdir()
    big = "\n".join(f"ENGINE_STEP_{i} = {i}" for i in range(160)) + "\n"
    (repo / "src/engine.py").write_text("def run(plan):\n    return plan\n"
                                        + big)
    commit(repo, "ana@uni.edu", "engine core", "2026-03-01T10:00:00+00:00")

    (repo / "src/cli.py").write_text(
        "def entry(argv):\n    return 0\n"
        + "\n".join(f"FLAG_{i} = {i}" for i in range(30)) + "\n")
    commit(repo, "ben@uni.edu", "cli skeleton", "2026-03-02T10:00:00+00:00")

    (repo / "src/report.py").write_text(
        "def render(rows):\n    return len(rows)\n"
        + "\n".join(f"COLUMN_{i} = {i}" for i in range(25)) + "\n")
    commit(repo, "cid@uni.edu", "report module",
           "2026-03-03T10:00:00+00:00")

    (repo / "README.md").write_text(
        "# Team project\n\n## Installation\npip install .\n\n"
        "## Usage\nRun the cli module.\n\n## Architecture\n"
        "Engine, CLI, report.\n\n## Contributing\nIssues first.\n\n"
        "## License\nMIT\n")
    commit(repo, "ana@uni.edu", "docs", "2026-03-04T10:00:00+00:00")

    events = [
        {"type": "issue", "issue_id": 1, "kind": "opened",
         "actor": "ana@uni.edu", "timestamp": "2026-03-02T09:00:00+00:00",
         "labels": ["bug"], "body": "engine crashes on empty plan"},
        {"type": "issue", "issue_id": 1, "kind": "closed",
         "actor": "ana@uni.edu", "timestamp": "2026-03-03T09:00:00+00:00",
         "labels": [], "body": ""},
        {"type": "review", "pr_id": 1, "reviewer": "ben@uni.edu",
         "timestamp": "2026-03-03T12:00:00+00:00", "verdict": "comment",
         "body": "possible off-by-one in the loop bound; suggest a "
                 "helper per our style guide"},
        {"type": "review", "pr_id": 2, "reviewer": "cid@uni.edu",
         "timestamp": "2026-03-03T13:00:00+00:00", "verdict": "approve",
         "body": "lgtm"},
    ]
    forge = root / "forge.jsonl"
    forge.write_text("\n".join(json.dumps(e) for e in events) + "\n")
    return repo, forge


def write_adapters(root: Path) -> Path:
    adapters = root / "adapters"
    adapters.mkdir()
    (adapters / "coverage.lcov").write_text(
        "SF:src/engine.py\nLF:120\nLH:96\nBRF:30\nBRH:21\nend_of_record\n")
    (adapters / "lint.json").write_text('{"findings": 4, "kloc": 1.2}')
    (adapters / "test_results.json").write_text('{"total": 18, "passed": 17}')
    return adapters


def main() -> None:
    root = Path(tempfile.mkdtemp(prefix="repograde-demo-"))
    repo, forge = build_team_repo(root)
    adapters = write_adapters(root)
    roster = TeamRoster(
        team_id="demo-team", members=("ana", "ben", "cid"),
        aliases={"ana@uni.edu": "ana", "ben@uni.edu": "ben",
                 "cid@uni.edu": "cid"})
    config = WeightConfig()

    snapshot = build_project_snapshot(repo, forge, roster)
    quality = pipeline.assess_quality(snapshot, config, adapters)
    contribution = pipeline.analyze_contribution(snapshot, roster, config)
    book, feedback = pipeline.grade_team(
        quality, contribution, config, pipeline.snapshot_clock(snapshot))

    print(f"project quality score: {quality.pqs:.1f}")
    for name in ("code_quality", "testing", "documentation",
                 "functionality"):
        print(f"  {name}: {getattr(quality, name):.1f}")

    print("\nper-student outcome:")
    for student in sorted(book.records):
        record = book.records[student]
        ncs = contribution.normalized.ncs[student]
        share = contribution.normalized.share[student]
        print(f"  {student}: ncs {ncs:5.1f} share {share:.3f} "
              f"final {record.final:5.1f} [{record.status}]")

    print("\nflags:")
    for flag in book.flags.values():
        print(f"  {flag.kind} ({flag.student or 'team'})")
    if not book.flags:
        print("  none")

    print("\nfeedback lines:")
    for student in sorted(feedback):
        print(f"  {student}: {feedback[student]['rendered']}")

    print("\nLMS CSV:")
    print(render_lms_csv(list(book.records.values()),
                         list(book.flags.values()),
                         allow_pending=True).strip())


if __name__ == "__main__":
    main()
