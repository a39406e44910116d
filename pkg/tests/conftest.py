"""Shared fixtures: scratch repositories and the pilot scenarios."""

from __future__ import annotations

import json
import subprocess
from dataclasses import dataclass
from pathlib import Path

import pytest

from repograde.model import TeamRoster

BASE_TIME = "2026-03-{day:02d}T{hour:02d}:{minute:02d}:00+00:00"


@dataclass
class Author:
    name: str
    email: str


S1 = Author("Ana Alpha", "s1@uni.edu")
S2 = Author("Ben Beta", "s2@uni.edu")
S3 = Author("Cam Gamma", "s3@uni.edu")
S4 = Author("Dee Delta", "s4@uni.edu")

TEAM_ROSTER = TeamRoster(
    team_id="team-1",
    members=("S1", "S2", "S3", "S4"),
    aliases={
        "s1@uni.edu": "S1", "s2@uni.edu": "S2",
        "s3@uni.edu": "S3", "s4@uni.edu": "S4",
    },
)


def roster_file(tmp_path: Path, roster: TeamRoster = TEAM_ROSTER) -> Path:
    path = tmp_path / "roster.json"
    path.write_text(json.dumps({"teams": [roster.to_dict()]}),
                    encoding="utf-8")
    return path


class RepoBuilder:
    """Builds deterministic scratch repositories commit by commit."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self.path.mkdir(parents=True, exist_ok=True)
        self._git("init", "-q", "-b", "main", ".")
        self._tick = 0

    def _git(self, *args: str, env: dict | None = None) -> str:
        import os

        full_env = dict(os.environ)
        if env:
            full_env.update(env)
        proc = subprocess.run(["git", "-C", str(self.path), *args],
                              capture_output=True, check=True, env=full_env)
        return proc.stdout.decode()

    def next_time(self) -> str:
        self._tick += 1
        day = 1 + self._tick // 12
        hour = 8 + (self._tick % 12)
        minute = (self._tick * 7) % 60
        return BASE_TIME.format(day=day, hour=hour, minute=minute)

    def commit(self, author: Author, message: str,
               files: dict[str, str | bytes | None] | None = None,
               when: str | None = None,
               renames: list[tuple[str, str]] | None = None) -> None:
        for old, new in renames or []:
            self._git("mv", old, new)
        for rel_path, content in (files or {}).items():
            target = self.path / rel_path
            if content is None:
                self._git("rm", "-q", rel_path)
                continue
            target.parent.mkdir(parents=True, exist_ok=True)
            if isinstance(content, bytes):
                target.write_bytes(content)
            else:
                target.write_text(content, encoding="utf-8")
            self._git("add", rel_path)
        stamp = when or self.next_time()
        self._git("-c", f"user.name={author.name}",
                  "-c", f"user.email={author.email}",
                  "commit", "-q", "--allow-empty", "-m", message,
                  env={"GIT_AUTHOR_DATE": stamp, "GIT_COMMITTER_DATE": stamp})

    def git_out(self, *args: str) -> str:
        return self._git(*args)


def module_source(name: str, lines: int, branchy: bool = False) -> str:
    """A synthetic source file with a known line count."""
    out = [f'"""Module {name}."""', ""]
    out.append(f"def {name}_main(value):")
    if branchy:
        out.append("    if value > 0:")
        out.append("        value -= 1")
    out.append("    return value")
    i = 0
    while len(out) < lines - 1:
        out.append(f"{name.upper()}_CONST_{i} = {i}")
        i += 1
    out.append("")
    return "\n".join(out)


def write_forge_export(path: Path, events: list[dict]) -> Path:
    lines = [json.dumps(e) for e in events]
    path.write_text("\n".join(lines) + ("\n" if lines else ""),
                    encoding="utf-8")
    return path


def _deep_review(pr_id: int, reviewer: str, when: str) -> dict:
    return {
        "type": "review", "pr_id": pr_id, "reviewer": reviewer,
        "timestamp": when, "verdict": "comment",
        "body": ("Possible off-by-one in the loop bound; suggest "
                 "extracting a helper per our style guide."),
    }


def _issue(issue_id: int, kind: str, actor: str, when: str,
           labels: list[str] | None = None, body: str = "") -> dict:
    return {
        "type": "issue", "issue_id": issue_id, "kind": kind, "actor": actor,
        "timestamp": when, "labels": labels or [], "body": body,
    }


# -- scenario repositories --------------------------------------------------

def build_balanced_repo(root: Path) -> tuple[Path, Path]:
    """Scenario A: four members contributing within a few percent.

    Source ownership is evenly spaced (98/100/102/104 lines) and every
    member authors a 16-line doc file, so shares stay within +-5% of
    25% without being artificially identical.
    """
    repo = RepoBuilder(root / "repo")
    line_counts = {"S1": 99, "S2": 101, "S3": 103, "S4": 105}
    authors = {"S1": S1, "S2": S2, "S3": S3, "S4": S4}
    modules = {"S1": "alpha", "S2": "beta", "S3": "gamma", "S4": "delta"}

    for sid in ("S1", "S2", "S3", "S4"):
        name = modules[sid]
        repo.commit(authors[sid], f"add {name} module",
                    {f"src/{name}.py": module_source(name,
                                                     line_counts[sid] - 4)})
    for sid in ("S1", "S2", "S3", "S4"):
        name = modules[sid]
        repo.commit(authors[sid], f"extend {name}",
                    {f"src/{name}.py": module_source(name,
                                                     line_counts[sid])})
    doc_targets = {
        "S1": "docs/alpha.md", "S2": "README.md",
        "S3": "docs/gamma.md", "S4": "docs/delta.md",
    }
    readme = "\n".join([
        "# Demo project", "",
        "## Installation", "pip install demo", "",
        "## Usage", "Run the demo module after installation.", "",
        "## Architecture", "Four small modules, one per area.", "",
        "## Contributing", "Open an issue first.", "",
        "## License", "MIT", "",
    ])  # 16 physical lines
    for sid in ("S1", "S2", "S3", "S4"):
        if doc_targets[sid] == "README.md":
            body = readme
        else:
            name = modules[sid]
            notes = [f"# Notes on {name}", ""]
            notes += [f"Design point {i} for the {name} module."
                      for i in range(14)]
            notes.append("")
            body = "\n".join(notes)  # 16 physical lines
        repo.commit(authors[sid], f"docs by {sid}",
                    {doc_targets[sid]: body})

    events = []
    tick = 0
    for idx, sid in enumerate(("S1", "S2", "S3", "S4"), start=1):
        tick += 1
        events.append(_issue(idx, "opened", f"{sid.lower()}@uni.edu",
                             f"2026-03-05T{8 + tick:02d}:00:00+00:00",
                             labels=["enhancement"]))
    for idx, sid in enumerate(("S2", "S3", "S4", "S1"), start=1):
        tick += 1
        events.append(_issue(idx, "commented", f"{sid.lower()}@uni.edu",
                             f"2026-03-05T{8 + tick:02d}:30:00+00:00",
                             body="Agreed, taking a look."))
    for idx, sid in enumerate(("S1", "S2", "S3", "S4"), start=1):
        tick += 1
        events.append(_issue(idx, "closed", f"{sid.lower()}@uni.edu",
                             f"2026-03-06T{8 + tick:02d}:00:00+00:00"))
    for idx, sid in enumerate(("S1", "S2", "S3", "S4"), start=1):
        events.append(_deep_review(idx, f"{sid.lower()}@uni.edu",
                                   f"2026-03-06T{12 + idx:02d}:00:00+00:00"))
    export = write_forge_export(root / "forge.jsonl", events)
    return repo.path, export


def build_dominant_repo(root: Path) -> tuple[Path, Path]:
    """Scenario B: S1 owns 58% of blamed lines and most issue work."""
    repo = RepoBuilder(root / "repo")
    # S1: ~58% of lines over several files; others ~14% each.
    s1_files = {"core": 200, "engine": 200, "api": 180}
    for name, lines in s1_files.items():
        repo.commit(S1, f"add {name}",
                    {f"src/{name}.py": module_source(name, lines)})
    for idx, author in enumerate((S2, S3, S4)):
        name = f"util{idx}"
        repo.commit(author, f"add {name}",
                    {f"src/{name}.py": module_source(name, 140)})
    # Additional substantive commits by S1 on its own files (toggling
    # the branchy variant so each rewrite really changes content).
    branchy_state = {name: False for name in s1_files}
    for revision in range(5):
        name = list(s1_files)[revision % 3]
        branchy_state[name] = not branchy_state[name]
        repo.commit(S1, f"refine {name} pass {revision}",
                    {f"src/{name}.py": module_source(
                        name, s1_files[name], branchy=branchy_state[name])})

    events = []
    for issue_id in (1, 2, 3):
        events.append(_issue(issue_id, "opened", "s1@uni.edu",
                             f"2026-03-05T0{issue_id}:00:00+00:00"))
        events.append(_issue(issue_id, "closed", "s1@uni.edu",
                             f"2026-03-06T0{issue_id}:00:00+00:00"))
    for issue_id, sid in ((4, "s2"), (5, "s3"), (6, "s4")):
        events.append(_issue(issue_id, "opened", f"{sid}@uni.edu",
                             f"2026-03-05T0{issue_id}:30:00+00:00"))
    events.append(_issue(1, "commented", "s2@uni.edu",
                         "2026-03-05T05:00:00+00:00", body="Checking."))
    events.append(_issue(2, "commented", "s3@uni.edu",
                         "2026-03-05T06:00:00+00:00", body="Looking."))
    events.append(_issue(3, "commented", "s4@uni.edu",
                         "2026-03-05T07:00:00+00:00", body="On it."))
    for pr_id in (1, 2, 3):
        events.append(_deep_review(pr_id, "s1@uni.edu",
                                   f"2026-03-06T1{pr_id}:00:00+00:00"))
    events.append({"type": "review", "pr_id": 4, "reviewer": "s2@uni.edu",
                   "timestamp": "2026-03-06T14:00:00+00:00",
                   "verdict": "approve", "body": "looks good"})
    events.append({"type": "review", "pr_id": 5, "reviewer": "s3@uni.edu",
                   "timestamp": "2026-03-06T15:00:00+00:00",
                   "verdict": "approve", "body": "lgtm"})
    events.append({"type": "review", "pr_id": 6, "reviewer": "s4@uni.edu",
                   "timestamp": "2026-03-06T16:00:00+00:00",
                   "verdict": "approve", "body": "+1"})
    export = write_forge_export(root / "forge.jsonl", events)
    return repo.path, export


def build_spammer_repo(root: Path) -> tuple[Path, Path]:
    """Scenario C: S4 has the most commits, >=90% of them trivial."""
    repo = RepoBuilder(root / "repo")
    for sid, author, name in (("S1", S1, "alpha"), ("S2", S2, "beta"),
                              ("S3", S3, "gamma")):
        repo.commit(author, f"add {name}",
                    {f"src/{name}.py": module_source(name, 100)})
        for revision in range(3):
            repo.commit(author, f"improve {name} {revision}",
                        {f"src/{name}.py": module_source(
                            name, 100, branchy=revision % 2 == 0)})
    # S4's one substantive commit: a 10-line helper.
    helper_lines = ['"""Helper."""', "", "def helper(x):",
                    "    return x + 1", "", "# note 0", "HELPER_A = 1",
                    "HELPER_B = 2", "HELPER_C = 3", ""]
    repo.commit(S4, "add helper", {"src/helper.py": "\n".join(helper_lines)})
    # Eleven trivial commits: alternating whitespace-only and
    # comment-only churn on S4's own file.
    current = list(helper_lines)
    for spam in range(11):
        if spam % 2 == 0:
            indent = " " * ((spam % 3) + 2)
            current = [
                line if "return x + 1" not in line
                else indent + line.strip()
                for line in current]
        else:
            current = [line if not line.startswith("# note")
                       else f"# note {spam}"
                       for line in current]
        repo.commit(S4, f"cleanup {spam}",
                    {"src/helper.py": "\n".join(current)})

    events = []
    for idx, sid in enumerate(("S1", "S2", "S3"), start=1):
        events.append(_issue(idx, "opened", f"{sid.lower()}@uni.edu",
                             f"2026-03-05T0{idx}:00:00+00:00"))
        events.append(_issue(idx, "closed", f"{sid.lower()}@uni.edu",
                             f"2026-03-06T0{idx}:00:00+00:00"))
        events.append(_deep_review(idx, f"{sid.lower()}@uni.edu",
                                   f"2026-03-06T1{idx}:00:00+00:00"))
    export = write_forge_export(root / "forge.jsonl", events)
    return repo.path, export


def write_adapters(root: Path, coverage: tuple[int, int, int, int]
                   = (100, 82, 40, 30),
                   lint: tuple[int, float] = (6, 2.0),
                   tests: tuple[int, int] = (25, 23),
                   usability: float | None = None) -> Path:
    adapters = root / "adapters"
    adapters.mkdir(parents=True, exist_ok=True)
    lf, lh, brf, brh = coverage
    (adapters / "coverage.lcov").write_text(
        "TN:demo\nSF:src/demo.py\n"
        f"LF:{lf}\nLH:{lh}\nBRF:{brf}\nBRH:{brh}\nend_of_record\n",
        encoding="utf-8")
    (adapters / "lint.json").write_text(
        json.dumps({"findings": lint[0], "kloc": lint[1]}), encoding="utf-8")
    (adapters / "test_results.json").write_text(
        json.dumps({"total": tests[0], "passed": tests[1]}),
        encoding="utf-8")
    if usability is not None:
        (adapters / "usability.json").write_text(
            json.dumps({"score": usability}), encoding="utf-8")
    return adapters


@pytest.fixture(scope="session")
def balanced_case(tmp_path_factory) -> dict:
    root = tmp_path_factory.mktemp("balanced")
    repo, forge = build_balanced_repo(root)
    return {"root": root, "repo": repo, "forge": forge,
            "roster": roster_file(root), "adapters": write_adapters(root)}


@pytest.fixture(scope="session")
def dominant_case(tmp_path_factory) -> dict:
    root = tmp_path_factory.mktemp("dominant")
    repo, forge = build_dominant_repo(root)
    return {"root": root, "repo": repo, "forge": forge,
            "roster": roster_file(root), "adapters": write_adapters(root)}


@pytest.fixture(scope="session")
def spammer_case(tmp_path_factory) -> dict:
    root = tmp_path_factory.mktemp("spammer")
    repo, forge = build_spammer_repo(root)
    return {"root": root, "repo": repo, "forge": forge,
            "roster": roster_file(root), "adapters": write_adapters(root)}
