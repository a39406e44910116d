"""Snapshot assembly, serialization round-trip, determinism."""

from __future__ import annotations

import json

import pytest

from repograde.ingest.snapshot import (build_project_snapshot, dump_snapshot,
                                       load_snapshot, snapshot_from_dict,
                                       snapshot_to_dict)
from conftest import S1, TEAM_ROSTER, Author, RepoBuilder


def test_single_commit_single_author_snapshot(tmp_path):
    repo = RepoBuilder(tmp_path / "repo")
    repo.commit(S1, "init", {"src/app.py": "x = 1\ny = 2\nz = 3\n"})
    snapshot = build_project_snapshot(repo.path, None, TEAM_ROSTER)

    assert snapshot.team_id == "team-1"
    assert len(snapshot.commits) == 1
    assert snapshot.commits[0].resolved_author == "S1"
    assert len(snapshot.blame) == 3
    assert all(b.author_identity == "s1@uni.edu" for b in snapshot.blame)
    assert "src/app.py" in snapshot.files


def test_unknown_author_warns_and_keeps_commit(tmp_path):
    repo = RepoBuilder(tmp_path / "repo")
    ghost = Author("Ghost", "ghost@nowhere")
    repo.commit(ghost, "drive-by", {"src/app.py": "x = 1\n"})
    snapshot = build_project_snapshot(repo.path, None, TEAM_ROSTER)
    assert len(snapshot.commits) == 1
    assert snapshot.commits[0].resolved_author is None
    assert any("ghost@nowhere" in w for w in snapshot.warnings)


def test_missing_forge_export_warns(tmp_path):
    repo = RepoBuilder(tmp_path / "repo")
    repo.commit(S1, "init", {"a.py": "x = 1\n"})
    snapshot = build_project_snapshot(repo.path,
                                      tmp_path / "absent.jsonl",
                                      TEAM_ROSTER)
    assert snapshot.issues == ()
    assert snapshot.reviews == ()
    assert any("forge export missing" in w for w in snapshot.warnings)


def test_unreadable_repo_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        build_project_snapshot(tmp_path / "nope", None, TEAM_ROSTER)


def test_binary_and_large_files_excluded_from_blame(tmp_path):
    repo = RepoBuilder(tmp_path / "repo")
    repo.commit(S1, "mixed", {
        "img.bin": b"\x00\x01\x02\x03",
        "big.py": ("x = 1\n" * 300_000),  # > 1 MiB
        "ok.py": "x = 1\n",
    })
    snapshot = build_project_snapshot(repo.path, None, TEAM_ROSTER)
    assert set(snapshot.files) == {"ok.py"}
    assert {b.path for b in snapshot.blame} == {"ok.py"}


def test_round_trip_identity(tmp_path, balanced_case):
    snapshot = build_project_snapshot(balanced_case["repo"],
                                      balanced_case["forge"], TEAM_ROSTER)
    data = snapshot_to_dict(snapshot)
    again = snapshot_to_dict(snapshot_from_dict(data))
    assert json.dumps(data, sort_keys=True) == json.dumps(again,
                                                          sort_keys=True)

    path = tmp_path / "snapshot.json"
    dump_snapshot(snapshot, path)
    loaded = load_snapshot(path)
    assert snapshot_to_dict(loaded) == data


def test_snapshot_determinism(balanced_case, tmp_path):
    first = build_project_snapshot(balanced_case["repo"],
                                   balanced_case["forge"], TEAM_ROSTER)
    second = build_project_snapshot(balanced_case["repo"],
                                    balanced_case["forge"], TEAM_ROSTER)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    dump_snapshot(first, a)
    dump_snapshot(second, b)
    assert a.read_bytes() == b.read_bytes()


def test_blame_line_numbers_exact_range(balanced_case):
    snapshot = build_project_snapshot(balanced_case["repo"],
                                      balanced_case["forge"], TEAM_ROSTER)
    per_path: dict[str, list[int]] = {}
    for record in snapshot.blame:
        per_path.setdefault(record.path, []).append(record.line_number)
    assert per_path
    for path, numbers in per_path.items():
        assert numbers == list(range(1, len(numbers) + 1)), path


def test_delta_counts_match_difflib_oracle_per_commit(balanced_case):
    """Numstat counts agree with an independent diff on every commit."""
    from oracles import difflib_line_counts

    snapshot = build_project_snapshot(balanced_case["repo"],
                                      balanced_case["forge"], TEAM_ROSTER)
    checked = 0
    for commit in snapshot.commits:
        pairs = snapshot.diffs.get(commit.hash, {})
        for delta in commit.deltas:
            if delta.binary or delta.path not in pairs:
                continue
            before, after = pairs[delta.path]
            added, deleted = difflib_line_counts(before, after)
            assert delta.lines_added == added, (commit.hash, delta.path)
            assert delta.lines_deleted == deleted, (commit.hash, delta.path)
            checked += 1
    assert checked >= len(snapshot.commits)  # every commit contributed


def test_diffs_captured_for_commits(tmp_path):
    repo = RepoBuilder(tmp_path / "repo")
    repo.commit(S1, "v1", {"a.py": "x = 1\n"})
    repo.commit(S1, "v2", {"a.py": "x = 2\n"})
    snapshot = build_project_snapshot(repo.path, None, TEAM_ROSTER)
    second = snapshot.commits[1]
    before, after = snapshot.diffs[second.hash]["a.py"]
    assert before == "x = 1\n"
    assert after == "x = 2\n"
    first = snapshot.commits[0]
    assert snapshot.diffs[first.hash]["a.py"] == ("", "x = 1\n")
