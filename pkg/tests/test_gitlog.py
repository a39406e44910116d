"""Commit-log parser against real git output from scratch repositories."""

from __future__ import annotations

import pytest

from repograde.errors import ParseError
from repograde.ingest.gitlog import GIT_LOG_ARGS, parse_commit_log
from conftest import S1, S2, RepoBuilder

from oracles import difflib_line_counts


def log_bytes(repo: RepoBuilder) -> bytes:
    import subprocess

    proc = subprocess.run(["git", "-C", str(repo.path), *GIT_LOG_ARGS],
                          capture_output=True, check=True)
    return proc.stdout


def test_empty_stream():
    assert parse_commit_log(b"") == []
    assert parse_commit_log(b"   \n") == []


def test_two_commit_fixture_matches_git(tmp_path):
    repo = RepoBuilder(tmp_path / "repo")
    repo.commit(S1, "first", {"a.txt": "one\ntwo\nthree\n"},
                when="2026-01-05T10:00:00+00:00")
    repo.commit(S2, "second", {"a.txt": "one\ntwo!\nthree\nfour\n"},
                when="2026-01-06T11:30:00+01:00")
    records = parse_commit_log(log_bytes(repo))

    assert len(records) == 2
    assert records[0].timestamp < records[1].timestamp  # ascending
    # Hashes and timestamps read back from the same repository.
    plain = repo.git_out("log", "--reverse", "--pretty=format:%H %aI")
    expected = [line.split() for line in plain.splitlines()]
    assert [r.hash for r in records] == [e[0] for e in expected]
    assert [r.timestamp.isoformat() for r in records] == [e[1]
                                                          for e in expected]
    assert records[0].author_identity == "s1@uni.edu"
    assert records[0].message == "first"
    assert records[0].deltas[0].lines_added == 3
    assert records[0].deltas[0].status == "added"
    # second commit: one changed line (1 add + 1 del) plus one new line
    assert records[1].deltas[0].lines_added == 2
    assert records[1].deltas[0].lines_deleted == 1
    assert records[1].deltas[0].status == "modified"


def test_malformed_39_hex_hash():
    bad = ("f" * 39 + "\x1fName\x1fmail@x\x1f2026-01-01T00:00:00+00:00"
           "\x1fmsg\x1e\n").encode()
    with pytest.raises(ParseError, match="hash"):
        parse_commit_log(bad)


def test_truncated_record_cites_offset():
    stream = ("a" * 40 + "\x1fName\x1fmail@x\x1f2026-01-01T00:00:00+00:00"
              "\x1fok\x1e\n1\t1\tf.py\n\n" + "b" * 40 + "\x1fTrunc")
    with pytest.raises(ParseError, match="offset"):
        parse_commit_log(stream.encode())


def test_binary_and_rename_deltas(tmp_path):
    repo = RepoBuilder(tmp_path / "repo")
    repo.commit(S1, "bin+txt", {"img.bin": b"\x00\x01\x02",
                                "f.py": "x = 1\n"})
    repo.commit(S1, "rename", renames=[("f.py", "g.py")])
    records = parse_commit_log(log_bytes(repo))

    first = {d.path: d for d in records[0].deltas}
    assert first["img.bin"].binary is True
    assert first["img.bin"].lines_added == 0
    assert first["img.bin"].lines_deleted == 0
    assert first["f.py"].binary is False

    rename = records[1].deltas[0]
    assert rename.status == "renamed"
    assert rename.old_path == "f.py"
    assert rename.path == "g.py"
    assert rename.lines_added == 0 and rename.lines_deleted == 0


def test_brace_rename(tmp_path):
    repo = RepoBuilder(tmp_path / "repo")
    repo.commit(S1, "nested", {"pkg/sub/mod.py": "x = 1\ny = 2\n"})
    repo.commit(S1, "rename", renames=[("pkg/sub/mod.py",
                                        "pkg/sub/mod2.py")])
    records = parse_commit_log(log_bytes(repo))
    rename = records[1].deltas[0]
    assert rename.status == "renamed"
    assert rename.old_path == "pkg/sub/mod.py"
    assert rename.path == "pkg/sub/mod2.py"


def test_counts_match_difflib_oracle(tmp_path):
    before = "alpha\nbeta\ngamma\ndelta\n"
    after = "alpha\nbeta changed\ngamma\ndelta\nepsilon\nzeta\n"
    repo = RepoBuilder(tmp_path / "repo")
    repo.commit(S1, "v1", {"a.py": before})
    repo.commit(S1, "v2", {"a.py": after})
    records = parse_commit_log(log_bytes(repo))
    added, deleted = difflib_line_counts(before, after)
    assert records[1].deltas[0].lines_added == added
    assert records[1].deltas[0].lines_deleted == deleted


def test_empty_commit_has_no_deltas(tmp_path):
    repo = RepoBuilder(tmp_path / "repo")
    repo.commit(S1, "real", {"a.py": "x = 1\n"})
    repo.commit(S1, "empty")
    repo.commit(S1, "after", {"a.py": "x = 2\n"})
    records = parse_commit_log(log_bytes(repo))
    assert [len(r.deltas) for r in records] == [1, 0, 1]
