"""Forge-export loader (JSON Lines issue/review events)."""

from __future__ import annotations

import json

import pytest

from repograde.errors import ParseError
from repograde.ingest.forge import load_forge_export


def write_lines(tmp_path, lines):
    path = tmp_path / "forge.jsonl"
    path.write_text("\n".join(json.dumps(obj) for obj in lines) + "\n"
                    if lines else "", encoding="utf-8")
    return path


def test_empty_file(tmp_path):
    issues, reviews = load_forge_export(write_lines(tmp_path, []))
    assert issues == [] and reviews == []


def test_single_issue_line(tmp_path):
    path = write_lines(tmp_path, [{
        "type": "issue", "issue_id": 1, "kind": "opened", "actor": "a@x",
        "timestamp": "2026-01-01T10:00:00+00:00", "labels": ["bug"],
        "body": "it breaks"}])
    issues, reviews = load_forge_export(path)
    assert len(issues) == 1 and reviews == []
    assert issues[0].issue_id == 1
    assert issues[0].labels == ("bug",)


def test_mixed_events_partitioned_and_sorted(tmp_path):
    path = write_lines(tmp_path, [
        {"type": "review", "pr_id": 2, "reviewer": "b@x",
         "timestamp": "2026-01-03T10:00:00+00:00", "body": "deep note",
         "verdict": "comment"},
        {"type": "issue", "issue_id": 3, "kind": "closed", "actor": "a@x",
         "timestamp": "2026-01-02T10:00:00+00:00", "labels": [], "body": ""},
        {"type": "issue", "issue_id": 1, "kind": "opened", "actor": "a@x",
         "timestamp": "2026-01-01T09:00:00+00:00", "labels": [], "body": ""},
        {"type": "review", "pr_id": 1, "reviewer": "c@x",
         "timestamp": "2026-01-01T12:00:00+00:00", "body": "",
         "verdict": "approve"},
        {"type": "issue", "issue_id": 2, "kind": "commented", "actor": "b@x",
         "timestamp": "2026-01-01T11:00:00+00:00", "labels": [],
         "body": "hm"},
    ])
    issues, reviews = load_forge_export(path)
    assert len(issues) == 3 and len(reviews) == 2
    assert [e.timestamp for e in issues] == sorted(e.timestamp
                                                   for e in issues)
    assert [e.timestamp for e in reviews] == sorted(e.timestamp
                                                    for e in reviews)


def test_unknown_type_names_line(tmp_path):
    path = write_lines(tmp_path, [
        {"type": "issue", "issue_id": 1, "kind": "opened", "actor": "a@x",
         "timestamp": "2026-01-01T09:00:00+00:00", "labels": [], "body": ""},
        {"type": "wiki_edit", "actor": "a@x",
         "timestamp": "2026-01-01T10:00:00+00:00"},
    ])
    with pytest.raises(ParseError, match="line 2"):
        load_forge_export(path)


def test_malformed_timestamp(tmp_path):
    path = write_lines(tmp_path, [
        {"type": "issue", "issue_id": 1, "kind": "opened", "actor": "a@x",
         "timestamp": "yesterday", "labels": [], "body": ""}])
    with pytest.raises(ParseError, match="timestamp"):
        load_forge_export(path)


def test_non_approve_review_requires_body(tmp_path):
    path = write_lines(tmp_path, [
        {"type": "review", "pr_id": 1, "reviewer": "a@x",
         "timestamp": "2026-01-01T10:00:00+00:00", "body": "",
         "verdict": "request_changes"}])
    with pytest.raises(ParseError, match="approve"):
        load_forge_export(path)
