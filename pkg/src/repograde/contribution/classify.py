"""Trivial-change filtering for commit history analysis.

Commit spam (whitespace tweaks, comment-only edits, pure renames) gets
weight zero so it cannot inflate a contribution score; substantive
commits weigh 1, plus a configurable bonus when they touch test or
documentation paths.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fnmatch import fnmatch

from repograde.ingest.gitlog import CommitRecord
from repograde.quality.tokens import get_profile, profile_for_path, tokenize

_WS_RUN_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class CommitClass:
    """Classification of one commit for contribution weighting."""

    hash: str
    classification: str  # substantive | trivial
    reason: str  # whitespace_only | comment_only | rename_only
    #          | format_only | substantive
    weight: float

    def to_dict(self) -> dict:
        return {
            "hash": self.hash,
            "classification": self.classification,
            "reason": self.reason,
            "weight": self.weight,
        }


def _collapse_whitespace(text: str) -> str:
    return _WS_RUN_RE.sub("", text)


def _strip_comments(text: str, path: str) -> str:
    profile = profile_for_path(path) or get_profile("text")
    return "".join(t.text for t in tokenize(text, profile).tokens
                   if t.kind != "comment")


def _matches_any(path: str, globs: tuple[str, ...]) -> bool:
    return any(fnmatch(path, pattern) for pattern in globs)


def classify_commit(commit: CommitRecord,
                    diff_pair: dict[str, tuple[str, str]],
                    test_globs: tuple[str, ...] = (),
                    doc_globs: tuple[str, ...] = (),
                    test_doc_bonus: float = 0.5) -> CommitClass:
    """Classify a commit from its per-file (before, after) texts.

    Classification, in order: ``rename_only`` when every delta is a
    zero-line rename; ``whitespace_only`` when each file is unchanged
    after collapsing whitespace runs; ``comment_only`` when unchanged
    after stripping comments; ``format_only`` when unchanged only
    after doing both.  Everything else is substantive with weight
    ``1 + test_doc_bonus`` if any touched path matches a test or doc
    glob, else 1.  A commit with no deltas at all is trivial
    (reason ``whitespace_only``: it changed no content).

    Idempotent and independent of diff ordering: all comparisons are
    per-path and the verdict is a conjunction over paths.
    """
    deltas = commit.deltas
    if not deltas:
        return CommitClass(hash=commit.hash, classification="trivial",
                           reason="whitespace_only", weight=0.0)

    if all(d.status == "renamed"
           and d.lines_added == 0 and d.lines_deleted == 0 for d in deltas):
        return CommitClass(hash=commit.hash, classification="trivial",
                           reason="rename_only", weight=0.0)

    pairs = [(d.path, *diff_pair[d.path]) for d in sorted(
        deltas, key=lambda d: d.path)
        if not d.binary and d.path in diff_pair]
    # A trivial verdict requires any evidence at all, and evidence for
    # every non-binary path; unverifiable commits stay substantive.
    complete = pairs and all(d.binary or d.path in diff_pair for d in deltas)

    if complete:
        if all(_collapse_whitespace(before) == _collapse_whitespace(after)
               for _, before, after in pairs):
            return CommitClass(hash=commit.hash, classification="trivial",
                               reason="whitespace_only", weight=0.0)
        if all(_strip_comments(before, path) == _strip_comments(after, path)
               for path, before, after in pairs):
            return CommitClass(hash=commit.hash, classification="trivial",
                               reason="comment_only", weight=0.0)
        if all(_collapse_whitespace(_strip_comments(before, path))
               == _collapse_whitespace(_strip_comments(after, path))
               for path, before, after in pairs):
            return CommitClass(hash=commit.hash, classification="trivial",
                               reason="format_only", weight=0.0)

    weight = 1.0
    touched = tuple(d.path for d in deltas)
    if any(_matches_any(p, test_globs) or _matches_any(p, doc_globs)
           for p in touched):
        weight += test_doc_bonus
    return CommitClass(hash=commit.hash, classification="substantive",
                       reason="substantive", weight=weight)
