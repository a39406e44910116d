"""Parser for ``git blame --line-porcelain`` output.

With ``--line-porcelain`` every source line is preceded by a header
group: a ``<hash> <orig> <final> [<group>]`` line, one ``key value``
line per attribute (``author``, ``author-mail <addr>``, ...), then the
line content prefixed with a tab.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from repograde.errors import ParseError

_HEAD_RE = re.compile(r"^([0-9a-f]{40}) (\d+) (\d+)( \d+)?$")


@dataclass(frozen=True)
class BlameRecord:
    """Attribution of one line of a file's final revision."""

    path: str
    line_number: int
    author_identity: str
    commit_hash: str

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "line_number": self.line_number,
            "author_identity": self.author_identity,
            "commit_hash": self.commit_hash,
        }


def parse_blame(raw: bytes, path: str) -> list[BlameRecord]:
    """Parse line-porcelain blame output for one file.

    Returns exactly one record per source line, in file order.  An
    empty file produces an empty list.

    Raises:
        ParseError: when a line group lacks its ``author-mail`` field
            or the stream does not follow the porcelain grammar.
    """
    text = raw.decode("utf-8", errors="replace")
    if not text.strip():
        return []

    records: list[BlameRecord] = []
    lines = text.split("\n")
    i = 0
    while i < len(lines):
        line = lines[i]
        if not line:
            i += 1
            continue
        head = _HEAD_RE.match(line)
        if not head:
            raise ParseError(
                f"expected blame group header, got {line!r}",
                source=path, line=i + 1)
        commit_hash = head.group(1)
        final_line = int(head.group(3))
        author_mail: str | None = None
        i += 1
        while i < len(lines) and not lines[i].startswith("\t"):
            key, _, value = lines[i].partition(" ")
            if key == "author-mail":
                author_mail = value.strip().strip("<>")
            i += 1
        if i >= len(lines):
            raise ParseError("blame group missing content line",
                             source=path, line=len(lines))
        if author_mail is None:
            raise ParseError(
                f"blame group for line {final_line} missing author-mail",
                source=path, line=i + 1)
        records.append(BlameRecord(
            path=path,
            line_number=final_line,
            author_identity=author_mail,
            commit_hash=commit_hash,
        ))
        i += 1  # skip the tab-prefixed content line
    return records
