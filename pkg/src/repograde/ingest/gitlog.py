"""Parser for the pinned ``git log`` history invocation.

The log command emits one record per commit: a header of five fields
joined by the unit separator (0x1F) and terminated by the record
separator (0x1E), followed by the commit's numstat block::

    <hash>\\x1f<author name>\\x1f<author email>\\x1f<iso date>\\x1f<subject>\\x1e
    <added>\\t<deleted>\\t<path>
    ...

Binary files report ``-`` counts; renames appear as ``old => new`` with
an optional shared-prefix brace form (``dir/{a.py => b.py}``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import datetime

from repograde.errors import ParseError
from repograde.model import StudentId

#: Arguments of the history extraction command, bit-exact.
GIT_LOG_ARGS = (
    "log", "--all", "--no-merges", "-M", "--numstat", "--date=iso-strict",
    "--pretty=format:%H%x1f%an%x1f%ae%x1f%aI%x1f%s%x1e",
)

_RECORD_SEP = b"\x1e"
_UNIT_SEP = "\x1f"
_HASH_RE = re.compile(r"^[0-9a-f]{40}$")
_NUMSTAT_RE = re.compile(r"^(\d+|-)\t(\d+|-)\t(.+)$")
_BRACE_RENAME_RE = re.compile(r"^(.*)\{(.*) => (.*)\}(.*)$")


@dataclass(frozen=True)
class FileDelta:
    """Per-file line change of one commit."""

    path: str
    lines_added: int
    lines_deleted: int
    binary: bool = False
    status: str = "modified"  # added | modified | deleted | renamed
    old_path: str | None = None

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "lines_added": self.lines_added,
            "lines_deleted": self.lines_deleted,
            "binary": self.binary,
            "status": self.status,
            "old_path": self.old_path,
        }


@dataclass(frozen=True)
class CommitRecord:
    """One parsed commit with its per-file deltas."""

    hash: str
    author_name: str
    author_identity: str
    timestamp: datetime
    message: str
    deltas: tuple[FileDelta, ...] = ()
    resolved_author: StudentId | None = None

    def to_dict(self) -> dict:
        return {
            "hash": self.hash,
            "author_name": self.author_name,
            "author_identity": self.author_identity,
            "timestamp": self.timestamp.isoformat(),
            "message": self.message,
            "deltas": [d.to_dict() for d in self.deltas],
            "resolved_author": self.resolved_author,
        }


def _unquote_path(path: str) -> str:
    """Undo git's C-style quoting of unusual path names."""
    if len(path) >= 2 and path.startswith('"') and path.endswith('"'):
        body = path[1:-1]
        out = []
        i = 0
        while i < len(body):
            ch = body[i]
            if ch == "\\" and i + 1 < len(body):
                nxt = body[i + 1]
                if nxt in "\\\"":
                    out.append(nxt)
                    i += 2
                    continue
                if nxt == "t":
                    out.append("\t")
                    i += 2
                    continue
                if nxt == "n":
                    out.append("\n")
                    i += 2
                    continue
                if nxt.isdigit():  # octal escape of a raw byte
                    octal = body[i + 1:i + 4]
                    out.append(chr(int(octal, 8)))
                    i += 1 + len(octal)
                    continue
            out.append(ch)
            i += 1
        return "".join(out)
    return path


def _split_rename(raw_path: str) -> tuple[str, str] | None:
    """Return (old, new) when the numstat path encodes a rename."""
    m = _BRACE_RENAME_RE.match(raw_path)
    if m:
        prefix, old_mid, new_mid, suffix = m.groups()
        old = f"{prefix}{old_mid}{suffix}".replace("//", "/")
        new = f"{prefix}{new_mid}{suffix}".replace("//", "/")
        return old, new
    if " => " in raw_path:
        old, new = raw_path.split(" => ", 1)
        return old, new
    return None


def _parse_numstat_line(line: str, offset: int) -> FileDelta:
    m = _NUMSTAT_RE.match(line)
    if not m:
        raise ParseError(f"malformed numstat line {line!r}", offset=offset)
    added_s, deleted_s, raw_path = m.groups()
    binary = added_s == "-"
    if binary != (deleted_s == "-"):
        raise ParseError(f"inconsistent binary counts in {line!r}",
                         offset=offset)
    added = 0 if binary else int(added_s)
    deleted = 0 if binary else int(deleted_s)
    raw_path = _unquote_path(raw_path)
    rename = _split_rename(raw_path)
    if rename is not None:
        old, new = rename
        return FileDelta(path=new, lines_added=added, lines_deleted=deleted,
                         binary=binary, status="renamed", old_path=old)
    return FileDelta(path=raw_path, lines_added=added, lines_deleted=deleted,
                     binary=binary, status="modified")


def parse_commit_log(raw: bytes) -> list[CommitRecord]:
    """Parse the byte stream of the pinned log command.

    Returns one record per commit in chronological ascending order
    (ties broken by hash).  A file's first chronological appearance is
    classified ``added``; renames are detected from the numstat path
    syntax; everything else is ``modified``.

    Raises:
        ParseError: on a truncated record, a non-hex hash, or a
            malformed numstat line, citing the byte offset.
    """
    if not raw.strip():
        return []

    # Each 0x1E closes a header; numstat lines for that commit follow,
    # up to the next header (or end of stream).
    headers: list[tuple[str, int]] = []   # (header text, byte offset)
    blocks: list[str] = []                # numstat text per header
    offsets: list[int] = []               # offset of each numstat block
    pos = 0
    pending_header_start = 0
    while True:
        sep = raw.find(_RECORD_SEP, pos)
        if sep < 0:
            break
        header = raw[pending_header_start:sep].decode("utf-8",
                                                      errors="replace")
        headers.append((header.lstrip("\n"), pending_header_start))
        next_sep = raw.find(_RECORD_SEP, sep + 1)
        block_end = len(raw) if next_sep < 0 else next_sep
        block = raw[sep + 1:block_end].decode("utf-8", errors="replace")
        # The block holds this commit's numstat lines plus the next
        # commit's header (its final line, without a 0x1E yet).
        if next_sep < 0:
            blocks.append(block)
            offsets.append(sep + 1)
            pending_header_start = block_end
            break
        last_nl = block.rfind("\n")
        if last_nl < 0:
            raise ParseError("record separator not followed by newline",
                             offset=sep)
        blocks.append(block[:last_nl])
        offsets.append(sep + 1)
        pending_header_start = sep + 1 + last_nl + 1
        pos = next_sep

    if raw[pending_header_start:].strip() and len(blocks) == len(headers):
        # Trailing bytes after the last parsed record that never saw a
        # record separator: the stream was cut mid-record.
        raise ParseError("truncated record at end of stream",
                         offset=pending_header_start)

    records: list[CommitRecord] = []
    for (header, h_offset), block, b_offset in zip(headers, blocks, offsets):
        parts = header.split(_UNIT_SEP)
        if len(parts) != 5:
            raise ParseError(
                f"expected 5 header fields, got {len(parts)}",
                offset=h_offset)
        commit_hash, author_name, author_email, iso_date, subject = parts
        if not _HASH_RE.match(commit_hash):
            raise ParseError(f"malformed commit hash {commit_hash!r}",
                             offset=h_offset)
        try:
            timestamp = datetime.fromisoformat(iso_date)
        except ValueError as exc:
            raise ParseError(f"malformed timestamp {iso_date!r}",
                             offset=h_offset) from exc
        deltas = []
        for line in block.split("\n"):
            if not line:
                continue
            deltas.append(_parse_numstat_line(line, b_offset))
        records.append(CommitRecord(
            hash=commit_hash,
            author_name=author_name,
            author_identity=author_email,
            timestamp=timestamp,
            message=subject,
            deltas=tuple(deltas),
        ))

    records.sort(key=lambda r: (r.timestamp, r.hash))
    return _classify_first_touches(records)


def _classify_first_touches(records: list[CommitRecord]) -> list[CommitRecord]:
    """Mark the first chronological delta of each path as ``added``.

    Deletions are not recoverable from numstat counts alone and stay
    ``modified``; absence from the final tree reflects them instead.
    """
    seen: set[str] = set()
    out: list[CommitRecord] = []
    for record in records:
        deltas = []
        for delta in record.deltas:
            if delta.status == "renamed":
                seen.add(delta.path)
                if delta.old_path:
                    seen.add(delta.old_path)
                deltas.append(delta)
                continue
            if delta.path not in seen:
                seen.add(delta.path)
                deltas.append(FileDelta(
                    path=delta.path, lines_added=delta.lines_added,
                    lines_deleted=delta.lines_deleted, binary=delta.binary,
                    status="added"))
            else:
                deltas.append(delta)
        out.append(CommitRecord(
            hash=record.hash, author_name=record.author_name,
            author_identity=record.author_identity,
            timestamp=record.timestamp, message=record.message,
            deltas=tuple(deltas), resolved_author=record.resolved_author))
    return out


def commit_from_dict(data: dict) -> CommitRecord:
    """Inverse of :meth:`CommitRecord.to_dict`."""
    return CommitRecord(
        hash=data["hash"],
        author_name=data["author_name"],
        author_identity=data["author_identity"],
        timestamp=datetime.fromisoformat(data["timestamp"]),
        message=data["message"],
        deltas=tuple(FileDelta(**d) for d in data["deltas"]),
        resolved_author=data["resolved_author"],
    )
