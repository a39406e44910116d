"""Parsers turning version-control and forge artifacts into the data model."""

from repograde.ingest.blame import BlameRecord, parse_blame
from repograde.ingest.forge import IssueEvent, ReviewEvent, load_forge_export
from repograde.ingest.gitlog import (
    GIT_LOG_ARGS,
    CommitRecord,
    FileDelta,
    parse_commit_log,
)
from repograde.ingest.snapshot import (
    ProjectSnapshot,
    build_project_snapshot,
    dump_snapshot,
    load_snapshot,
    snapshot_from_dict,
    snapshot_to_dict,
)

__all__ = [
    "BlameRecord",
    "CommitRecord",
    "FileDelta",
    "GIT_LOG_ARGS",
    "IssueEvent",
    "ProjectSnapshot",
    "ReviewEvent",
    "build_project_snapshot",
    "dump_snapshot",
    "load_forge_export",
    "load_snapshot",
    "parse_blame",
    "parse_commit_log",
    "snapshot_from_dict",
    "snapshot_to_dict",
]
