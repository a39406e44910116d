"""Grade combination, anomaly flagging, overrides, audit, and export."""

from repograde.grading.audit import (
    AuditEntry,
    append_audit_entries,
    read_audit_log,
)
from repograde.grading.book import GradeBook
from repograde.grading.engine import (
    apply_floor_cap,
    combine,
    detect_anomalies,
    generate_feedback,
)
from repograde.grading.export import render_lms_csv, write_lms_csv
from repograde.grading.records import (
    AnomalyFlag,
    FeedbackSummary,
    GradeRecord,
)

__all__ = [
    "AnomalyFlag",
    "AuditEntry",
    "FeedbackSummary",
    "GradeBook",
    "GradeRecord",
    "append_audit_entries",
    "apply_floor_cap",
    "combine",
    "detect_anomalies",
    "generate_feedback",
    "read_audit_log",
    "render_lms_csv",
    "write_lms_csv",
]
