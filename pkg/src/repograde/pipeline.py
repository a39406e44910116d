"""Stage orchestration: snapshot -> quality + contribution -> grades.

Stages communicate through files with stable key order, so every
stage is independently runnable and two runs over the same inputs
produce byte-identical artifacts.  The only wall-clock output lives in
the run manifest; audit timestamps in the batch stage derive from the
newest commit instant instead.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path

from repograde import __version__
from repograde.contribution.aggregate import (ContributionVector,
                                              ImbalanceAlert,
                                              NormalizedContribution,
                                              TeamContribution,
                                              aggregate_contribution,
                                              detect_imbalance,
                                              normalize_team,
                                              scale_to_team_max)
from repograde.contribution.classify import CommitClass, classify_commit
from repograde.contribution.ownership import compute_ownership
from repograde.contribution.participation import score_issue_participation
from repograde.contribution.reviews import load_lexicons, score_reviews
from repograde.contribution.temporal import cluster_commit_times
from repograde.grading.audit import append_audit_entries
from repograde.grading.book import GradeBook
from repograde.grading.engine import (apply_floor_cap, combine,
                                      detect_anomalies, generate_feedback)
from repograde.grading.records import GradeRecord
from repograde.ingest.snapshot import ProjectSnapshot
from repograde.model import StudentId, TeamRoster, WeightConfig
from repograde.quality.adapters import (CoverageSummary, TestRunSummary,
                                        load_coverage, load_lint_density,
                                        load_test_results, load_usability)
from repograde.quality.duplication import detect_duplication
from repograde.quality.metrics import function_complexities, halstead
from repograde.quality.scoring import (QualityReport, Scored, compute_pqs,
                                       report_from_dict, score_code_quality,
                                       score_documentation,
                                       score_functionality, score_testing)
from repograde.quality.tokens import (comment_density, profile_for_path,
                                      tokenize)

PIPELINE_ACTOR = "pipeline"
_EPOCH_ISO = "1970-01-01T00:00:00+00:00"


def write_json_atomic(data: dict, path: str | Path) -> None:
    """Write JSON with two-space indent via a temp file + rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def load_json(path: str | Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def config_hash(config: WeightConfig) -> str:
    canonical = json.dumps(config.to_dict(), sort_keys=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def write_manifest(out_dir: Path, run_id: str, config: WeightConfig,
                   inputs: dict[str, str], started: datetime) -> None:
    manifest = {
        "run_id": run_id,
        "config_hash": config_hash(config),
        "inputs": dict(sorted(inputs.items())),
        "tool_version": __version__,
        "started": started.isoformat(),
        "finished": datetime.now(timezone.utc).isoformat(),
    }
    write_json_atomic(manifest, out_dir / "manifest.json")


def snapshot_clock(snapshot: ProjectSnapshot) -> str:
    """Deterministic audit timestamp: the newest commit instant."""
    if not snapshot.commits:
        return _EPOCH_ISO
    return max(c.timestamp for c in snapshot.commits).isoformat()


# --------------------------------------------------------------------------
# Quality stage
# --------------------------------------------------------------------------

def _find_readme(files: dict[str, str]) -> str:
    for path in sorted(files):
        name = path.lower()
        if "/" not in path and name.startswith("readme"):
            return files[path]
    return ""


def _doc_pages(files: dict[str, str]) -> list[str]:
    pages = []
    for path in sorted(files):
        name = path.lower()
        if "/" not in path and name.startswith("readme"):
            continue
        if name.endswith((".md", ".rst")) or name.startswith(("docs/",
                                                              "doc/")):
            pages.append(files[path])
    return pages


def assess_quality(snapshot: ProjectSnapshot, config: WeightConfig,
                   adapters_dir: str | Path | None) -> QualityReport:
    """Run the five quality submodules over a snapshot plus adapters.

    Adapter files (all optional) in ``adapters_dir``: ``coverage.lcov``
    or ``coverage.json``, ``lint.json``, ``test_results.json``,
    ``usability.json``.
    """
    source_files = {path: text for path, text in snapshot.files.items()
                    if profile_for_path(path) is not None}

    complexities: list[int] = []
    halstead_metrics = []
    for path in sorted(source_files):
        profile = profile_for_path(path)
        complexities.extend(function_complexities(source_files[path],
                                                  profile))
        stream = tokenize(source_files[path], profile)
        if stream.without_noise():
            halstead_metrics.append(halstead(stream))

    duplication = detect_duplication(source_files)

    adapters = Path(adapters_dir) if adapters_dir else None

    def adapter(name: str) -> Path | None:
        if adapters is None:
            return None
        candidate = adapters / name
        return candidate if candidate.is_file() else None

    coverage_path = adapter("coverage.lcov") or adapter("coverage.json")
    coverage = (load_coverage(coverage_path) if coverage_path
                else CoverageSummary())
    lint_path = adapter("lint.json")
    lint_density = load_lint_density(lint_path) if lint_path else 0.0
    tests_path = adapter("test_results.json")
    test_run = (load_test_results(tests_path) if tests_path
                else TestRunSummary())
    usability_path = adapter("usability.json")
    usability = (Scored(value=load_usability(usability_path),
                        evidence=(f"supplied by {usability_path.name}",))
                 if usability_path else None)

    return compute_pqs(
        code_quality=score_code_quality(complexities, halstead_metrics,
                                        duplication, lint_density),
        testing=score_testing(coverage),
        documentation=score_documentation(
            _find_readme(snapshot.files), comment_density(snapshot.files),
            _doc_pages(snapshot.files)),
        functionality=score_functionality(test_run),
        usability=usability,
        weights=config.pqam_weights,
    )


# --------------------------------------------------------------------------
# Contribution stage
# --------------------------------------------------------------------------

def analyze_contribution(snapshot: ProjectSnapshot, roster: TeamRoster,
                         config: WeightConfig,
                         lexicon_path: str | Path | None = None
                         ) -> TeamContribution:
    """Run the four contribution dimensions and team normalization."""
    members = roster.members
    classes: dict[str, CommitClass] = {}
    for commit in snapshot.commits:
        classes[commit.hash] = classify_commit(
            commit, snapshot.diffs.get(commit.hash, {}),
            test_globs=config.test_globs, doc_globs=config.doc_globs,
            test_doc_bonus=config.test_doc_bonus)

    raw_commits: dict[StudentId, float] = {s: 0.0 for s in members}
    total_commits: dict[StudentId, int] = {s: 0 for s in members}
    substantive: dict[StudentId, int] = {s: 0 for s in members}
    trivial: dict[StudentId, int] = {s: 0 for s in members}
    timestamps: dict[StudentId, list] = {s: [] for s in members}
    for commit in snapshot.commits:
        student = commit.resolved_author
        if student is None or student not in raw_commits:
            continue
        total_commits[student] += 1
        timestamps[student].append(commit.timestamp)
        cls = classes[commit.hash]
        if cls.classification == "substantive":
            substantive[student] += 1
            raw_commits[student] += cls.weight
        else:
            trivial[student] += 1

    ownership = compute_ownership(snapshot.blame, snapshot.commits, roster,
                                  config.partial_credit, classes)
    raw_ownership = {s: ownership.total_owned(s) for s in members}
    ownership_shares = ownership.shares()

    participation = score_issue_participation(snapshot.issues, roster)
    raw_participation = {s: float(participation[s].activity_count)
                         for s in members}

    lexicons = load_lexicons(lexicon_path)
    reviews = score_reviews(snapshot.reviews, lexicons, roster)
    raw_reviews = {s: reviews[s].depth_points_total for s in members}
    review_counts = {s: reviews[s].review_count for s in members}

    scaled = {
        "commits": scale_to_team_max(raw_commits),
        "ownership": scale_to_team_max(raw_ownership),
        "participation": scale_to_team_max(raw_participation),
        "reviews": scale_to_team_max(raw_reviews),
    }
    vectors = {
        s: ContributionVector(
            commit_score=scaled["commits"][s],
            ownership_score=scaled["ownership"][s],
            participation_score=scaled["participation"][s],
            review_score=scaled["reviews"][s],
        ) for s in members
    }
    indices = {s: aggregate_contribution(vectors[s], config.ica_weights)
               for s in members}
    normalized = normalize_team(indices, config.normalization,
                                config.cap_multiple)
    alerts = detect_imbalance(normalized, config.floor_share,
                              config.cap_multiple)

    deadline = (datetime.fromisoformat(config.deadline)
                if config.deadline else None)
    temporal = {
        s: cluster_commit_times(timestamps[s], config.dbscan_eps_hours,
                                config.dbscan_min_pts, deadline)
        for s in members
    }

    heatmap = _build_heatmap(ownership.credited, members)
    timeline = _build_timeline(timestamps)

    details = {
        "commit_classes": [classes[c.hash].to_dict()
                           for c in snapshot.commits],
        "participation": {s: participation[s].to_dict()
                          for s in sorted(members)},
        "reviews": {s: reviews[s].to_dict() for s in sorted(members)},
        "temporal": {s: temporal[s].to_dict() for s in sorted(members)},
        "ownership": ownership.to_dict(),
        "raw_dimensions": {
            s: {"commits": raw_commits[s], "ownership": raw_ownership[s],
                "participation": raw_participation[s],
                "reviews": raw_reviews[s]}
            for s in sorted(members)},
    }
    return TeamContribution(
        team_id=snapshot.team_id,
        vectors=vectors,
        normalized=normalized,
        alerts=tuple(alerts),
        total_commits=total_commits,
        substantive_commits=substantive,
        trivial_commits=trivial,
        ownership_share=ownership_shares,
        review_counts=review_counts,
        heatmap=heatmap,
        timeline=timeline,
        details=details,
    )


def _build_heatmap(credited: dict[StudentId, dict[str, float]],
                   members: tuple[StudentId, ...]) -> dict:
    paths = sorted({path for per in credited.values() for path in per})
    students = sorted(members)
    matrix = [[round(credited.get(s, {}).get(p, 0.0), 4) for p in paths]
              for s in students]
    return {"students": students, "files": paths, "matrix": matrix}


def _build_timeline(timestamps: dict[StudentId, list]) -> dict:
    series = {}
    for student in sorted(timestamps):
        per_day: dict[str, int] = {}
        for stamp in timestamps[student]:
            day = stamp.date().isoformat()
            per_day[day] = per_day.get(day, 0) + 1
        series[student] = dict(sorted(per_day.items()))
    return {"students": series}


# --------------------------------------------------------------------------
# Grading stage
# --------------------------------------------------------------------------

def grade_team(quality: QualityReport, contribution: TeamContribution,
               config: WeightConfig, clock: str) -> tuple[GradeBook, dict]:
    """Combine the stage outputs into a grade book plus feedback map."""
    team_id = contribution.team_id
    records: list[GradeRecord] = []
    floor_flags = []
    for student in sorted(contribution.normalized.ncs):
        ncs = contribution.normalized.ncs[student]
        s_f = combine(quality.pqs, ncs, config.ge_pqs_weight,
                      config.ge_ncs_weight)
        record = GradeRecord(student=student, team_id=team_id,
                             pqs=quality.pqs, ncs=ncs, s_f=s_f,
                             status="flagged_pending")
        record, flag = apply_floor_cap(
            record, contribution.normalized.share[student], config,
            flag_id=f"{team_id}:floor_triggered:{student}")
        records.append(record)
        if flag is not None:
            floor_flags.append(flag)

    record_map = {r.student: r for r in records}
    flags = floor_flags + detect_anomalies(team_id, record_map, contribution,
                                           quality, config)
    book = GradeBook.build(team_id, records, flags, PIPELINE_ACTOR, clock)

    feedback = {}
    for record in records:
        summary = generate_feedback(
            record, quality, contribution.vectors.get(record.student))
        feedback[record.student] = summary.to_dict()
    return book, feedback


# --------------------------------------------------------------------------
# Artifact files
# --------------------------------------------------------------------------

def quality_to_dict(team_id: str, report: QualityReport) -> dict:
    return {"team_id": team_id, "report": report.to_dict()}


def quality_from_dict(data: dict) -> tuple[str, QualityReport]:
    return data["team_id"], report_from_dict(data["report"])


def contribution_to_dict(contribution: TeamContribution,
                         clock: str) -> dict:
    students = sorted(contribution.vectors)
    return {
        "team_id": contribution.team_id,
        "clock": clock,
        "vectors": {s: contribution.vectors[s].to_dict() for s in students},
        "normalized": contribution.normalized.to_dict(),
        "alerts": [a.to_dict() for a in contribution.alerts],
        "counts": {
            s: {
                "total_commits": contribution.total_commits.get(s, 0),
                "substantive_commits":
                    contribution.substantive_commits.get(s, 0),
                "trivial_commits": contribution.trivial_commits.get(s, 0),
                "review_count": contribution.review_counts.get(s, 0),
            } for s in students
        },
        "ownership_shares": {
            s: contribution.ownership_share.get(s, 0.0) for s in students},
        "heatmap": contribution.heatmap,
        "timeline": contribution.timeline,
        "details": contribution.details,
    }


def contribution_from_dict(data: dict) -> TeamContribution:
    students = sorted(data["vectors"])
    norm = data["normalized"]
    normalized = NormalizedContribution(
        raw_index={s: norm["students"][s]["raw_index"] for s in students},
        capped_index={s: norm["students"][s]["capped_index"]
                      for s in students},
        ncs={s: norm["students"][s]["ncs"] for s in students},
        share={s: norm["students"][s]["share"] for s in students},
        method=norm["method"],
    )
    return TeamContribution(
        team_id=data["team_id"],
        vectors={s: ContributionVector(**data["vectors"][s])
                 for s in students},
        normalized=normalized,
        alerts=tuple(ImbalanceAlert(**a) for a in data["alerts"]),
        total_commits={s: data["counts"][s]["total_commits"]
                       for s in students},
        substantive_commits={s: data["counts"][s]["substantive_commits"]
                             for s in students},
        trivial_commits={s: data["counts"][s]["trivial_commits"]
                         for s in students},
        ownership_share=dict(data["ownership_shares"]),
        review_counts={s: data["counts"][s]["review_count"]
                       for s in students},
        heatmap=data["heatmap"],
        timeline=data["timeline"],
        details=data.get("details", {}),
    )


def write_grade_artifacts(book: GradeBook, feedback: dict,
                          out_dir: str | Path) -> None:
    """Write grades.json, flags.json, and a fresh audit.jsonl."""
    out_dir = Path(out_dir)
    grades = book.grades_dict()
    grades["feedback"] = {s: feedback[s] for s in sorted(feedback)}
    write_json_atomic(grades, out_dir / "grades.json")
    write_json_atomic(book.flags_dict(), out_dir / "flags.json")
    audit_path = out_dir / "audit.jsonl"
    if audit_path.exists():
        audit_path.unlink()
    append_audit_entries(audit_path, book.entries)
