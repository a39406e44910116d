"""Command-line driver for the five-step grading pipeline.

Commands: ``ingest``, ``score``, ``grade``, ``export``, ``serve``.
Exit codes: 0 success, 2 input/validation error, 3 I/O or environment
error, 4 policy guard (e.g. exporting pending grades without
``--allow-pending``).
"""

from __future__ import annotations

import argparse
import os
import sys
import uuid
from datetime import datetime, timezone
from pathlib import Path

from repograde.errors import (GraderError, ParseError, PolicyError,
                              ValidationError)
from repograde.grading.export import render_lms_csv
from repograde.grading.records import AnomalyFlag, GradeRecord
from repograde.ingest.snapshot import (build_project_snapshot, dump_snapshot,
                                       load_snapshot)
from repograde.model import (WeightConfig, load_config, load_roster)
from repograde import pipeline

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IO = 3
EXIT_POLICY = 4

DEFAULT_CONFIG = "./grader.json"


def _say(args: argparse.Namespace, message: str) -> None:
    if not args.quiet:
        print(message)


def _resolve_config(args: argparse.Namespace) -> WeightConfig:
    path = Path(args.config)
    if args.config == DEFAULT_CONFIG and not path.is_file():
        return WeightConfig()
    return load_config(path)


def _data_dir(args: argparse.Namespace) -> Path:
    if args.out:
        return Path(args.out)
    return Path(os.environ.get("GRADER_DATA_DIR", "./grader-data"))


def _team_dir(root: Path, team_id: str) -> Path:
    return root / "teams" / team_id


def cmd_ingest(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    rosters = load_roster(args.roster)
    if args.team:
        matching = [r for r in rosters if r.team_id == args.team]
        if not matching:
            raise ValidationError(f"team {args.team!r} not in roster")
        roster = matching[0]
    elif len(rosters) == 1:
        roster = rosters[0]
    else:
        raise ValidationError(
            "roster defines multiple teams; pass --team <id>")

    started = datetime.now(timezone.utc)
    snapshot = build_project_snapshot(args.repo, args.forge_export, roster)
    out_dir = _team_dir(_data_dir(args), roster.team_id)
    out_dir.mkdir(parents=True, exist_ok=True)
    dump_snapshot(snapshot, out_dir / "snapshot.json")
    pipeline.write_manifest(
        out_dir, run_id=str(uuid.uuid4()), config=config,
        inputs={"repo": str(args.repo),
                "forge_export": str(args.forge_export or ""),
                "roster": str(args.roster)},
        started=started)
    for warning in snapshot.warnings:
        _say(args, f"warning: {warning}")
    _say(args, f"snapshot written: {out_dir / 'snapshot.json'} "
               f"({len(snapshot.commits)} commits, "
               f"{len(snapshot.blame)} blamed lines)")
    return EXIT_OK


def cmd_score(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    snapshot = load_snapshot(args.snapshot)
    rosters = load_roster(args.roster)
    matching = [r for r in rosters if r.team_id == snapshot.team_id]
    if not matching:
        raise ValidationError(
            f"snapshot team {snapshot.team_id!r} not present in roster")
    roster = matching[0]
    if not roster.members:
        raise ValidationError(f"team {roster.team_id} has an empty roster")

    report = pipeline.assess_quality(snapshot, config, args.adapters)
    contribution = pipeline.analyze_contribution(snapshot, roster, config,
                                                 args.lexicons)
    clock = pipeline.snapshot_clock(snapshot)
    out_dir = Path(args.snapshot).parent if args.out is None \
        else _team_dir(_data_dir(args), snapshot.team_id)
    pipeline.write_json_atomic(
        pipeline.quality_to_dict(snapshot.team_id, report),
        out_dir / "quality.json")
    pipeline.write_json_atomic(
        pipeline.contribution_to_dict(contribution, clock),
        out_dir / "contribution.json")
    _say(args, f"quality score (PQS) {report.pqs:.2f}; reports written "
               f"to {out_dir}")
    return EXIT_OK


def cmd_grade(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    team_id, quality = pipeline.quality_from_dict(
        pipeline.load_json(args.quality))
    contribution = pipeline.contribution_from_dict(
        pipeline.load_json(args.contribution))
    if team_id != contribution.team_id:
        raise ValidationError(
            f"quality is for team {team_id!r} but contribution is for "
            f"{contribution.team_id!r}")
    clock = pipeline.load_json(args.contribution).get(
        "clock", "1970-01-01T00:00:00+00:00")
    book, feedback = pipeline.grade_team(quality, contribution, config,
                                         clock)
    out_dir = (Path(args.quality).parent if args.out is None
               else _team_dir(_data_dir(args), team_id))
    pipeline.write_grade_artifacts(book, feedback, out_dir)
    flagged = [f for f in book.flags.values() if f.status == "open"]
    _say(args, f"graded {len(book.records)} students; "
               f"{len(flagged)} open flag(s); artifacts in {out_dir}")
    return EXIT_OK


def _collect_grade_files(source: Path) -> list[Path]:
    if source.is_file():
        return [source]
    found = sorted(source.glob("teams/*/grades.json"))
    if not found:
        found = sorted(source.glob("*/grades.json"))
    return found


def cmd_export(args: argparse.Namespace) -> int:
    source = Path(args.grades)
    grade_files = _collect_grade_files(source)
    if not grade_files:
        raise OSError(f"no grades.json found under {source}")
    records: list[GradeRecord] = []
    flags: list[AnomalyFlag] = []
    for grades_path in grade_files:
        data = pipeline.load_json(grades_path)
        records.extend(GradeRecord.from_dict(r) for r in data["records"])
        flags_path = grades_path.parent / "flags.json"
        if flags_path.is_file():
            flag_data = pipeline.load_json(flags_path)
            flags.extend(AnomalyFlag.from_dict(f)
                         for f in flag_data["flags"])
    csv_text = render_lms_csv(records, flags,
                              allow_pending=args.allow_pending)
    out_path = Path(args.out) if args.out else Path("lms.csv")
    if out_path.is_dir():
        out_path = out_path / "lms.csv"
    out_path.write_text(csv_text, encoding="utf-8")
    _say(args, f"exported {len(records)} grade row(s) to {out_path}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    from repograde.service import serve

    data_dir = Path(args.data_dir) if args.data_dir else _data_dir(args)
    host, _, port = args.bind.rpartition(":")
    try:
        serve(data_dir=data_dir, host=host or "127.0.0.1", port=int(port),
              quiet=args.quiet)
    except OSError as exc:
        print(f"error: cannot bind {args.bind}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _add_global_flags(parser: argparse.ArgumentParser,
                      top_level: bool) -> None:
    # Real defaults live on the top-level parser; the per-subcommand
    # copies use SUPPRESS so a flag given before the subcommand is not
    # clobbered by a subparser default.
    default = (lambda v: v) if top_level else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--config", default=default(DEFAULT_CONFIG),
                        help="grading config JSON (default ./grader.json)")
    parser.add_argument("--out", default=default(None),
                        help="output root (default $GRADER_DATA_DIR); for "
                             "`export`, the CSV path")
    parser.add_argument("--quiet", action="store_true",
                        default=default(False),
                        help="suppress progress output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repograde",
        description="Repository-mining grading pipeline for group projects")
    _add_global_flags(parser, top_level=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="mine a repository into snapshot.json")
    p.add_argument("repo", help="path to the repository working copy")
    p.add_argument("roster", help="roster JSON file")
    p.add_argument("--forge-export", default=None,
                   help="forge events JSON Lines file (optional)")
    p.add_argument("--team", default=None,
                   help="team id when the roster has several teams")
    _add_global_flags(p, top_level=False)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("score",
                       help="compute quality.json and contribution.json")
    p.add_argument("snapshot", help="snapshot.json from ingest")
    p.add_argument("roster", help="roster JSON file")
    p.add_argument("--adapters", default=None,
                   help="directory with coverage/lint/test/usability files")
    p.add_argument("--lexicons", default=None,
                   help="review lexicon JSON (default: bundled)")
    _add_global_flags(p, top_level=False)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("grade",
                       help="combine reports into grades, flags, audit log")
    p.add_argument("quality", help="quality.json from score")
    p.add_argument("contribution", help="contribution.json from score")
    _add_global_flags(p, top_level=False)
    p.set_defaults(func=cmd_grade)

    p = sub.add_parser("export", help="write the LMS CSV")
    p.add_argument("grades",
                   help="grades.json or a data dir with teams/*/grades.json")
    p.add_argument("--allow-pending", action="store_true",
                   help="export even with flagged_pending records")
    _add_global_flags(p, top_level=False)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the review HTTP service")
    p.add_argument("--data-dir", default=None,
                   help="data root (default $GRADER_DATA_DIR)")
    p.add_argument("--bind", default="127.0.0.1:8750",
                   help="host:port to listen on")
    _add_global_flags(p, top_level=False)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PolicyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POLICY
    except (ParseError, ValidationError, GraderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
