"""HTTP review API over the grade artifacts (workflow step 5 backend).

Persistence is plain files: each team directory holds its JSON
artifacts plus an append-only ``audit.jsonl``; the audit log is the
authoritative state and is replayed at startup, so a restart serves
identical responses.  All mutations funnel through one lock (single
logical writer); every mutating endpoint appends exactly one audit
entry, GETs append none.

Routes (bearer token from ``GRADER_TOKEN`` required, except /health):

    GET  /health
    GET  /teams
    GET  /teams/{id}
    GET  /teams/{id}/heatmap
    GET  /teams/{id}/timeline
    GET  /flags?status=open|resolved
    POST /flags/{id}/override   {"delta": float, "note": str}
    POST /teams/{id}/approve
    GET  /export.csv[?allow_pending=1]

Setting ``GRADER_ANONYMIZE=1`` replaces student identifiers with
stable pseudonyms ("Student A", ...) in review responses; the LMS
export keeps real identifiers since grades must reach the LMS keyed
by student id.
"""

from __future__ import annotations

import hashlib
import json
import signal
import threading
from datetime import datetime, timezone
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, unquote, urlparse

import os

from repograde.errors import (ConflictError, GraderError, NotFoundError,
                              PolicyError, ValidationError)
from repograde.grading.audit import append_audit_entries, read_audit_log
from repograde.grading.book import GradeBook
from repograde.grading.export import render_lms_csv
from repograde.pipeline import load_json, write_json_atomic

REVIEW_ACTOR = "instructor"


def _letters(index: int) -> str:
    label = ""
    index += 1
    while index > 0:
        index, rem = divmod(index - 1, 26)
        label = chr(ord("A") + rem) + label
    return label


class ReviewService:
    """Shared state behind the HTTP handler; one lock, many readers."""

    def __init__(self, data_dir: str | Path, anonymize: bool = False) -> None:
        self.data_dir = Path(data_dir)
        self.anonymize = anonymize
        self.lock = threading.Lock()
        self.books: dict[str, GradeBook] = {}
        self.feedback: dict[str, dict] = {}
        self.quality: dict[str, dict] = {}
        self.contribution: dict[str, dict] = {}
        self._load()
        self._pseudonyms = self._build_pseudonyms()
        self._flag_alias = self._build_flag_aliases()

    # -- state ------------------------------------------------------------

    def _team_dirs(self) -> list[Path]:
        root = self.data_dir / "teams"
        if not root.is_dir():
            return []
        return sorted(p for p in root.iterdir() if p.is_dir())

    def _load(self) -> None:
        for team_dir in self._team_dirs():
            audit_path = team_dir / "audit.jsonl"
            grades_path = team_dir / "grades.json"
            if not audit_path.is_file() or not grades_path.is_file():
                continue
            book = GradeBook.replay(read_audit_log(audit_path),
                                    team_id=team_dir.name)
            self.books[book.team_id] = book
            grades = load_json(grades_path)
            self.feedback[book.team_id] = grades.get("feedback", {})
            quality_path = team_dir / "quality.json"
            if quality_path.is_file():
                self.quality[book.team_id] = load_json(quality_path)
            contribution_path = team_dir / "contribution.json"
            if contribution_path.is_file():
                self.contribution[book.team_id] = load_json(contribution_path)

    def _persist(self, team_id: str, new_entries: list) -> None:
        team_dir = self.data_dir / "teams" / team_id
        book = self.books[team_id]
        append_audit_entries(team_dir / "audit.jsonl", new_entries)
        grades = book.grades_dict()
        grades["feedback"] = self.feedback.get(team_id, {})
        write_json_atomic(grades, team_dir / "grades.json")
        write_json_atomic(book.flags_dict(), team_dir / "flags.json")

    # -- anonymization ----------------------------------------------------

    def _build_pseudonyms(self) -> dict[str, str]:
        students = sorted({s for book in self.books.values()
                           for s in book.records})
        return {s: f"Student {_letters(i)}"
                for i, s in enumerate(students)}

    def _build_flag_aliases(self) -> dict[str, str]:
        alias = {}
        for book in self.books.values():
            for flag_id in book.flags:
                digest = hashlib.sha256(flag_id.encode()).hexdigest()[:12]
                alias[f"flag-{digest}"] = flag_id
        return alias

    def mask_student(self, student: str | None) -> str | None:
        if student is None or not self.anonymize:
            return student
        return self._pseudonyms.get(student, student)

    def mask_flag_id(self, flag_id: str) -> str:
        if not self.anonymize:
            return flag_id
        digest = hashlib.sha256(flag_id.encode()).hexdigest()[:12]
        return f"flag-{digest}"

    def resolve_flag_id(self, flag_id: str) -> str:
        return self._flag_alias.get(flag_id, flag_id)

    def _mask_record(self, record: dict) -> dict:
        masked = dict(record)
        masked["student"] = self.mask_student(record["student"])
        return masked

    def _mask_flag(self, flag: dict) -> dict:
        masked = dict(flag)
        masked["id"] = self.mask_flag_id(flag["id"])
        masked["student"] = self.mask_student(flag.get("student"))
        return masked

    def _mask_keys(self, mapping: dict) -> dict:
        return {self.mask_student(k): v for k, v in sorted(mapping.items())}

    # -- views ------------------------------------------------------------

    def team_summaries(self) -> list[dict]:
        out = []
        for team_id in sorted(self.books):
            book = self.books[team_id]
            statuses: dict[str, int] = {}
            for record in book.records.values():
                statuses[record.status] = statuses.get(record.status, 0) + 1
            quality = self.quality.get(team_id, {}).get("report", {})
            out.append({
                "team_id": team_id,
                "students": len(book.records),
                "open_flags": len(book.open_flags()),
                "statuses": dict(sorted(statuses.items())),
                "pqs": quality.get("pqs"),
            })
        return out

    def team_detail(self, team_id: str) -> dict:
        book = self._book(team_id)
        records = [self._mask_record(book.records[s].to_dict())
                   for s in sorted(book.records)]
        flags = [self._mask_flag(book.flags[fid].to_dict())
                 for fid in sorted(book.flags)]
        feedback = self._mask_keys(self.feedback.get(team_id, {}))
        contribution = self.contribution.get(team_id, {})
        summary = {}
        if contribution:
            summary = {
                "vectors": self._mask_keys(contribution.get("vectors", {})),
                "normalized": {
                    "method": contribution.get("normalized", {}).get("method"),
                    "students": self._mask_keys(
                        contribution.get("normalized", {}).get("students",
                                                               {}))},
                "counts": self._mask_keys(contribution.get("counts", {})),
                "alerts": [
                    {**a, "student": self.mask_student(a.get("student"))}
                    for a in contribution.get("alerts", [])],
            }
        return {
            "team_id": team_id,
            "records": records,
            "flags": flags,
            "feedback": feedback,
            "quality": self.quality.get(team_id, {}).get("report", {}),
            "contribution": summary,
        }

    def team_heatmap(self, team_id: str) -> dict:
        data = self._contribution_section(team_id, "heatmap")
        return {
            "team_id": team_id,
            "students": [self.mask_student(s)
                         for s in data.get("students", [])],
            "files": data.get("files", []),
            "matrix": data.get("matrix", []),
        }

    def team_timeline(self, team_id: str) -> dict:
        data = self._contribution_section(team_id, "timeline")
        return {
            "team_id": team_id,
            "students": self._mask_keys(data.get("students", {})),
        }

    def _contribution_section(self, team_id: str, key: str) -> dict:
        self._book(team_id)
        return self.contribution.get(team_id, {}).get(key, {})

    def flags_list(self, status: str | None) -> list[dict]:
        out = []
        for team_id in sorted(self.books):
            for fid in sorted(self.books[team_id].flags):
                flag = self.books[team_id].flags[fid]
                if status and flag.status != status:
                    continue
                out.append(self._mask_flag(flag.to_dict()))
        return out

    def _book(self, team_id: str) -> GradeBook:
        book = self.books.get(team_id)
        if book is None:
            raise NotFoundError(f"no such team: {team_id}")
        return book

    # -- mutations ----------------------------------------------------------

    def _clock(self) -> str:
        return datetime.now(timezone.utc).isoformat()

    def apply_override(self, flag_id: str, delta: float,
                       note: str) -> dict:
        with self.lock:
            real_id = self.resolve_flag_id(flag_id)
            book = None
            for candidate in self.books.values():
                if real_id in candidate.flags:
                    book = candidate
                    break
            if book is None:
                raise NotFoundError(f"no such flag: {flag_id}")
            entry = book.record_override(real_id, delta, note, REVIEW_ACTOR,
                                         self._clock())
            self._persist(book.team_id, [entry])
            student = book.flags[real_id].student
            record = (self._mask_record(book.records[student].to_dict())
                      if student is not None else None)
            return {
                "flag": self._mask_flag(book.flags[real_id].to_dict()),
                "record": record,
            }

    def approve_team(self, team_id: str) -> dict:
        with self.lock:
            book = self._book(team_id)
            entry = book.approve_team(REVIEW_ACTOR, self._clock())
            self._persist(team_id, [entry])
            return {
                "team_id": team_id,
                "statuses": sorted({r.status
                                    for r in book.records.values()}),
                "sequence_number": entry.sequence_number,
            }

    def export_csv(self, allow_pending: bool) -> str:
        records = [r for team_id in sorted(self.books)
                   for r in self.books[team_id].records.values()]
        flags = [f for team_id in sorted(self.books)
                 for f in self.books[team_id].flags.values()]
        return render_lms_csv(records, flags, allow_pending=allow_pending)


class ReviewHandler(BaseHTTPRequestHandler):
    """Thin HTTP layer; all logic lives on the ReviewService."""

    service: ReviewService
    token: str
    protocol_version = "HTTP/1.1"

    def log_message(self, format: str, *args) -> None:  # noqa: A002
        if not getattr(self.server, "quiet", False):
            super().log_message(format, *args)

    # -- plumbing -----------------------------------------------------------

    def _send(self, status: int, payload: dict | list | str,
              content_type: str = "application/json") -> None:
        if isinstance(payload, str):
            body = payload.encode("utf-8")
        else:
            body = (json.dumps(payload, sort_keys=True, ensure_ascii=False)
                    + "\n").encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self._send_cors_headers()
        self.end_headers()
        self.wfile.write(body)

    def _send_cors_headers(self) -> None:
        # The dashboard may be served from a different origin; the
        # bearer token is the actual access control.
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers",
                         "Authorization, Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST")

    def _error(self, status: int, message: str) -> None:
        self._send(status, {"error": message})

    def _authorized(self) -> bool:
        header = self.headers.get("Authorization", "")
        return header == f"Bearer {self.token}"

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed JSON body: {exc.msg}") from exc
        if not isinstance(data, dict):
            raise ValidationError("request body must be a JSON object")
        return data

    def _dispatch(self, method: str) -> None:
        parsed = urlparse(self.path)
        parts = [unquote(p) for p in parsed.path.split("/") if p]
        query = parse_qs(parsed.query)
        if parts == ["health"]:
            self._send(200, {"status": "ok",
                             "teams": len(self.service.books)})
            return
        if not self._authorized():
            self._error(401, "missing or invalid bearer token")
            return
        try:
            self._route(method, parts, query)
        except (ConflictError, PolicyError) as exc:
            self._error(409, str(exc))
        except NotFoundError as exc:
            self._error(404, str(exc))
        except ValidationError as exc:
            self._error(400, str(exc))
        except GraderError as exc:
            self._error(400, str(exc))

    def _route(self, method: str, parts: list[str], query: dict) -> None:
        service = self.service
        if method == "GET" and parts == ["teams"]:
            self._send(200, service.team_summaries())
        elif method == "GET" and len(parts) == 2 and parts[0] == "teams":
            self._send(200, service.team_detail(parts[1]))
        elif (method == "GET" and len(parts) == 3 and parts[0] == "teams"
              and parts[2] == "heatmap"):
            self._send(200, service.team_heatmap(parts[1]))
        elif (method == "GET" and len(parts) == 3 and parts[0] == "teams"
              and parts[2] == "timeline"):
            self._send(200, service.team_timeline(parts[1]))
        elif method == "GET" and parts == ["flags"]:
            status = query.get("status", [None])[0]
            if status not in (None, "open", "resolved"):
                raise ValidationError(
                    f"status filter must be open or resolved, got {status!r}")
            self._send(200, service.flags_list(status))
        elif method == "GET" and parts == ["export.csv"]:
            allow = query.get("allow_pending", ["0"])[0] in ("1", "true")
            csv_text = service.export_csv(allow_pending=allow)
            self._send(200, csv_text, content_type="text/csv; charset=utf-8")
        elif (method == "POST" and len(parts) == 3 and parts[0] == "flags"
              and parts[2] == "override"):
            body = self._read_body()
            if "note" not in body:
                raise ValidationError("override requires a note")
            delta = float(body.get("delta", 0.0))
            self._send(200, service.apply_override(parts[1], delta,
                                                   str(body["note"])))
        elif (method == "POST" and len(parts) == 3 and parts[0] == "teams"
              and parts[2] == "approve"):
            self._send(200, service.approve_team(parts[1]))
        else:
            self._error(404, f"no route for {method} /{'/'.join(parts)}")

    def do_GET(self) -> None:  # noqa: N802
        self._dispatch("GET")

    def do_POST(self) -> None:  # noqa: N802
        self._dispatch("POST")

    def do_OPTIONS(self) -> None:  # noqa: N802
        self.send_response(204)
        self._send_cors_headers()
        self.send_header("Content-Length", "0")
        self.end_headers()


def make_server(data_dir: str | Path, host: str, port: int,
                token: str | None = None,
                anonymize: bool | None = None,
                quiet: bool = True) -> ThreadingHTTPServer:
    """Build the HTTP server (raises OSError when the port is busy)."""
    if token is None:
        token = os.environ.get("GRADER_TOKEN", "")
    if not token:
        raise GraderError(
            "GRADER_TOKEN must be set (the review portal requires a "
            "bearer token)")
    if anonymize is None:
        anonymize = os.environ.get("GRADER_ANONYMIZE", "") in (
            "1", "true", "yes")
    service = ReviewService(data_dir, anonymize=anonymize)

    handler = type("BoundReviewHandler", (ReviewHandler,),
                   {"service": service, "token": token})
    server = ThreadingHTTPServer((host, port), handler)
    server.quiet = quiet  # type: ignore[attr-defined]
    return server


def serve(data_dir: str | Path, host: str = "127.0.0.1", port: int = 8750,
          quiet: bool = False) -> None:
    """Run the review service until SIGTERM/SIGINT, then exit cleanly.

    Audit entries are flushed as part of every mutation, so shutdown
    has nothing buffered to lose.
    """
    server = make_server(data_dir, host, port, quiet=quiet)

    def _shutdown(signum, frame):  # noqa: ARG001
        threading.Thread(target=server.shutdown, daemon=True).start()

    signal.signal(signal.SIGTERM, _shutdown)
    signal.signal(signal.SIGINT, _shutdown)
    if not quiet:
        print(f"review service listening on http://{host}:{port}")
    try:
        server.serve_forever()
    finally:
        server.server_close()
