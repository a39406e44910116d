"""Instructor review over HTTP: flags, override, approval, export.

Reuses the pipeline from demo 04, writes the artifacts to a data
directory, starts the review service on an ephemeral port, and drives
the review workflow with plain stdlib HTTP calls.
"""

import importlib.util
import json
import sys
import tempfile
import threading
import urllib.request
from pathlib import Path

from repograde import pipeline
from repograde.ingest import build_project_snapshot
from repograde.model import TeamRoster, WeightConfig
from repograde.service import make_server

TOKEN = "demo-token"


def _load_demo_04():
    spec = importlib.util.spec_from_file_location(
        "demo_04", Path(__file__).with_name("04_full_pipeline.py"))
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def call(base: str, path: str, payload: dict | None = None) -> dict | list:
    request = urllib.request.Request(
        base + path,
        data=(json.dumps(payload).encode() if payload is not None
              else None),
        headers={"Authorization": f"Bearer {TOKEN}",
                 "Content-Type": "application/json"},
        method="POST" if payload is not None else "GET")
    with urllib.request.urlopen(request) as response:
        body = response.read().decode()
    return json.loads(body) if body.startswith(("{", "[")) else body


def main() -> None:
    demo_04 = _load_demo_04()
    root = Path(tempfile.mkdtemp(prefix="repograde-demo-"))
    repo, forge = demo_04.build_team_repo(root)
    adapters = demo_04.write_adapters(root)
    roster = TeamRoster(
        team_id="demo-team", members=("ana", "ben", "cid"),
        aliases={"ana@uni.edu": "ana", "ben@uni.edu": "ben",
                 "cid@uni.edu": "cid"})
    # A stricter contribution floor than the default, so the demo
    # has a flag to review.
    config = WeightConfig(floor_share=0.15)

    snapshot = build_project_snapshot(repo, forge, roster)
    quality = pipeline.assess_quality(snapshot, config, adapters)
    contribution = pipeline.analyze_contribution(snapshot, roster, config)
    book, feedback = pipeline.grade_team(
        quality, contribution, config, pipeline.snapshot_clock(snapshot))

    data_dir = root / "data"
    team_dir = data_dir / "teams" / "demo-team"
    pipeline.write_json_atomic(
        pipeline.quality_to_dict("demo-team", quality),
        team_dir / "quality.json")
    pipeline.write_json_atomic(
        pipeline.contribution_to_dict(contribution,
                                      pipeline.snapshot_clock(snapshot)),
        team_dir / "contribution.json")
    pipeline.write_grade_artifacts(book, feedback, team_dir)

    server = make_server(data_dir, "127.0.0.1", 0, token=TOKEN)
    port = server.server_address[1]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{port}"
    print(f"service up at {base}")

    print("\nteams:", call(base, "/teams"))
    open_flags = call(base, "/flags?status=open")
    print(f"\nopen flags: {[(f['kind'], f['student']) for f in open_flags]}")

    for flag in open_flags:
        result = call(base, f"/flags/{flag['id']}/override",
                      {"delta": 2 if flag["student"] else 0,
                       "note": "verified against repo history"})
        print(f"resolved {flag['id']} -> record "
              f"{result['record'] and result['record']['final']}")

    print("\napprove:", call(base, "/teams/demo-team/approve", {}))
    csv_text = call(base, "/export.csv")
    print("\nexport.csv:")
    print(csv_text.strip() if isinstance(csv_text, str) else csv_text)

    audit = (team_dir / "audit.jsonl").read_text().strip().split("\n")
    print(f"\naudit entries on disk: {len(audit)}")
    server.shutdown()
    server.server_close()


if __name__ == "__main__":
    main()
