"""Contribution analysis pieces on synthetic inputs.

Walks the four dimensions: trivial-commit filtering, burst clustering
of commit times, blame-based ownership with partial credit, and the
team normalization that turns raw indices into 0-100 scores.
"""

from datetime import datetime, timedelta, timezone

from repograde.contribution import (classify_commit, cluster_commit_times,
                                    compute_ownership, detect_imbalance,
                                    normalize_team)
from repograde.contribution.classify import CommitClass
from repograde.ingest.blame import BlameRecord
from repograde.ingest.gitlog import CommitRecord, FileDelta
from repograde.model import TeamRoster

BASE = datetime(2026, 3, 1, 9, 0, tzinfo=timezone.utc)
ROSTER = TeamRoster("demo", ("ana", "ben"),
                    {"ana@uni.edu": "ana", "ben@uni.edu": "ben"})


def commit(hash_: str, path: str, added: int, deleted: int,
           author: str, hours: float) -> CommitRecord:
    return CommitRecord(
        hash=hash_ * 40, author_name=author,
        author_identity=f"{author}@uni.edu",
        timestamp=BASE + timedelta(hours=hours), message="work",
        deltas=(FileDelta(path, added, deleted),), resolved_author=author)


def main() -> None:
    print("1. trivial-change filtering")
    spam = commit("a", "core.py", 1, 1, "ben", 0)
    verdict = classify_commit(
        spam, {"core.py": ("def f():\n  return 1\n",
                           "def f():\n        return 1\n")})
    print(f"   indentation-only edit -> {verdict.classification} "
          f"({verdict.reason}), weight {verdict.weight}")
    real = commit("b", "core.py", 8, 0, "ana", 1)
    verdict = classify_commit(
        real, {"core.py": ("def f():\n  return 1\n",
                           "def f():\n  return 1\n\ndef g():\n  return 2\n")})
    print(f"   new function          -> {verdict.classification} "
          f"({verdict.reason}), weight {verdict.weight}")

    print("\n2. commit-time clustering (burst detection)")
    stamps = ([BASE + timedelta(hours=h) for h in (0, 1, 2, 2.5)]
              + [BASE + timedelta(hours=70 + h / 4) for h in range(4)]
              + [BASE + timedelta(hours=200)])
    profile = cluster_commit_times(stamps, eps_hours=6, min_pts=3,
                                   deadline=BASE + timedelta(hours=72))
    for start, end, count in profile.clusters:
        print(f"   cluster of {count}: {start:%m-%d %H:%M} .. "
              f"{end:%m-%d %H:%M}")
    print(f"   noise commits: {profile.noise_count}; last-minute "
          f"fraction: {profile.last_minute_fraction:.2f}")

    print("\n3. ownership with partial credit")
    blame = [BlameRecord("core.py", i + 1, "ana@uni.edu", "c" * 40)
             for i in range(100)]
    edit = commit("d", "core.py", 10, 10, "ben", 5)
    classes = {edit.hash: CommitClass(edit.hash, "substantive",
                                      "substantive", 1.0)}
    ownership = compute_ownership(blame, [edit], ROSTER,
                                  partial_credit=0.3,
                                  commit_classes=classes)
    for student in ("ana", "ben"):
        print(f"   {student}: {ownership.total_owned(student):.1f} "
              "credited line-equivalents")

    print("\n4. team normalization and imbalance alerts")
    indices = {"ana": 92.0, "ben": 31.0, "cid": 28.0, "dee": 6.0}
    norm = normalize_team(indices, "min_max", cap_multiple=2.0)
    for student in sorted(indices):
        print(f"   {student}: raw {indices[student]:5.1f} -> "
              f"ncs {norm.ncs[student]:5.1f} (share "
              f"{norm.share[student]:.3f})")
    for alert in detect_imbalance(norm, floor_share=0.10,
                                  cap_multiple=2.0):
        print(f"   alert: {alert.kind} for {alert.student} "
              f"(share {alert.share:.3f}, bound {alert.bound:.3f})")


if __name__ == "__main__":
    main()
