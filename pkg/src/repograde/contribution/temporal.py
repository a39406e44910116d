"""Density clustering of commit timestamps (burst/last-minute analysis).

One-dimensional DBSCAN over commit instants: the distance between two
commits is their absolute difference in hours.  A point is core when
at least ``min_pts`` points (itself included) lie within ``eps``
hours; clusters are the connected components of core points, border
points attach to their nearest core (earlier core on ties), and the
rest is noise.  These rules are fully deterministic, so the result is
independent of input permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Sequence


@dataclass(frozen=True)
class TemporalProfile:
    """Clusters of commit activity plus last-minute statistics."""

    clusters: tuple[tuple[datetime, datetime, int], ...]
    noise_count: int
    last_minute_fraction: float

    @property
    def total_commits(self) -> int:
        return self.noise_count + sum(c[2] for c in self.clusters)

    def to_dict(self) -> dict:
        return {
            "clusters": [
                {"start": start.isoformat(), "end": end.isoformat(),
                 "count": count}
                for start, end, count in self.clusters],
            "noise_count": self.noise_count,
            "last_minute_fraction": self.last_minute_fraction,
        }


def dbscan_1d(values: Sequence[float], eps: float,
              min_pts: int) -> list[int]:
    """Label points with cluster ids (0, 1, ...) or -1 for noise.

    Cluster ids are assigned in ascending order of the cluster's
    smallest value, which (with the nearest-core border rule) makes
    the labelling a pure function of the multiset of values.
    """
    n = len(values)
    if n == 0:
        return []
    order = sorted(range(n), key=lambda i: (values[i], i))

    neighbors: list[list[int]] = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if abs(values[a] - values[b]) <= eps:
                neighbors[a].append(b)
    core = [len(neighbors[i]) >= min_pts for i in range(n)]

    # Connected components of core points under the eps relation,
    # walked in value order so component ids are canonical.
    labels = [-1] * n
    next_id = 0
    for idx in order:
        if not core[idx] or labels[idx] != -1:
            continue
        component = next_id
        next_id += 1
        stack = [idx]
        labels[idx] = component
        while stack:
            cur = stack.pop()
            for nb in neighbors[cur]:
                if core[nb] and labels[nb] == -1:
                    labels[nb] = component
                    stack.append(nb)

    # Border points: non-core within eps of a core; nearest core wins,
    # earlier (smaller-value) core on distance ties.
    for idx in range(n):
        if core[idx] or labels[idx] != -1:
            continue
        best: tuple[float, float, int] | None = None
        for nb in neighbors[idx]:
            if not core[nb]:
                continue
            key = (abs(values[idx] - values[nb]), values[nb], nb)
            if best is None or key < best:
                best = key
        if best is not None:
            labels[idx] = labels[best[2]]
    return labels


def cluster_commit_times(timestamps: Sequence[datetime],
                         eps_hours: float, min_pts: int,
                         deadline: datetime | None = None
                         ) -> TemporalProfile:
    """Cluster commit instants and measure last-minute concentration.

    ``last_minute_fraction`` is the fraction of the given commits made
    within the 24 hours before the deadline or later; it is 0 when no
    deadline is configured or there are no commits.
    """
    stamps = sorted(timestamps)
    if not stamps:
        return TemporalProfile(clusters=(), noise_count=0,
                               last_minute_fraction=0.0)
    hours = [t.timestamp() / 3600.0 for t in stamps]
    labels = dbscan_1d(hours, eps_hours, min_pts)

    by_label: dict[int, list[datetime]] = {}
    noise = 0
    for stamp, label in zip(stamps, labels):
        if label == -1:
            noise += 1
        else:
            by_label.setdefault(label, []).append(stamp)
    clusters = tuple(
        (min(members), max(members), len(members))
        for _, members in sorted(by_label.items()))

    last_minute = 0.0
    if deadline is not None:
        cutoff = deadline - timedelta(hours=24)
        late = sum(1 for t in stamps if t >= cutoff)
        last_minute = late / len(stamps)
    return TemporalProfile(clusters=clusters, noise_count=noise,
                           last_minute_fraction=last_minute)
