"""Code-review evaluation: frequency, depth, and tone.

Depth and tone are lexicon-driven rather than model-driven: the
bundled term lists are plain data (JSON) and can be swapped per course
without touching code.  A review earns 10 depth points per distinct
depth category it hits (logic issue, improvement suggestion,
standards reference); bodies that are nothing but a generic stamp
("lgtm", "+1", ...) earn 0.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from repograde.errors import GraderError
from repograde.ingest.forge import ReviewEvent
from repograde.model import StudentId, TeamRoster, resolve_identity

DEPTH_POINTS_PER_CATEGORY = 10.0
DEPTH_CATEGORY_COUNT = 3
TONES = ("constructive", "neutral", "toxic")


@dataclass(frozen=True)
class Lexicons:
    depth: dict[str, tuple[str, ...]]
    generic: tuple[str, ...]
    positive: tuple[str, ...]
    negative: tuple[str, ...]
    toxicity: tuple[str, ...]


@dataclass(frozen=True)
class ReviewScore:
    """Per-student review activity summary."""

    review_count: int = 0
    depth: float = 0.0   # mean depth points rescaled to 0-100
    depth_points_total: float = 0.0
    tone_histogram: dict[str, int] = field(
        default_factory=lambda: {t: 0 for t in TONES})

    def to_dict(self) -> dict:
        return {
            "review_count": self.review_count,
            "depth": self.depth,
            "depth_points_total": self.depth_points_total,
            "tone_histogram": {t: self.tone_histogram.get(t, 0)
                               for t in TONES},
        }


def load_lexicons(path: str | Path | None = None) -> Lexicons:
    """Load review lexicons from a JSON file, or the bundled default.

    Raises:
        GraderError: the file is missing or not valid JSON.
    """
    if path is None:
        text = (resources.files("repograde") / "data"
                / "review_lexicons.json").read_text(encoding="utf-8")
        source = "<bundled review_lexicons.json>"
    else:
        path = Path(path)
        if not path.is_file():
            raise GraderError(f"lexicon file not found: {path}")
        text = path.read_text(encoding="utf-8")
        source = str(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraderError(f"{source}: malformed lexicon JSON: {exc}") from exc
    try:
        return Lexicons(
            depth={category: tuple(terms)
                   for category, terms in data["depth"].items()},
            generic=tuple(data["generic"]),
            positive=tuple(data["tone"]["positive"]),
            negative=tuple(data["tone"]["negative"]),
            toxicity=tuple(data["tone"]["toxicity"]),
        )
    except KeyError as exc:
        raise GraderError(f"{source}: lexicon missing section {exc}") from exc


def _term_present(term: str, text: str) -> bool:
    pattern = r"(?<!\w)" + re.escape(term) + r"(?!\w)"
    return re.search(pattern, text) is not None


def _normalize_body(body: str) -> str:
    return re.sub(r"[^a-z0-9+]+", " ", body.lower()).strip()


def review_depth_points(body: str, lexicons: Lexicons) -> float:
    """Depth points for one review body (0, 10, 20, or 30)."""
    text = body.lower()
    if _normalize_body(body) in {_normalize_body(g) for g in lexicons.generic}:
        return 0.0
    hit = sum(
        1 for terms in lexicons.depth.values()
        if any(_term_present(term, text) for term in terms))
    return DEPTH_POINTS_PER_CATEGORY * hit


def review_tone(body: str, lexicons: Lexicons) -> str:
    """Classify tone: toxic markers win, then positive vs negative hits."""
    text = body.lower()
    if any(_term_present(t, text) for t in lexicons.toxicity):
        return "toxic"
    positive = sum(1 for t in lexicons.positive if _term_present(t, text))
    negative = sum(1 for t in lexicons.negative if _term_present(t, text))
    if positive > negative:
        return "constructive"
    return "neutral"


def score_reviews(reviews: list[ReviewEvent] | tuple[ReviewEvent, ...],
                  lexicons: Lexicons,
                  roster: TeamRoster) -> dict[StudentId, ReviewScore]:
    """Score review participation per roster member.

    Student depth is the mean per-review depth points rescaled so that
    hitting all three categories on every review maps to 100.
    """
    per_student: dict[StudentId, list[tuple[float, str]]] = {}
    for review in reviews:
        student = resolve_identity(review.reviewer_identity, roster)
        if student is None:
            continue
        points = review_depth_points(review.body, lexicons)
        tone = review_tone(review.body, lexicons)
        per_student.setdefault(student, []).append((points, tone))

    scores: dict[StudentId, ReviewScore] = {}
    max_points = DEPTH_POINTS_PER_CATEGORY * DEPTH_CATEGORY_COUNT
    for member in roster.members:
        entries = per_student.get(member, [])
        histogram = {t: 0 for t in TONES}
        for _, tone in entries:
            histogram[tone] += 1
        total_points = sum(p for p, _ in entries)
        mean_points = total_points / len(entries) if entries else 0.0
        scores[member] = ReviewScore(
            review_count=len(entries),
            depth=100.0 * mean_points / max_points,
            depth_points_total=total_points,
            tone_histogram=histogram,
        )
    return scores
