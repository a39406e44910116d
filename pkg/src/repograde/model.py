"""Core domain types: scores, weight configuration, team rosters, identities.

Everything here is immutable after construction and safe to share across
concurrent evaluation tasks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Mapping

from repograde.errors import ConfigError

# Student identifiers are opaque strings, unique within a course.
StudentId = str

#: Sentinel for commit/issue/review identities that match no roster alias.
UNRESOLVED = None

PQAM_COMPONENTS = ("code_quality", "testing", "documentation",
                   "functionality", "usability")
ICA_COMPONENTS = ("commits", "ownership", "participation", "reviews")

NORMALIZATION_METHODS = ("min_max", "z_score")


def clamp_score(value: float) -> float:
    """Clamp a number onto the 0-100 point scale used by every score."""
    return max(0.0, min(100.0, float(value)))


def _check_weight_group(name: str, weights: Mapping[str, float],
                        expected_keys: tuple[str, ...]) -> dict[str, float]:
    if set(weights) != set(expected_keys):
        raise ConfigError(
            f"{name} must define exactly the keys {sorted(expected_keys)}, "
            f"got {sorted(weights)}")
    out = {}
    for key in expected_keys:
        w = float(weights[key])
        if w < 0:
            raise ConfigError(f"{name}[{key}] must be non-negative, got {w}")
        out[key] = w
    total = sum(out.values())
    if abs(total - 1.0) > 1e-9:
        raise ConfigError(f"{name} must sum to 1, got {total!r}")
    return out


@dataclass(frozen=True)
class WeightConfig:
    """Validated grading configuration with documented defaults.

    ``pqam_weights`` covers the five project-quality submodules and
    ``ica_weights`` the four contribution dimensions; each group sums
    to 1 (within 1e-9), as do the two final-grade weights.
    """

    pqam_weights: dict[str, float] = field(
        default_factory=lambda: {k: 0.2 for k in PQAM_COMPONENTS})
    ica_weights: dict[str, float] = field(
        default_factory=lambda: {k: 0.25 for k in ICA_COMPONENTS})
    ge_pqs_weight: float = 0.6
    ge_ncs_weight: float = 0.4
    normalization: str = "min_max"
    floor_share: float = 0.10
    floor_grade: float = 40.0
    cap_multiple: float = 2.0
    partial_credit: float = 0.3
    dbscan_eps_hours: float = 6.0
    dbscan_min_pts: int = 3
    # Project metadata and exposed tuning knobs (all optional in the file).
    deadline: str | None = None
    test_globs: tuple[str, ...] = ("tests/**", "test/**", "test_*.*",
                                   "**/test_*.*", "*_test.*", "**/*_test.*")
    doc_globs: tuple[str, ...] = ("docs/**", "doc/**", "*.md", "**/*.md",
                                  "*.rst", "**/*.rst")
    test_doc_bonus: float = 0.5
    iqr_multiplier: float = 1.5
    z_threshold: float = 2.0
    review_share_threshold: float = 0.7
    quality_gap_pqs: float = 85.0
    quality_gap_commit_median: float = 20.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "pqam_weights", _check_weight_group(
            "pqam_weights", self.pqam_weights, PQAM_COMPONENTS))
        object.__setattr__(self, "ica_weights", _check_weight_group(
            "ica_weights", self.ica_weights, ICA_COMPONENTS))
        if abs(self.ge_pqs_weight + self.ge_ncs_weight - 1.0) > 1e-9:
            raise ConfigError(
                "ge_pqs_weight + ge_ncs_weight must sum to 1, got "
                f"{self.ge_pqs_weight} + {self.ge_ncs_weight}")
        if not 0.0 <= self.ge_pqs_weight <= 1.0:
            raise ConfigError("ge_pqs_weight must lie in [0, 1]")
        if not 0.0 <= self.ge_ncs_weight <= 1.0:
            raise ConfigError("ge_ncs_weight must lie in [0, 1]")
        if self.normalization not in NORMALIZATION_METHODS:
            raise ConfigError(
                f"normalization must be one of {NORMALIZATION_METHODS}, "
                f"got {self.normalization!r}")
        if not 0.0 <= self.floor_share <= 1.0:
            raise ConfigError("floor_share must be a fraction in [0, 1]")
        if not 0.0 <= self.floor_grade <= 100.0:
            raise ConfigError("floor_grade must lie on the 0-100 scale")
        if self.cap_multiple <= 1.0:
            raise ConfigError("cap_multiple must be > 1")
        if not 0.0 <= self.partial_credit <= 1.0:
            raise ConfigError("partial_credit must be a fraction in [0, 1]")
        if self.dbscan_eps_hours <= 0:
            raise ConfigError("dbscan_eps_hours must be > 0")
        if self.dbscan_min_pts < 1:
            raise ConfigError("dbscan_min_pts must be an integer >= 1")
        object.__setattr__(self, "test_globs", tuple(self.test_globs))
        object.__setattr__(self, "doc_globs", tuple(self.doc_globs))

    def to_dict(self) -> dict:
        """Serialize to the JSON shape accepted by :func:`load_config`."""
        return {
            "pqam_weights": dict(self.pqam_weights),
            "ica_weights": dict(self.ica_weights),
            "ge_pqs_weight": self.ge_pqs_weight,
            "ge_ncs_weight": self.ge_ncs_weight,
            "normalization": self.normalization,
            "floor_share": self.floor_share,
            "floor_grade": self.floor_grade,
            "cap_multiple": self.cap_multiple,
            "partial_credit": self.partial_credit,
            "dbscan_eps_hours": self.dbscan_eps_hours,
            "dbscan_min_pts": self.dbscan_min_pts,
            "deadline": self.deadline,
            "test_globs": list(self.test_globs),
            "doc_globs": list(self.doc_globs),
            "test_doc_bonus": self.test_doc_bonus,
            "iqr_multiplier": self.iqr_multiplier,
            "z_threshold": self.z_threshold,
            "review_share_threshold": self.review_share_threshold,
            "quality_gap_pqs": self.quality_gap_pqs,
            "quality_gap_commit_median": self.quality_gap_commit_median,
        }


_CONFIG_KEYS = {f.name for f in fields(WeightConfig)}
_LIST_KEYS = {"test_globs", "doc_globs"}


def config_from_dict(data: Mapping) -> WeightConfig:
    """Build a validated WeightConfig; unknown keys are rejected."""
    if not isinstance(data, Mapping):
        raise ConfigError(f"config root must be a JSON object, "
                          f"got {type(data).__name__}")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    kwargs = {}
    for key, value in data.items():
        if key in _LIST_KEYS:
            value = tuple(value)
        kwargs[key] = value
    return WeightConfig(**kwargs)


def load_config(path: str | Path) -> WeightConfig:
    """Load the grading configuration file; absent keys take defaults.

    Raises:
        ParseError: the file is not well-formed JSON (message cites
            line and column).
        ConfigError: a key is unknown or a value violates an invariant.
    """
    from repograde.errors import ParseError

    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, source=str(path), line=exc.lineno,
                         offset=exc.pos) from exc
    return config_from_dict(data)


@dataclass(frozen=True)
class TeamRoster:
    """A team's membership and the identity aliases that map onto it.

    ``aliases`` maps author-identity strings (e-mail addresses or forge
    handles) to student ids; lookups are case-insensitive.
    """

    team_id: str
    members: tuple[StudentId, ...]
    aliases: dict[str, StudentId]

    def __post_init__(self) -> None:
        if not self.team_id:
            raise ConfigError("team_id must be non-empty")
        members = tuple(self.members)
        if not members:
            raise ConfigError(f"team {self.team_id}: needs at least one member")
        if len(set(members)) != len(members):
            raise ConfigError(f"team {self.team_id}: duplicate members")
        if any(not m for m in members):
            raise ConfigError(f"team {self.team_id}: empty student id")
        object.__setattr__(self, "members", members)
        member_set = set(members)
        normalized = {}
        for identity, student in self.aliases.items():
            if student not in member_set:
                raise ConfigError(
                    f"team {self.team_id}: alias {identity!r} maps to "
                    f"{student!r}, which is not a member")
            normalized[identity.casefold()] = student
        object.__setattr__(self, "aliases", normalized)

    def to_dict(self) -> dict:
        return {
            "team_id": self.team_id,
            "members": list(self.members),
            "aliases": dict(self.aliases),
        }


def resolve_identity(author_identity: str,
                     roster: TeamRoster) -> StudentId | None:
    """Map an author identity to a roster member, or None when unresolved.

    Matching is exact after case folding (e-mail addresses and forge
    handles are treated case-insensitively).  Deterministic and total:
    never raises.
    """
    return roster.aliases.get(author_identity.casefold())


def load_roster(path: str | Path) -> list[TeamRoster]:
    """Load the roster file: ``{"teams": [{team_id, members, aliases}]}``."""
    from repograde.errors import ParseError

    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, source=str(path), line=exc.lineno,
                         offset=exc.pos) from exc
    if not isinstance(data, dict) or "teams" not in data:
        raise ConfigError(f"{path}: roster root must be an object with "
                          "a 'teams' list")
    rosters = []
    for entry in data["teams"]:
        rosters.append(TeamRoster(
            team_id=entry["team_id"],
            members=tuple(entry["members"]),
            aliases=dict(entry.get("aliases", {})),
        ))
    return rosters
