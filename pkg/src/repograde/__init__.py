"""repograde: repository-mining grading for group software projects.

Scores a team's project quality from its repository and report
adapters, attributes individual contributions from commit history,
blame, and forge events, combines both into auditable per-student
grades with anomaly flagging, and serves a review workflow for
instructor overrides.
"""

__version__ = "0.1.0"

from repograde.errors import (ConfigError, ConflictError, GraderError,
                              NotFoundError, ParseError, PolicyError,
                              ValidationError)
from repograde.model import (TeamRoster, WeightConfig, clamp_score,
                             load_config, load_roster, resolve_identity)

__all__ = [
    "ConfigError",
    "ConflictError",
    "GraderError",
    "NotFoundError",
    "ParseError",
    "PolicyError",
    "TeamRoster",
    "ValidationError",
    "WeightConfig",
    "clamp_score",
    "load_config",
    "load_roster",
    "resolve_identity",
    "__version__",
]
