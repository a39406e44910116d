"""Project-quality scoring: static metrics, duplication, docs, coverage."""

from repograde.quality.adapters import (
    CoverageSummary,
    TestRunSummary,
    load_coverage,
    load_lint_density,
    load_test_results,
    load_usability,
    parse_lcov,
)
from repograde.quality.duplication import DuplicationReport, detect_duplication
from repograde.quality.metrics import (
    HalsteadMetrics,
    cyclomatic_complexity,
    function_complexities,
    halstead,
)
from repograde.quality.readability import count_syllables, flesch_reading_ease
from repograde.quality.scoring import (
    QualityReport,
    Scored,
    compute_pqs,
    score_code_quality,
    score_documentation,
    score_functionality,
    score_testing,
)
from repograde.quality.tokens import (
    LANGUAGE_PROFILES,
    Token,
    TokenStream,
    comment_density,
    profile_for_path,
    tokenize,
)

__all__ = [
    "CoverageSummary",
    "DuplicationReport",
    "HalsteadMetrics",
    "LANGUAGE_PROFILES",
    "QualityReport",
    "Scored",
    "TestRunSummary",
    "Token",
    "TokenStream",
    "comment_density",
    "compute_pqs",
    "count_syllables",
    "cyclomatic_complexity",
    "detect_duplication",
    "flesch_reading_ease",
    "function_complexities",
    "halstead",
    "load_coverage",
    "load_lint_density",
    "load_test_results",
    "load_usability",
    "parse_lcov",
    "profile_for_path",
    "score_code_quality",
    "score_documentation",
    "score_functionality",
    "score_testing",
    "tokenize",
]
