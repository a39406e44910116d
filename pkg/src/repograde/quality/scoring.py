"""Submodule scorers and the weighted project quality score.

All scores live on the 0-100 scale and are clamped there for arbitrary
inputs.  Every scorer returns its evidence alongside the number so the
review dashboard can show where points went.
"""

from __future__ import annotations

from dataclasses import dataclass

from repograde.errors import ConfigError
from repograde.model import PQAM_COMPONENTS, clamp_score
from repograde.quality.adapters import CoverageSummary, TestRunSummary
from repograde.quality.duplication import DuplicationReport
from repograde.quality.metrics import HalsteadMetrics
from repograde.quality.readability import flesch_reading_ease

# Code-quality penalty shape: bounded and monotone in each signal.
#   cq = clamp(100 - min(30, 10*max(0, meanCC - 5))
#                  - 30*dup_ratio - 2*lint_per_kloc, 0, 100)
CC_PENALTY_CAP = 30.0
CC_THRESHOLD = 5.0
CC_PENALTY_PER_POINT = 10.0
DUP_PENALTY_MAX = 30.0
LINT_PENALTY_PER_FINDING = 2.0

# Documentation blend: completeness / readability / comment density.
DOC_WEIGHTS = (0.5, 0.25, 0.25)
# Comment density saturates linearly: full credit at 20% of
# non-whitespace source characters in comments.
COMMENT_DENSITY_SATURATION = 0.2

README_CHECKLIST = {
    "installation": ("install",),
    "usage": ("usage", "how to use", "quick start", "getting started"),
    "architecture": ("architecture", "design overview", "project structure"),
    "contributing": ("contribut",),
    "license": ("license", "licence"),
}


@dataclass(frozen=True)
class Scored:
    """A 0-100 score with the findings that explain it."""

    value: float
    evidence: tuple[str, ...] = ()


@dataclass(frozen=True)
class QualityReport:
    """The five submodule scores and their weighted aggregate."""

    code_quality: float
    testing: float
    documentation: float
    functionality: float
    usability: float
    pqs: float
    evidence: dict[str, list[str]]
    weights: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "code_quality": self.code_quality,
            "testing": self.testing,
            "documentation": self.documentation,
            "functionality": self.functionality,
            "usability": self.usability,
            "pqs": self.pqs,
            "evidence": {k: list(v) for k, v in sorted(self.evidence.items())},
            "weights": dict(sorted(self.weights.items())),
        }


def score_code_quality(complexities: list[int],
                       halstead_metrics: list[HalsteadMetrics],
                       duplication: DuplicationReport,
                       lint_per_kloc: float) -> Scored:
    """Static-analysis score: 100 minus bounded penalty terms."""
    evidence = []
    mean_cc = (sum(complexities) / len(complexities)) if complexities else 1.0
    cc_penalty = min(CC_PENALTY_CAP,
                     CC_PENALTY_PER_POINT * max(0.0, mean_cc - CC_THRESHOLD))
    dup_penalty = DUP_PENALTY_MAX * duplication.duplication_ratio
    lint_penalty = LINT_PENALTY_PER_FINDING * max(0.0, lint_per_kloc)
    evidence.append(f"mean cyclomatic complexity {mean_cc:.2f} "
                    f"(penalty {cc_penalty:.1f})")
    evidence.append(f"duplication ratio {duplication.duplication_ratio:.3f} "
                    f"(penalty {dup_penalty:.1f})")
    evidence.append(f"lint findings per KLOC {lint_per_kloc:.2f} "
                    f"(penalty {lint_penalty:.1f})")
    if halstead_metrics:
        mean_volume = (sum(m.volume for m in halstead_metrics)
                       / len(halstead_metrics))
        evidence.append(f"mean Halstead volume {mean_volume:.1f}")
    value = clamp_score(100.0 - cc_penalty - dup_penalty - lint_penalty)
    return Scored(value=value, evidence=tuple(evidence))


def score_testing(coverage: CoverageSummary) -> Scored:
    """Coverage score: 100 * (0.6 * line rate + 0.4 * branch rate)."""
    if coverage.lines_total == 0 and coverage.branches_total == 0:
        return Scored(value=0.0, evidence=("no coverage data",))
    line_rate = (coverage.lines_hit / coverage.lines_total
                 if coverage.lines_total else 0.0)
    branch_rate = (coverage.branches_hit / coverage.branches_total
                   if coverage.branches_total else 0.0)
    value = clamp_score(100.0 * (0.6 * line_rate + 0.4 * branch_rate))
    evidence = (
        f"line coverage {coverage.lines_hit}/{coverage.lines_total}",
        f"branch coverage {coverage.branches_hit}/{coverage.branches_total}",
    )
    return Scored(value=value, evidence=evidence)


def score_documentation(readme: str, comment_density: float,
                        doc_pages: list[str] | None = None) -> Scored:
    """Documentation score blending completeness, readability, comments.

    Completeness is the fraction of the five checklist topics
    (installation, usage, architecture, contributing, license) whose
    keyword appears in the README or any doc page; readability is the
    Flesch reading ease clamped into [0, 100] and rescaled; comment
    density saturates at ``COMMENT_DENSITY_SATURATION``.
    """
    corpus = " ".join([readme] + list(doc_pages or [])).lower()
    found = []
    for item, needles in README_CHECKLIST.items():
        if any(needle in corpus for needle in needles):
            found.append(item)
    completeness = len(found) / len(README_CHECKLIST)

    flesch = flesch_reading_ease(readme)
    readability = max(0.0, min(100.0, flesch)) / 100.0

    density_component = min(1.0, max(0.0, comment_density)
                            / COMMENT_DENSITY_SATURATION)

    w_complete, w_read, w_density = DOC_WEIGHTS
    value = clamp_score(100.0 * (w_complete * completeness
                                 + w_read * readability
                                 + w_density * density_component))
    evidence = (
        "checklist items found: " + (", ".join(found) if found else "none"),
        f"flesch reading ease {flesch:.1f}",
        f"comment density {comment_density:.3f}",
    )
    return Scored(value=value, evidence=evidence)


def score_functionality(run: TestRunSummary) -> Scored:
    """Test-outcome score: 100 * passed / total (0 without evidence)."""
    if run.tests_total == 0:
        return Scored(value=0.0, evidence=("no test results",))
    value = clamp_score(100.0 * run.tests_passed / run.tests_total)
    return Scored(value=value,
                  evidence=(f"tests passed {run.tests_passed}"
                            f"/{run.tests_total}",))


def compute_pqs(code_quality: Scored, testing: Scored,
                documentation: Scored, functionality: Scored,
                usability: Scored | None,
                weights: dict[str, float]) -> QualityReport:
    """Aggregate the submodule scores into the project quality score.

    When no usability score was supplied its weight is redistributed
    proportionally over the other four submodules (noted in evidence).
    """
    if set(weights) != set(PQAM_COMPONENTS):
        raise ConfigError(f"pqam weights must cover {PQAM_COMPONENTS}")

    scored = {
        "code_quality": code_quality,
        "testing": testing,
        "documentation": documentation,
        "functionality": functionality,
    }
    effective = dict(weights)
    usability_evidence: tuple[str, ...]
    if usability is None:
        effective.pop("usability")
        remaining = sum(effective.values())
        if remaining > 0:
            effective = {k: w / remaining for k, w in effective.items()}
        else:
            effective = {k: 0.25 for k in scored}
        effective["usability"] = 0.0
        usability_value = 0.0
        usability_evidence = (
            "usability score absent; weight redistributed over the "
            "remaining submodules",)
    else:
        scored["usability"] = usability
        usability_value = clamp_score(usability.value)
        usability_evidence = usability.evidence

    pqs = sum(effective[name] * clamp_score(s.value)
              for name, s in scored.items())
    evidence = {name: list(s.evidence) for name, s in scored.items()}
    if usability is None:
        evidence["usability"] = list(usability_evidence)
    return QualityReport(
        code_quality=clamp_score(code_quality.value),
        testing=clamp_score(testing.value),
        documentation=clamp_score(documentation.value),
        functionality=clamp_score(functionality.value),
        usability=usability_value,
        pqs=clamp_score(pqs),
        evidence=evidence,
        weights=effective if usability is None else dict(weights),
    )


def report_from_dict(data: dict) -> QualityReport:
    """Inverse of :meth:`QualityReport.to_dict`."""
    return QualityReport(
        code_quality=data["code_quality"],
        testing=data["testing"],
        documentation=data["documentation"],
        functionality=data["functionality"],
        usability=data["usability"],
        pqs=data["pqs"],
        evidence={k: list(v) for k, v in data["evidence"].items()},
        weights=dict(data["weights"]),
    )
