"""Adapter-file loaders for externally produced quality evidence.

Style tools, coverage tools, and test runners are not re-implemented;
their results arrive as small files:

* coverage: LCOV text (``LF:``/``LH:``/``BRF:``/``BRH:`` records) or
  normalized JSON ``{lines_total, lines_hit, branches_total,
  branches_hit}``
* lint: JSON ``{"findings": int, "kloc": real}``
* test results: JSON ``{"total": int, "passed": int}``
* usability: JSON ``{"score": 0-100}``
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from repograde.errors import ParseError, ValidationError


@dataclass(frozen=True)
class CoverageSummary:
    lines_total: int = 0
    lines_hit: int = 0
    branches_total: int = 0
    branches_hit: int = 0

    def __post_init__(self) -> None:
        for name in ("lines_total", "lines_hit",
                     "branches_total", "branches_hit"):
            if getattr(self, name) < 0:
                raise ValidationError(f"coverage {name} must be >= 0")
        if self.lines_hit > self.lines_total:
            raise ValidationError("lines_hit exceeds lines_total")
        if self.branches_hit > self.branches_total:
            raise ValidationError("branches_hit exceeds branches_total")


@dataclass(frozen=True)
class TestRunSummary:
    __test__ = False  # not a pytest class despite the name

    tests_total: int = 0
    tests_passed: int = 0

    def __post_init__(self) -> None:
        if self.tests_total < 0 or self.tests_passed < 0:
            raise ValidationError("test counts must be >= 0")
        if self.tests_passed > self.tests_total:
            raise ValidationError("tests_passed exceeds tests_total")


def parse_lcov(text: str, source: str = "<lcov>") -> CoverageSummary:
    """Sum LF/LH/BRF/BRH records across all sections of an LCOV report."""
    totals = {"LF": 0, "LH": 0, "BRF": 0, "BRH": 0}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        key, _, value = line.partition(":")
        if key in totals:
            try:
                totals[key] += int(value)
            except ValueError as exc:
                raise ParseError(f"non-integer {key} record {value!r}",
                                 source=source, line=lineno) from exc
    return CoverageSummary(
        lines_total=totals["LF"], lines_hit=totals["LH"],
        branches_total=totals["BRF"], branches_hit=totals["BRH"])


def _load_json(path: Path) -> dict:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, source=str(path), line=exc.lineno) from exc
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: expected a JSON object")
    return data


def load_coverage(path: str | Path) -> CoverageSummary:
    """Load a coverage adapter file, LCOV or normalized JSON."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        data = _load_json(path)
        try:
            return CoverageSummary(
                lines_total=int(data["lines_total"]),
                lines_hit=int(data["lines_hit"]),
                branches_total=int(data["branches_total"]),
                branches_hit=int(data["branches_hit"]))
        except KeyError as exc:
            raise ValidationError(
                f"{path}: coverage JSON missing key {exc}") from exc
    return parse_lcov(text, source=str(path))


def load_lint_density(path: str | Path) -> float:
    """Findings per KLOC from the lint adapter file."""
    data = _load_json(Path(path))
    try:
        findings = int(data["findings"])
        kloc = float(data["kloc"])
    except KeyError as exc:
        raise ValidationError(f"{path}: lint JSON missing key {exc}") from exc
    if findings < 0 or kloc < 0:
        raise ValidationError(f"{path}: lint values must be >= 0")
    return findings / kloc if kloc > 0 else 0.0


def load_test_results(path: str | Path) -> TestRunSummary:
    data = _load_json(Path(path))
    try:
        return TestRunSummary(tests_total=int(data["total"]),
                              tests_passed=int(data["passed"]))
    except KeyError as exc:
        raise ValidationError(
            f"{path}: test results JSON missing key {exc}") from exc


def load_usability(path: str | Path) -> float:
    data = _load_json(Path(path))
    try:
        score = float(data["score"])
    except KeyError as exc:
        raise ValidationError(
            f"{path}: usability JSON missing key {exc}") from exc
    if not 0.0 <= score <= 100.0:
        raise ValidationError(f"{path}: usability score must be 0-100")
    return score
