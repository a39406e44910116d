"""Adapters and the five submodule scorers plus PQS aggregation."""

from __future__ import annotations

import json
import random

import pytest

from repograde.errors import ParseError, ValidationError
from repograde.quality.adapters import (CoverageSummary, TestRunSummary,
                                        load_coverage, load_lint_density,
                                        load_test_results, load_usability,
                                        parse_lcov)
from repograde.quality.duplication import DuplicationReport
from repograde.quality.scoring import (Scored, compute_pqs,
                                       score_code_quality,
                                       score_documentation,
                                       score_functionality, score_testing)


# -- adapters -----------------------------------------------------------------

def test_parse_lcov_sums_sections():
    text = ("TN:t\nSF:a.py\nDA:1,1\nLF:10\nLH:8\nBRF:4\nBRH:2\n"
            "end_of_record\nSF:b.py\nLF:20\nLH:10\nBRF:0\nBRH:0\n"
            "end_of_record\n")
    cov = parse_lcov(text)
    assert cov == CoverageSummary(lines_total=30, lines_hit=18,
                                  branches_total=4, branches_hit=2)


def test_parse_lcov_rejects_garbage_counts():
    with pytest.raises(ParseError):
        parse_lcov("LF:ten\n")


def test_load_coverage_json(tmp_path):
    path = tmp_path / "coverage.json"
    path.write_text(json.dumps({"lines_total": 5, "lines_hit": 4,
                                "branches_total": 2, "branches_hit": 1}))
    assert load_coverage(path) == CoverageSummary(5, 4, 2, 1)


def test_coverage_invariant_hit_le_total():
    with pytest.raises(ValidationError):
        CoverageSummary(lines_total=1, lines_hit=2)


def test_lint_and_tests_and_usability(tmp_path):
    lint = tmp_path / "lint.json"
    lint.write_text(json.dumps({"findings": 12, "kloc": 4.0}))
    assert load_lint_density(lint) == 3.0

    tests = tmp_path / "test_results.json"
    tests.write_text(json.dumps({"total": 10, "passed": 7}))
    assert load_test_results(tests) == TestRunSummary(10, 7)

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"total": 10}))
    with pytest.raises(ValidationError):
        load_test_results(bad)

    usability = tmp_path / "usability.json"
    usability.write_text(json.dumps({"score": 80}))
    assert load_usability(usability) == 80.0
    usability.write_text(json.dumps({"score": 140}))
    with pytest.raises(ValidationError):
        load_usability(usability)


# -- testing score ---------------------------------------------------------------

def test_score_testing_full_coverage():
    assert score_testing(CoverageSummary(100, 100, 50, 50)).value == 100.0


def test_score_testing_blend():
    # 0.6 * 50 + 0.4 * 0 per the documented blend.
    result = score_testing(CoverageSummary(100, 50, 0, 0))
    assert abs(result.value - 30.0) < 1e-9


def test_score_testing_no_data():
    result = score_testing(CoverageSummary(0, 0, 0, 0))
    assert result.value == 0.0
    assert "no coverage data" in result.evidence


# -- functionality -----------------------------------------------------------------

def test_score_functionality():
    assert score_functionality(TestRunSummary(10, 10)).value == 100.0
    assert score_functionality(TestRunSummary(10, 7)).value == 70.0
    zero = score_functionality(TestRunSummary(0, 0))
    assert zero.value == 0.0
    assert zero.evidence


# -- documentation -----------------------------------------------------------------

FULL_README = """
# Project

## Installation
pip install it

## Usage
Run it like so.

## Architecture
Modules talk to each other.

## Contributing
Open a pull request.

## License
MIT.
"""


def test_documentation_completeness_full():
    result = score_documentation(FULL_README, 0.0, [])
    assert "installation" in result.evidence[0]
    assert "license" in result.evidence[0]
    # completeness 1.0 contributes its full 0.5 weight
    assert result.value >= 50.0


def test_documentation_empty_is_zero():
    assert score_documentation("", 0.0, []).value == 0.0


def test_documentation_density_saturation():
    sparse = score_documentation("", 0.1, [])
    saturated = score_documentation("", 0.2, [])
    beyond = score_documentation("", 0.9, [])
    assert sparse.value < saturated.value
    assert saturated.value == beyond.value  # saturation at 20%


# -- code quality -----------------------------------------------------------------

def _dup(ratio: float) -> DuplicationReport:
    return DuplicationReport(pairs=(), duplication_ratio=ratio)


def test_code_quality_penalty_free_maximum():
    assert score_code_quality([1, 1, 1], [], _dup(0.0), 0.0).value == 100.0


def test_code_quality_max_duplication_penalty():
    result = score_code_quality([1], [], _dup(1.0), 0.0)
    assert result.value <= 70.0
    assert result.value == 70.0  # only the duplication term applies


def test_code_quality_clamped_at_zero():
    assert score_code_quality([50], [], _dup(1.0), 10_000.0).value == 0.0


def test_code_quality_cc_penalty_bounded():
    # meanCC 9 -> raw penalty 40, bounded at 30.
    assert score_code_quality([9], [], _dup(0.0), 0.0).value == 70.0


# -- PQS ---------------------------------------------------------------------------

EQUAL = {k: 0.2 for k in ("code_quality", "testing", "documentation",
                          "functionality", "usability")}


def _scored(value: float) -> Scored:
    return Scored(value=value)


def test_pqs_weighted_mean_of_equals():
    report = compute_pqs(_scored(80), _scored(80), _scored(80), _scored(80),
                         _scored(80), EQUAL)
    assert abs(report.pqs - 80.0) < 1e-9


def test_pqs_single_term():
    report = compute_pqs(_scored(100), _scored(0), _scored(0), _scored(0),
                         _scored(0), EQUAL)
    assert abs(report.pqs - 20.0) < 1e-9


def test_pqs_usability_absent_reweighted():
    report = compute_pqs(_scored(80), _scored(60), _scored(100), _scored(60),
                         None, EQUAL)
    assert abs(report.pqs - 75.0) < 1e-9
    assert any("redistributed" in line
               for line in report.evidence["usability"])
    assert report.weights["usability"] == 0.0


def test_pqs_invariant_weighted_mean():
    report = compute_pqs(_scored(10), _scored(20), _scored(30), _scored(40),
                         _scored(50), EQUAL)
    total = sum(report.weights[name] * getattr(report, name)
                for name in EQUAL)
    assert abs(report.pqs - total) < 1e-9


def test_pqs_monotone_property():
    rng = random.Random(7)
    for _ in range(300):
        scores = [rng.uniform(0, 100) for _ in range(5)]
        report = compute_pqs(*(_scored(v) for v in scores), EQUAL)
        bumped = list(scores)
        idx = rng.randrange(5)
        bumped[idx] = min(100.0, bumped[idx] + rng.uniform(0, 20))
        report2 = compute_pqs(*(_scored(v) for v in bumped), EQUAL)
        assert report2.pqs >= report.pqs - 1e-9
        assert 0.0 <= report.pqs <= 100.0
