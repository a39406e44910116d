"""Token-based complexity metrics: cyclomatic complexity and Halstead.

Complexity counting is decision-point based: one plus the number of
branch tokens found outside comments and strings, per the profile's
branch-token set.  This trades parser fidelity for language coverage,
which is the right trade for heterogeneous student projects.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from repograde.errors import ValidationError
from repograde.quality.tokens import (LanguageProfile, TokenStream,
                                      get_profile, tokenize)


@dataclass(frozen=True)
class HalsteadMetrics:
    """Operator/operand counts and the derived Halstead quantities.

    vocabulary n = n1 + n2, length N = N1 + N2, volume V = N * log2(n),
    difficulty D = (n1 / 2) * (N2 / n2), effort E = D * V.  A stream
    with no operands (n2 = 0) leaves D undefined; it is reported as 0
    with ``degenerate`` set.
    """

    n1: int
    n2: int
    N1: int
    N2: int
    degenerate: bool = False

    @property
    def vocabulary(self) -> int:
        return self.n1 + self.n2

    @property
    def length(self) -> int:
        return self.N1 + self.N2

    @property
    def volume(self) -> float:
        if self.vocabulary == 0:
            return 0.0
        return self.length * math.log2(self.vocabulary)

    @property
    def difficulty(self) -> float:
        if self.n2 == 0:
            return 0.0
        return (self.n1 / 2.0) * (self.N2 / self.n2)

    @property
    def effort(self) -> float:
        return self.difficulty * self.volume

    def to_dict(self) -> dict:
        return {
            "n1": self.n1, "n2": self.n2, "N1": self.N1, "N2": self.N2,
            "vocabulary": self.vocabulary, "length": self.length,
            "volume": self.volume, "difficulty": self.difficulty,
            "effort": self.effort, "degenerate": self.degenerate,
        }


def cyclomatic_complexity(source: str,
                          profile: str | LanguageProfile) -> int:
    """Count independent paths through one source unit.

    Returns 1 plus the number of branch tokens (profile-defined:
    if/elif/for/while/case/catch/&&/||/... ) outside comments and
    string literals.

    Raises:
        ValidationError: unknown profile name (message lists the
            known profiles).
    """
    if isinstance(profile, str):
        profile = get_profile(profile)
    stream = tokenize(source, profile)
    branches = sum(1 for t in stream.without_noise()
                   if t.text in profile.branch_tokens)
    return 1 + branches


def function_complexities(source: str,
                          profile: str | LanguageProfile) -> list[int]:
    """Per-function complexities when the profile defines delimiters.

    The source is split at each function-definition start; the leading
    segment before the first function is ignored unless it is the only
    segment.  Profiles without a function pattern (or sources with no
    match) yield a single per-file value.
    """
    if isinstance(profile, str):
        profile = get_profile(profile)
    if not profile.function_pattern:
        return [cyclomatic_complexity(source, profile)]
    starts = [m.start() for m in
              re.finditer(profile.function_pattern, source, re.MULTILINE)]
    if not starts:
        return [cyclomatic_complexity(source, profile)]
    bounds = starts + [len(source)]
    return [cyclomatic_complexity(source[a:b], profile)
            for a, b in zip(bounds, bounds[1:])]


def halstead(tokens: TokenStream) -> HalsteadMetrics:
    """Compute Halstead metrics from a token stream.

    Operators are tokens of kind operator or keyword; operands are
    kind operand; comments and whitespace are discarded first.

    Raises:
        ValidationError: the stream is empty after discarding
            comment/whitespace tokens.
    """
    operators: list[str] = []
    operands: list[str] = []
    for token in tokens.without_noise():
        if token.kind == "operand":
            operands.append(token.text)
        else:
            operators.append(token.text)
    if not operators and not operands:
        raise ValidationError(
            "token stream is empty after discarding comments/whitespace")
    return HalsteadMetrics(
        n1=len(set(operators)),
        n2=len(set(operands)),
        N1=len(operators),
        N2=len(operands),
        degenerate=len(operands) == 0,
    )
