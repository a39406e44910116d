"""Copy-paste detection via k-gram fingerprinting with winnowing.

Sources are normalized first (comments stripped, whitespace discarded
by tokenization), hashed as overlapping k-grams, and thinned by the
winnowing window rule: keep the minimum hash of each window of ``w``
consecutive k-gram hashes, taking the rightmost position on ties.
Any substring of at least ``w + k - 1`` normalized tokens shared by
two files is then guaranteed to leave at least one shared fingerprint.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from repograde.errors import ValidationError
from repograde.quality.tokens import get_profile, profile_for_path, tokenize

DEFAULT_K = 5
DEFAULT_WINDOW = 4


@dataclass(frozen=True)
class DuplicationReport:
    """Pairwise shared-fingerprint counts and the corpus-wide ratio."""

    pairs: tuple[tuple[str, str, int], ...]
    duplication_ratio: float
    fingerprint_total: int = 0

    def to_dict(self) -> dict:
        return {
            "pairs": [list(p) for p in self.pairs],
            "duplication_ratio": self.duplication_ratio,
            "fingerprint_total": self.fingerprint_total,
        }


def normalized_tokens(text: str, path: str = "file.py") -> list[str]:
    """Token texts after dropping comments and whitespace."""
    profile = profile_for_path(path) or get_profile("text")
    return [t.text for t in tokenize(text, profile).without_noise()]


def hash_kgram(gram: Sequence[str]) -> int:
    """Deterministic 64-bit hash of a token k-gram (stable across runs)."""
    joined = "\x00".join(gram).encode("utf-8")
    return int.from_bytes(
        hashlib.blake2b(joined, digest_size=8).digest(), "big")


def kgram_hashes(tokens: Sequence[str], k: int) -> list[int]:
    return [hash_kgram(tokens[i:i + k]) for i in range(len(tokens) - k + 1)]


def winnow(hashes: Sequence[int], w: int) -> set[int]:
    """Select fingerprints: per window of w hashes, the rightmost minimum.

    Fewer than w hashes still yield one fingerprint (the global
    rightmost minimum) so short files are not invisible.
    """
    n = len(hashes)
    if n == 0:
        return set()
    if n < w:
        best = 0
        for i in range(1, n):
            if hashes[i] <= hashes[best]:
                best = i
        return {hashes[best]}
    selected: set[int] = set()
    prev_idx = -1
    for start in range(n - w + 1):
        best = start
        for i in range(start + 1, start + w):
            if hashes[i] <= hashes[best]:
                best = i
        if best != prev_idx:
            selected.add(hashes[best])
            prev_idx = best
    return selected


def fingerprint_file(text: str, path: str, k: int, w: int) -> set[int]:
    return winnow(kgram_hashes(normalized_tokens(text, path), k), w)


def detect_duplication(files: dict[str, str],
                       k: int = DEFAULT_K,
                       w: int = DEFAULT_WINDOW) -> DuplicationReport:
    """Fingerprint a corpus and report cross-file duplication.

    The duplication ratio is the fraction of distinct fingerprints
    that appear in two or more files; an empty corpus scores 0.

    Raises:
        ValidationError: k < 2 or w < 1.
    """
    if k < 2:
        raise ValidationError(f"k-gram size must be >= 2, got {k}")
    if w < 1:
        raise ValidationError(f"window size must be >= 1, got {w}")

    prints = {path: fingerprint_file(files[path], path, k, w)
              for path in sorted(files)}

    universe: set[int] = set()
    seen_twice: set[int] = set()
    for fps in prints.values():
        seen_twice |= universe & fps
        universe |= fps

    pairs = []
    for path_a, path_b in combinations(sorted(prints), 2):
        shared = len(prints[path_a] & prints[path_b])
        if shared:
            pairs.append((path_a, path_b, shared))

    ratio = len(seen_twice) / len(universe) if universe else 0.0
    return DuplicationReport(
        pairs=tuple(pairs),
        duplication_ratio=ratio,
        fingerprint_total=len(universe),
    )
