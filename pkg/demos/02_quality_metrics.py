"""Static quality metrics on small inline examples.

Shows the token-based cyclomatic complexity, Halstead metrics,
winnowing-based duplication detection, and the Flesch readability
used by the documentation scorer.
"""

from repograde.quality import (detect_duplication, flesch_reading_ease,
                               halstead, tokenize)
from repograde.quality.metrics import cyclomatic_complexity

BRANCHY = """
def classify(n):
    if n < 0:
        return "negative"
    while n > 100:
        n //= 2
    return "small" if n < 10 else "large"
"""

STRAIGHT = "def double(x):\n    return 2 * x\n"


def main() -> None:
    print("cyclomatic complexity:")
    print(f"  straight-line: {cyclomatic_complexity(STRAIGHT, 'python')}")
    print(f"  branchy:       {cyclomatic_complexity(BRANCHY, 'python')}")

    metrics = halstead(tokenize("a = b + c", "python"))
    print("\nhalstead for 'a = b + c':")
    print(f"  operators n1={metrics.n1} N1={metrics.N1}; "
          f"operands n2={metrics.n2} N2={metrics.N2}")
    print(f"  volume={metrics.volume:.4f} difficulty={metrics.difficulty}")

    copied = "def helper(x):\n    y = x + 1\n    z = y * 2\n    return z\n"
    corpus = {
        "a.py": "HEADER = 1\n" + copied + "FOOTER_A = 2\n",
        "b.py": "OTHER = 9\n" + copied + "FOOTER_B = 3\n",
        "c.py": "def unrelated(q):\n    return q - 7\n",
    }
    report = detect_duplication(corpus)
    print("\nduplication across a three-file corpus:")
    print(f"  ratio: {report.duplication_ratio:.3f}")
    for path_a, path_b, shared in report.pairs:
        print(f"  {path_a} <-> {path_b}: {shared} shared fingerprints")

    text = ("The pipeline reads the repository. It scores quality. "
            "It attributes work to each student.")
    print(f"\nflesch reading ease of the summary: "
          f"{flesch_reading_ease(text):.1f}")


if __name__ == "__main__":
    main()
