"""Profile-driven lossless tokenizer shared by the static metrics.

The tokenizer is deliberately language-approximate: profiles define
comment syntax, string delimiters, keywords, and the branch-token set,
which is all the downstream metrics need.  Its one hard guarantee is
losslessness: concatenating the token texts reproduces the source
byte-for-byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import PurePosixPath

from repograde.errors import ValidationError

_PY_KEYWORDS = frozenset("""
    False None True and as assert async await break class continue def del
    elif else except finally for from global if import in is lambda match
    case nonlocal not or pass raise return try while with yield
""".split())

_C_KEYWORDS = frozenset("""
    auto break case catch char class const continue default delete do double
    else enum extern final finally float for goto if implements import
    instanceof int interface long namespace new null nullptr private
    protected public return short signed sizeof static struct switch template
    this throw throws try typedef union unsigned using virtual void volatile
    while
""".split())

_JS_KEYWORDS = _C_KEYWORDS | frozenset("""
    async await const debugger export extends function in let of super
    typeof undefined var yield
""".split())

# Longest-first so multi-character operators win over their prefixes.
_MULTI_OPERATORS = (
    "===", "!==", "**=", "//=", ">>>", "<<=", ">>=", "...", "&&=", "||=",
    "??=", "&&", "||", "==", "!=", "<=", ">=", "->", "=>", "+=", "-=",
    "*=", "/=", "%=", "&=", "|=", "^=", "**", "//", "<<", ">>", "++",
    "--", "::", "??", "?.",
)

_WHITESPACE_RE = re.compile(r"\s+")
_WORD_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")
_NUMBER_RE = re.compile(r"\d[\w.]*")


@dataclass(frozen=True)
class LanguageProfile:
    """Lexical description of one language family."""

    name: str
    keywords: frozenset[str]
    branch_tokens: frozenset[str]
    line_comments: tuple[str, ...]
    block_comments: tuple[tuple[str, str], ...]
    string_delimiters: tuple[str, ...]
    function_pattern: str | None = None


LANGUAGE_PROFILES: dict[str, LanguageProfile] = {
    "python": LanguageProfile(
        name="python",
        keywords=_PY_KEYWORDS,
        branch_tokens=frozenset(
            {"if", "elif", "for", "while", "except", "case", "and", "or"}),
        line_comments=("#",),
        block_comments=(),
        string_delimiters=('"""', "'''", '"', "'"),
        function_pattern=r"^[ \t]*(?:async[ \t]+)?def[ \t]+\w+",
    ),
    "javascript": LanguageProfile(
        name="javascript",
        keywords=_JS_KEYWORDS,
        branch_tokens=frozenset(
            {"if", "for", "while", "case", "catch", "&&", "||", "?"}),
        line_comments=("//",),
        block_comments=(("/*", "*/"),),
        string_delimiters=('"', "'", "`"),
        function_pattern=r"^[ \t]*(?:export[ \t]+)?(?:async[ \t]+)?function\b",
    ),
    "c": LanguageProfile(
        name="c",
        keywords=_C_KEYWORDS,
        branch_tokens=frozenset(
            {"if", "for", "while", "case", "catch", "&&", "||", "?"}),
        line_comments=("//",),
        block_comments=(("/*", "*/"),),
        string_delimiters=('"', "'"),
    ),
    "text": LanguageProfile(
        name="text",
        keywords=frozenset(),
        branch_tokens=frozenset(),
        line_comments=(),
        block_comments=(),
        string_delimiters=(),
    ),
}

_EXTENSION_PROFILES = {
    ".py": "python", ".pyi": "python",
    ".js": "javascript", ".jsx": "javascript", ".mjs": "javascript",
    ".ts": "javascript", ".tsx": "javascript",
    ".c": "c", ".h": "c", ".cc": "c", ".cpp": "c", ".hpp": "c",
    ".hh": "c", ".java": "c", ".cs": "c", ".go": "c", ".rs": "c",
    ".kt": "c", ".swift": "c",
}

#: Extensions considered source code for metric and duplication purposes.
SOURCE_EXTENSIONS = frozenset(_EXTENSION_PROFILES)


def get_profile(name: str) -> LanguageProfile:
    """Look up a profile; unknown names list the known ones."""
    try:
        return LANGUAGE_PROFILES[name]
    except KeyError:
        raise ValidationError(
            f"unknown language profile {name!r}; known profiles: "
            f"{sorted(LANGUAGE_PROFILES)}") from None


def profile_for_path(path: str) -> LanguageProfile | None:
    """Profile for a source file path, or None for non-source files."""
    ext = PurePosixPath(path).suffix.lower()
    name = _EXTENSION_PROFILES.get(ext)
    return LANGUAGE_PROFILES[name] if name else None


@dataclass(frozen=True)
class Token:
    kind: str  # operator | operand | keyword | comment | whitespace
    text: str


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[Token, ...]
    language_profile: str

    def without_noise(self) -> tuple[Token, ...]:
        """Tokens with comment and whitespace kinds discarded."""
        return tuple(t for t in self.tokens
                     if t.kind not in ("comment", "whitespace"))


def _match_string(source: str, pos: int, delim: str) -> int:
    """Return the end index (exclusive) of a string literal at pos."""
    i = pos + len(delim)
    while i < len(source):
        if source[i] == "\\":
            i += 2
            continue
        if source.startswith(delim, i):
            return i + len(delim)
        # Single-quoted strings do not cross lines; bail at the newline
        # so a lone quote cannot swallow the rest of the file.
        if len(delim) == 1 and source[i] == "\n":
            return i
        i += 1
    return len(source)


def tokenize(source: str, profile: str | LanguageProfile) -> TokenStream:
    """Split source into (kind, text) tokens; concatenation is lossless."""
    if isinstance(profile, str):
        profile = get_profile(profile)
    tokens: list[Token] = []
    i = 0
    n = len(source)
    while i < n:
        m = _WHITESPACE_RE.match(source, i)
        if m:
            tokens.append(Token("whitespace", m.group()))
            i = m.end()
            continue
        matched = False
        for prefix in profile.line_comments:
            if source.startswith(prefix, i):
                end = source.find("\n", i)
                end = n if end < 0 else end
                tokens.append(Token("comment", source[i:end]))
                i = end
                matched = True
                break
        if matched:
            continue
        for start, stop in profile.block_comments:
            if source.startswith(start, i):
                end = source.find(stop, i + len(start))
                end = n if end < 0 else end + len(stop)
                tokens.append(Token("comment", source[i:end]))
                i = end
                matched = True
                break
        if matched:
            continue
        for delim in profile.string_delimiters:
            if source.startswith(delim, i):
                end = _match_string(source, i, delim)
                tokens.append(Token("operand", source[i:end]))
                i = end
                matched = True
                break
        if matched:
            continue
        m = _WORD_RE.match(source, i)
        if m:
            word = m.group()
            kind = "keyword" if word in profile.keywords else "operand"
            tokens.append(Token(kind, word))
            i = m.end()
            continue
        m = _NUMBER_RE.match(source, i)
        if m:
            tokens.append(Token("operand", m.group()))
            i = m.end()
            continue
        for op in _MULTI_OPERATORS:
            if source.startswith(op, i):
                tokens.append(Token("operator", op))
                i += len(op)
                matched = True
                break
        if matched:
            continue
        tokens.append(Token("operator", source[i]))
        i += 1
    return TokenStream(tokens=tuple(tokens), language_profile=profile.name)


def comment_density(files: dict[str, str]) -> float:
    """Fraction of non-whitespace source characters that sit in comments.

    Only files with a known source-language extension participate;
    an empty corpus has density 0.
    """
    comment_chars = 0
    total_chars = 0
    for path in sorted(files):
        profile = profile_for_path(path)
        if profile is None:
            continue
        for token in tokenize(files[path], profile).tokens:
            if token.kind == "whitespace":
                continue
            total_chars += len(token.text)
            if token.kind == "comment":
                comment_chars += len(token.text)
    return comment_chars / total_chars if total_chars else 0.0
