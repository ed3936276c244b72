"""Lexical scanning of source files into per-component token streams.

Splits raw text into the lexical tokens a programmer actually chose:
identifiers, keywords, operators/punctuators, and literals. Comments and
whitespace are layout, not choices, and are discarded. Three rule sets are
supported: ``c-like`` (C-family syntax), ``java-like`` (same scanner with
the Java keyword set) and ``plain`` (whitespace-delimited words with
punctuation split off, for arbitrary corpora).

Components are either whole files or top-level function bodies found by
balanced-brace matching after an identifier-parenthesis header.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

C_LIKE = "c-like"
JAVA_LIKE = "java-like"
PLAIN = "plain"
LANGUAGES = (C_LIKE, JAVA_LIKE, PLAIN)

FILE_GRANULARITY = "file"
FUNCTION_GRANULARITY = "function"
GRANULARITIES = (FILE_GRANULARITY, FUNCTION_GRANULARITY)

IDENTIFIER = "identifier"
KEYWORD = "keyword"
OPERATOR = "operator-or-punctuator"
NUMERIC = "numeric-literal"
STRING = "string-literal"
CHAR = "char-literal"


class LexError(Exception):
    """Malformed lexical input (unterminated literal or block comment).

    Carries the 1-based line number where the offending construct starts.
    """

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Token:
    """One lexical token: its exact spelling and a coarse kind."""

    spelling: str
    kind: str


@dataclass
class Component:
    """A measurement unit: a file or a function, with its tokens in source order."""

    id: str
    tokens: list[Token] = field(default_factory=list)


_C_KEYWORDS = frozenset(
    """
    auto break case char const continue default do double else enum extern
    float for goto if inline int long register restrict return short signed
    sizeof static struct switch typedef union unsigned void volatile while
    bool catch class delete false friend namespace new operator private
    protected public template this throw true try typename using virtual
    """.split()
)

_JAVA_KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package
    private protected public return short static strictfp super switch
    synchronized this throw throws transient try void volatile while
    true false null var
    """.split()
)

_KEYWORDS = {C_LIKE: _C_KEYWORDS, JAVA_LIKE: _JAVA_KEYWORDS, PLAIN: frozenset()}

# Longest match first; ">>>" and ">>>=" only occur in java-like input but are
# harmless to accept everywhere.
_MULTI_OPERATORS = (
    ">>>=",
    "<<=", ">>=", ">>>", "...", "->*",
    "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "&=", "^=", "|=", "::", "##",
)

_IDENT_START = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$")
_DIGITS = frozenset("0123456789")
_HEX_DIGITS = frozenset("0123456789abcdefABCDEF")
_NUMERIC_SUFFIXES = frozenset("uUlLfF")


def tokenize(source: str, language: str = C_LIKE) -> list[Token]:
    """Tokenize source text under the given language's lexical rules.

    Comments and whitespace are dropped. String and char literals are one
    token each, quotes included. Multi-character operators are matched
    longest-first.

    Raises:
        LexError: on an unterminated string, char literal, or block comment.
        ValueError: for an unknown language name.
    """
    if language not in LANGUAGES:
        raise ValueError(f"unknown language {language!r}; expected one of {LANGUAGES}")
    if language == PLAIN:
        return _tokenize_plain(source)
    return _Scanner(source, _KEYWORDS[language]).run()


def _tokenize_plain(source: str) -> list[Token]:
    """Whitespace-delimited tokens; punctuation characters split off one by one."""
    tokens: list[Token] = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
        elif ch.isalnum() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            kind = NUMERIC if word[0] in _DIGITS else IDENTIFIER
            tokens.append(Token(word, kind))
            i = j
        else:
            tokens.append(Token(ch, OPERATOR))
            i += 1
    return tokens


class _Scanner:
    """Character-level scanner for the c-like/java-like rule set."""

    def __init__(self, source: str, keywords: frozenset[str]) -> None:
        self._src = source
        self._keywords = keywords
        self._pos = 0
        self._line = 1
        self._tokens: list[Token] = []

    def run(self) -> list[Token]:
        while True:
            self._skip_blanks_and_comments()
            if self._pos >= len(self._src):
                return self._tokens
            self._scan_token()

    def _peek(self, offset: int = 0) -> str:
        pos = self._pos + offset
        return self._src[pos] if pos < len(self._src) else ""

    def _advance(self) -> str:
        ch = self._src[self._pos]
        self._pos += 1
        if ch == "\n":
            self._line += 1
        return ch

    def _skip_blanks_and_comments(self) -> None:
        while self._pos < len(self._src):
            ch = self._peek()
            if ch.isspace():
                self._advance()
            elif ch == "/" and self._peek(1) == "/":
                while self._pos < len(self._src) and self._peek() != "\n":
                    self._advance()
            elif ch == "/" and self._peek(1) == "*":
                start_line = self._line
                self._advance()
                self._advance()
                while self._pos < len(self._src):
                    if self._peek() == "*" and self._peek(1) == "/":
                        self._advance()
                        self._advance()
                        break
                    self._advance()
                else:
                    raise LexError("unterminated block comment", start_line)
            else:
                return

    def _scan_token(self) -> None:
        ch = self._peek()
        if ch in _IDENT_START:
            self._scan_word()
        elif ch in _DIGITS or (ch == "." and self._peek(1) in _DIGITS):
            self._scan_number()
        elif ch == '"':
            self._scan_quoted('"', STRING, "string literal")
        elif ch == "'":
            self._scan_quoted("'", CHAR, "char literal")
        else:
            self._scan_operator()

    def _scan_word(self) -> None:
        start = self._pos
        while self._peek() and (self._peek().isalnum() or self._peek() in "_$"):
            self._advance()
        spelling = self._src[start : self._pos]
        kind = KEYWORD if spelling in self._keywords else IDENTIFIER
        self._tokens.append(Token(spelling, kind))

    def _scan_number(self) -> None:
        start = self._pos
        if self._peek() == "0" and self._peek(1) in ("x", "X"):
            self._advance()
            self._advance()
            while self._peek() in _HEX_DIGITS:
                self._advance()
        else:
            while self._peek() in _DIGITS:
                self._advance()
            if self._peek() == "." and (self._peek(1) in _DIGITS or self._src[start] != "."):
                self._advance()
                while self._peek() in _DIGITS:
                    self._advance()
            if self._peek() in ("e", "E") and (
                self._peek(1) in _DIGITS
                or (self._peek(1) in ("+", "-") and self._peek(2) in _DIGITS)
            ):
                self._advance()
                if self._peek() in ("+", "-"):
                    self._advance()
                while self._peek() in _DIGITS:
                    self._advance()
        # trailing type suffixes (1L, 2.5f, 3u, ...)
        while self._peek() in _NUMERIC_SUFFIXES:
            self._advance()
        self._tokens.append(Token(self._src[start : self._pos], NUMERIC))

    def _scan_quoted(self, quote: str, kind: str, what: str) -> None:
        start = self._pos
        start_line = self._line
        self._advance()
        while self._pos < len(self._src):
            ch = self._peek()
            if ch == "\n":
                raise LexError(f"unterminated {what}", start_line)
            if ch == "\\":
                self._advance()
                if self._pos < len(self._src):
                    self._advance()
                continue
            self._advance()
            if ch == quote:
                self._tokens.append(Token(self._src[start : self._pos], kind))
                return
        raise LexError(f"unterminated {what}", start_line)

    def _scan_operator(self) -> None:
        for op in _MULTI_OPERATORS:
            if self._src.startswith(op, self._pos):
                for _ in op:
                    self._advance()
                self._tokens.append(Token(op, OPERATOR))
                return
        self._tokens.append(Token(self._advance(), OPERATOR))


def split_components(
    source: str,
    path: str,
    language: str = C_LIKE,
    granularity: str = FILE_GRANULARITY,
) -> tuple[list[Component], list[str]]:
    """Split one file's token stream into components.

    With ``file`` granularity the whole file is one component (none for an
    empty token stream). With ``function`` granularity, each top-level
    function body becomes a component named ``path::name``; everything else
    lands in a residual component named after the file. Unbalanced braces
    make the file fall back to file granularity with a warning.

    Returns (components, warnings).
    """
    if granularity not in GRANULARITIES:
        raise ValueError(
            f"unknown granularity {granularity!r}; expected one of {GRANULARITIES}"
        )
    tokens = tokenize(source, language)
    if not tokens:
        return [], []
    if granularity == FILE_GRANULARITY or language == PLAIN:
        return [Component(path, tokens)], []

    segments, balanced = _top_level_segments(tokens)
    if not balanced:
        return [Component(path, tokens)], [
            f"{path}: unbalanced braces, falling back to file granularity"
        ]

    components: list[Component] = []
    residual: list[Token] = []
    name_counts: dict[str, int] = {}
    for segment in segments:
        name = _function_name(segment)
        if name is None:
            residual.extend(segment)
            continue
        name_counts[name] = name_counts.get(name, 0) + 1
        suffix = "" if name_counts[name] == 1 else f"#{name_counts[name]}"
        components.append(Component(f"{path}::{name}{suffix}", list(segment)))
    if residual:
        components.append(Component(path, residual))
    return components, []


def _top_level_segments(tokens: list[Token]) -> tuple[list[list[Token]], bool]:
    """Cut the stream at depth-0 ';' and '}' boundaries.

    Returns (segments, braces_balanced).
    """
    segments: list[list[Token]] = []
    current: list[Token] = []
    depth = 0
    for tok in tokens:
        current.append(tok)
        if tok.kind == OPERATOR:
            if tok.spelling == "{":
                depth += 1
            elif tok.spelling == "}":
                depth -= 1
                if depth < 0:
                    return [], False
                if depth == 0:
                    segments.append(current)
                    current = []
            elif tok.spelling == ";" and depth == 0:
                segments.append(current)
                current = []
    if current:
        segments.append(current)
    return segments, depth == 0


def _function_name(segment: list[Token]) -> str | None:
    """Name of the function a segment defines, or None.

    A segment is a function definition when it ends in '}' and the last ')'
    before its first '{' closes a parenthesis group opened right after an
    identifier (the function name). This accepts headers with modifiers
    between ')' and '{' (e.g. const or throws clauses) and rejects struct,
    enum and initializer braces.
    """
    if not segment or segment[-1].spelling != "}":
        return None
    brace_idx = next(
        (i for i, t in enumerate(segment) if t.kind == OPERATOR and t.spelling == "{"),
        None,
    )
    if brace_idx is None:
        return None
    close_idx = None
    for i in range(brace_idx - 1, -1, -1):
        if segment[i].kind == OPERATOR and segment[i].spelling == ")":
            close_idx = i
            break
    if close_idx is None:
        return None
    depth = 0
    open_idx = None
    for i in range(close_idx, -1, -1):
        tok = segment[i]
        if tok.kind == OPERATOR and tok.spelling == ")":
            depth += 1
        elif tok.kind == OPERATOR and tok.spelling == "(":
            depth -= 1
            if depth == 0:
                open_idx = i
                break
    if open_idx is None or open_idx == 0:
        return None
    name_tok = segment[open_idx - 1]
    if name_tok.kind != IDENTIFIER:
        return None
    return name_tok.spelling


DEFAULT_EXTENSIONS: dict[str, tuple[str, ...]] = {
    C_LIKE: (".c", ".h", ".cc", ".cpp", ".cxx", ".hpp", ".hh", ".hxx"),
    JAVA_LIKE: (".java",),
    PLAIN: (".txt",),
}


def default_extension_map(language: str) -> dict[str, str]:
    """Extension -> language map for a single-language scan."""
    return {ext: language for ext in DEFAULT_EXTENSIONS[language]}


def scan_tree(
    root: str | os.PathLike,
    extension_map: dict[str, str],
    granularity: str = FILE_GRANULARITY,
) -> tuple[list[Component], list[str]]:
    """Scan a directory tree and return all components, sorted by id.

    ``extension_map`` maps file extensions (with leading dot) to language
    names; files with other extensions are ignored. Files that fail to
    decode or to lex are skipped with a warning rather than aborting the
    scan. Per-file work is independent, so results do not depend on the
    traversal order; the merged list is sorted by component id.

    Returns (components, warnings).
    """
    root = Path(root)
    if not root.is_dir():
        raise NotADirectoryError(f"not a readable directory: {root}")
    components: list[Component] = []
    warnings: list[str] = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for filename in sorted(filenames):
            ext = os.path.splitext(filename)[1].lower()
            language = extension_map.get(ext)
            if language is None:
                continue
            full = Path(dirpath) / filename
            rel = full.relative_to(root).as_posix()
            try:
                source = full.read_text(encoding="utf-8")
            except (UnicodeDecodeError, OSError) as exc:
                warnings.append(f"{rel}: unreadable, skipped ({exc})")
                continue
            try:
                file_components, file_warnings = split_components(
                    source, rel, language, granularity
                )
            except LexError as exc:
                warnings.append(f"{rel}: skipped ({exc})")
                continue
            components.extend(file_components)
            warnings.extend(file_warnings)
    components.sort(key=lambda c: c.id)
    return components, warnings


def spellings(tokens: Iterable[Token]) -> list[str]:
    """Spellings of a token sequence, in order."""
    return [t.spelling for t in tokens]
