"""Text format for polynomials and systems.

A polynomial is a ';'-terminated sum of terms over identifiers, with '*' for
products, '**' (or '^' on input) for powers and 'i'/'I' as the imaginary
unit.  A system file starts with a header line "N" or "N M" followed by N
polynomials.  The printer always emits the canonical graded-lex descending
term order, so parse(format(p)) is the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .poly import Polynomial, PolySystem, Term

__all__ = [
    "ParseError",
    "parse_polynomial",
    "format_polynomial",
    "parse_system",
    "format_system",
    "read_system_file",
    "write_system_file",
]


class ParseError(ValueError):
    """Syntax error with a 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
      | (?P<name>[A-Za-z][A-Za-z0-9_]*)
      | (?P<power>\*\*|\^)
      | (?P<op>[-+*();])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str, line: int = 1, column: int = 1) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup or "op"
        chunk = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, chunk, line, column))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            column = len(chunk) - chunk.rfind("\n")
        else:
            column += len(chunk)
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent parser for a single ';'-terminated polynomial."""

    def __init__(self, tokens: list[_Token], variables: Sequence[str]):
        self.tokens = tokens
        self.pos = 0
        self.variables = list(variables)
        self.index = {name: k for k, name in enumerate(self.variables)}

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> _Token:
        tok = self._peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else _Token("op", "", 1, 1)
            raise ParseError("unexpected end of input (missing ';'?)", last.line, last.column)
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        terms = [self._signed_term()]
        while True:
            tok = self._peek()
            if tok is None:
                where = self.tokens[-1] if self.tokens else _Token("op", "", 1, 1)
                raise ParseError("missing ';' terminator", where.line, where.column)
            if tok.text == ";":
                self._take()
                break
            if tok.text in "+-":
                self._take()
                coef, exps = self._signed_term()
                if tok.text == "-":
                    coef = -coef
                terms.append((coef, exps))
            else:
                raise ParseError(f"expected '+', '-' or ';', got {tok.text!r}", tok.line, tok.column)
        extra = self._peek()
        if extra is not None:
            raise ParseError(f"unexpected input after ';': {extra.text!r}", extra.line, extra.column)
        return Polynomial(
            tuple(self.variables),
            tuple(Term(c, tuple(e)) for c, e in terms),
        )

    def _signed_term(self) -> tuple[complex, list[int]]:
        sign = 1.0
        tok = self._peek()
        while tok is not None and tok.text in "+-":
            self._take()
            if tok.text == "-":
                sign = -sign
            tok = self._peek()
        coef, exps = self._term()
        return sign * coef, exps

    def _term(self) -> tuple[complex, list[int]]:
        coef, exps = self._factor()
        while True:
            tok = self._peek()
            if tok is not None and tok.text == "*":
                self._take()
                c2, e2 = self._factor()
                coef *= c2
                exps = [a + b for a, b in zip(exps, e2)]
            else:
                return coef, exps

    def _factor(self) -> tuple[complex, list[int]]:
        tok = self._take()
        exps = [0] * len(self.variables)
        if tok.kind == "number":
            return complex(float(tok.text)), exps
        if tok.kind == "name":
            if tok.text in ("i", "I"):
                return 1j, exps
            if tok.text not in self.index:
                raise ParseError(f"unknown variable {tok.text!r}", tok.line, tok.column)
            exps[self.index[tok.text]] = self._exponent()
            return 1 + 0j, exps
        if tok.text == "(":
            coef, exps = self._signed_term()
            closing = self._take()
            if closing.text != ")":
                raise ParseError(f"expected ')', got {closing.text!r}", closing.line, closing.column)
            return coef, exps
        raise ParseError(f"expected a term, got {tok.text!r}", tok.line, tok.column)

    def _exponent(self) -> int:
        tok = self._peek()
        if tok is None or tok.kind != "power":
            return 1
        self._take()
        num = self._take()
        if num.kind != "number" or not re.fullmatch(r"\d+", num.text) or int(num.text) < 1:
            raise ParseError(f"exponent must be a positive integer, got {num.text!r}", num.line, num.column)
        return int(num.text)


def _collect_variables(tokens: list[_Token]) -> list[str]:
    seen: list[str] = []
    for tok in tokens:
        if tok.kind == "name" and tok.text not in ("i", "I") and tok.text not in seen:
            seen.append(tok.text)
    return seen


def parse_polynomial(
    text: str,
    variables: Sequence[str] | None = None,
    _line: int = 1,
    _column: int = 1,
) -> Polynomial:
    """Parse one ';'-terminated polynomial.

    When ``variables`` is omitted the variable list is collected in order of
    first appearance; 'i' and 'I' always denote the imaginary unit.
    """
    tokens = _tokenize(text, _line, _column)
    if variables is None:
        variables = _collect_variables(tokens)
    return _Parser(tokens, variables).parse()


def _format_float(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _format_monomial(variables: Sequence[str], exponents: Sequence[int]) -> str:
    parts = []
    for name, e in zip(variables, exponents):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}**{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text for p: graded-lex descending, '**' powers, ';' terminated."""
    if not p.terms:
        return "0;"
    addends: list[tuple[float, bool, str]] = []
    for term in p.terms:
        mono = _format_monomial(p.variables, term.exponents)
        if term.coefficient.real != 0.0:
            addends.append((term.coefficient.real, False, mono))
        if term.coefficient.imag != 0.0:
            addends.append((term.coefficient.imag, True, mono))
    out = []
    for k, (value, imag, mono) in enumerate(addends):
        magnitude = _format_float(abs(value))
        parts = []
        if magnitude != "1" or (not imag and not mono):
            parts.append(magnitude)
        if imag:
            parts.append("i")
        if mono:
            parts.append(mono)
        body = "*".join(parts)
        if k == 0:
            out.append(("-" if value < 0 else "") + body)
        else:
            out.append((" - " if value < 0 else " + ") + body)
    return "".join(out) + ";"


def parse_system(text: str) -> PolySystem:
    """Parse system-file content: header "N" or "N M", then N polynomials."""
    lines = text.split("\n")
    header_idx = None
    for idx, line in enumerate(lines):
        if line.strip():
            header_idx = idx
            break
    if header_idx is None:
        raise ParseError("empty input", 1, 1)
    header = lines[header_idx].split()
    if not (1 <= len(header) <= 2) or not all(re.fullmatch(r"\d+", h) for h in header):
        raise ParseError('header must be "N" or "N M"', header_idx + 1, 1)
    n_eqs = int(header[0])
    n_vars = int(header[1]) if len(header) == 2 else n_eqs
    if n_eqs < 1 or n_vars < 1:
        raise ParseError("counts must be positive", header_idx + 1, 1)

    body = "\n".join(lines[header_idx + 1 :])
    chunks: list[tuple[str, int, int]] = []
    start = 0
    line, column = header_idx + 2, 1  # position of the next character scanned
    chunk_line, chunk_col = line, column
    for pos, ch in enumerate(body):
        cut = ch == ";"
        if cut:
            chunks.append((body[start : pos + 1], chunk_line, chunk_col))
            start = pos + 1
        if ch == "\n":
            line += 1
            column = 1
        else:
            column += 1
        if cut:
            chunk_line, chunk_col = line, column
    if body[start:].strip():
        raise ParseError("unterminated polynomial (missing ';')", chunk_line, chunk_col)
    if len(chunks) != n_eqs:
        raise ParseError(
            f"expected {n_eqs} polynomials, found {len(chunks)}", header_idx + 1, 1
        )

    all_tokens = [_tokenize(c, ln, col) for c, ln, col in chunks]
    variables: list[str] = []
    for tokens in all_tokens:
        for name in _collect_variables(tokens):
            if name not in variables:
                variables.append(name)
    if len(variables) != n_vars:
        raise ParseError(
            f"header declares {n_vars} variables, found {len(variables)} "
            f"({', '.join(variables) or 'none'})",
            header_idx + 1,
            1,
        )
    polys = tuple(_Parser(tokens, variables).parse() for tokens in all_tokens)
    return PolySystem(tuple(variables), polys)


def format_system(s: PolySystem) -> str:
    header = (
        str(s.n_equations)
        if s.n_equations == s.n_variables
        else f"{s.n_equations} {s.n_variables}"
    )
    body = "\n".join(" " + format_polynomial(p) for p in s.polys)
    return f"{header}\n{body}\n"


def read_system_file(path) -> PolySystem:
    return parse_system(Path(path).read_text(encoding="utf-8"))


def write_system_file(s: PolySystem, path) -> None:
    Path(path).write_text(format_system(s), encoding="utf-8")
