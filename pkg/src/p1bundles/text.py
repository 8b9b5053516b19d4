"""The text grammar for scalars, Laurent entries, matrices, bundle files
and factorization certificates.

    file   := header? matrix
    header := "rank:" INT NEWLINE
    matrix := row (";" row)*
    row    := entry ("," entry)*
    entry  := term ("+" term)*
    term   := coeff ("*" monomial)? | monomial
    monomial := "z^" SINT
    coeff  := rat | "(" rat "," rat ")"
    rat    := SINT ("/" UINT)?

Whitespace and line breaks are insignificant outside tokens (the header
newline excepted).  Example entry: ``(0,1)*z^-2 + 3/4 + z^5``.  The
pretty-printers below emit exactly this grammar, so print -> parse is the
identity.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .bundle import VectorBundle
from .errors import ParseError
from .exact import GaussianRational
from .laurent import LaurentPoly
from .lmatrix import LaurentMatrix

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<zpow>z\^[+-]?\d+)
  | (?P<rat>[+-]?\d+(?:/\d+)?)
  | (?P<punct>[(),;+*])
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "value", "line", "column")

    def __init__(self, kind, value, line, column):
        self.kind = kind
        self.value = value
        self.line = line
        self.column = column


def _tokenize(text: str):
    tokens = []
    pos = 0
    line = 1
    col = 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            tokens.append(_Token(kind if kind != "punct" else value, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, end_line, end_col):
        self.tokens = tokens
        self.pos = 0
        self.end = (end_line, end_col)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is not None:
            self.pos += 1
        return tok

    def fail(self, message, tok=None):
        if tok is None:
            tok = self.peek()
        if tok is None:
            raise ParseError(message + " at end of input", *self.end)
        raise ParseError(message, tok.line, tok.column)

    def expect(self, kind):
        tok = self.next()
        if tok is None or tok.kind != kind:
            self.fail(f"expected {kind!r}", tok)
        return tok

    def rational(self) -> Fraction:
        tok = self.expect("rat")
        if "/" in tok.value:
            num, den = tok.value.split("/")
            if int(den) == 0:
                self.fail("zero denominator", tok)
            return Fraction(int(num), int(den))
        return Fraction(int(tok.value))

    def coeff(self) -> GaussianRational:
        tok = self.peek()
        if tok is not None and tok.kind == "(":
            self.next()
            re_part = self.rational()
            self.expect(",")
            im_part = self.rational()
            self.expect(")")
            return GaussianRational(re_part, im_part)
        return GaussianRational(self.rational())

    def term(self):
        tok = self.peek()
        if tok is None:
            self.fail("expected term")
        if tok.kind == "zpow":
            self.next()
            return GaussianRational(1), int(tok.value[2:])
        c = self.coeff()
        tok = self.peek()
        if tok is not None and tok.kind == "*":
            self.next()
            ztok = self.expect("zpow")
            return c, int(ztok.value[2:])
        return c, 0

    def entry(self) -> LaurentPoly:
        coeffs = {}
        while True:
            c, e = self.term()
            if c:
                prev = coeffs.get(e)
                coeffs[e] = c if prev is None else prev + c
            tok = self.peek()
            if tok is not None and tok.kind == "+":
                self.next()
                continue
            break
        return LaurentPoly(coeffs)

    def row(self):
        entries = [self.entry()]
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == ",":
                self.next()
                entries.append(self.entry())
            else:
                return entries

    def matrix(self) -> LaurentMatrix:
        rows = [self.row()]
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok.kind == ";":
                self.next()
                rows.append(self.row())
            else:
                self.fail("expected ';' between rows")
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ParseError("rows have differing entry counts", *self.end)
        return LaurentMatrix(rows)


def _end_position(text: str):
    line = text.count("\n") + 1
    col = len(text) - text.rfind("\n")
    return line, col


def parse_scalar(text: str) -> GaussianRational:
    """Parse a standalone scalar: `a/b` or `(a/b, c/d)`."""
    parser = _Parser(_tokenize(text), *_end_position(text))
    value = parser.coeff()
    if parser.peek() is not None:
        parser.fail("trailing input after scalar")
    return value


def parse_poly(text: str) -> LaurentPoly:
    """Parse a standalone Laurent-polynomial entry."""
    parser = _Parser(_tokenize(text), *_end_position(text))
    value = parser.entry()
    if parser.peek() is not None:
        parser.fail("trailing input after entry")
    return value


def parse_matrix(text: str) -> LaurentMatrix:
    """Parse a matrix: entries separated by ',', rows by ';'."""
    parser = _Parser(_tokenize(text), *_end_position(text))
    return parser.matrix()


_HEADER_RE = re.compile(r"\A\s*rank\s*:\s*(?P<rank>[+-]?\d+)[^\S\n]*\n")


def parse_bundle(text: str) -> VectorBundle:
    """Parse a bundle document: optional `rank: k` header, then a matrix.

    A declared rank must match the parsed matrix size (ParseError
    otherwise); validity of the transition matrix is then checked, raising
    InvalidBundle for a degenerate determinant.
    """
    declared = None
    body = text
    offset_lines = 0
    m = _HEADER_RE.match(text)
    if m is not None:
        declared = int(m.group("rank"))
        body = text[m.end():]
        offset_lines = text[: m.end()].count("\n")
    tokens = _tokenize(body)
    for tok in tokens:
        tok.line += offset_lines
    end_line, end_col = _end_position(body)
    parser = _Parser(tokens, end_line + offset_lines, end_col)
    matrix = parser.matrix()
    if declared is not None and declared != matrix.rows:
        raise ParseError(
            f"declared rank {declared} does not match matrix size {matrix.rows}"
        )
    return VectorBundle(matrix)


def parse_factorization(text: str):
    """Parse the three labeled blocks `W:`, `U:`, `D:` of a certificate."""
    from .splitter import Factorization

    labels = list(re.finditer(r"([WUD])\s*:", text))
    if [m.group(1) for m in labels] != ["W", "U", "D"]:
        raise ParseError("factorization file must contain blocks W:, U:, D: in order")
    blocks = {}
    for idx, m in enumerate(labels):
        start = m.end()
        stop = labels[idx + 1].start() if idx + 1 < len(labels) else len(text)
        blocks[m.group(1)] = parse_matrix(text[start:stop])
    return Factorization(blocks["W"], blocks["U"], blocks["D"])


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def format_scalar(c: GaussianRational) -> str:
    if c.im == 0:
        return str(c.re)
    return f"({c.re}, {c.im})"


def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for e in p.support:
        c = p.coeff(e)
        if e == 0:
            terms.append(format_scalar(c))
        elif c == GaussianRational(1):
            terms.append(f"z^{e}")
        else:
            terms.append(f"{format_scalar(c)}*z^{e}")
    return " + ".join(terms)


def format_matrix(m: LaurentMatrix, multiline: bool = False) -> str:
    rows = [", ".join(format_poly(e) for e in row) for row in m.entries]
    if multiline:
        return ";\n".join(rows)
    return " ; ".join(rows)


def format_bundle(e: VectorBundle) -> str:
    return f"rank: {e.rank}\n{format_matrix(e.transition, multiline=True)}\n"


def format_factorization(fact) -> str:
    parts = []
    for label, m in (("W", fact.w), ("U", fact.u), ("D", fact.d)):
        parts.append(f"{label}:\n{format_matrix(m, multiline=True)}")
    return "\n".join(parts) + "\n"
