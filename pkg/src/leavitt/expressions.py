"""Algebra expressions as text.

The grammar resolves identifiers against a loaded graph: a vertex name
is its idempotent, an edge class name is the edge with index 0, and
`e[2]` picks a representative of a multi-edge or omega class.  A postfix
`*` takes the ghost (and distributes over whole parenthesized sums), a
`.` or plain juxtaposition multiplies, `+` and `-` combine terms, and
number literals (integers or `a/b` fractions) scale.  Precedence: ghost,
then product, then sum.

The printer emits the canonical form used across the package: terms in
basis order, real edges first, ghosts starred and reversed, as in
`v + e f* + f e*`.  Parsing the printed form reproduces the element.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .errors import ExprSyntaxError, UnknownSymbol
from .fields import Field, QQ
from .graph import Edge, Graph, is_omega
from .algebra import (
    LpaElement,
    edge_element,
    ghost_element,
    identity_element,
    vertex_element,
    zero_element,
)


class _Token(NamedTuple):
    kind: str  # ident | number | sym
    text: str
    pos: int


_SYMBOLS = "+-.()*[]"


def _tokenize(src: str):
    out = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            out.append(_Token("sym", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and src[j].isdigit():
                j += 1
            # a/b stays one literal so quotients never mix with products
            if j < n and src[j] == "/" and j + 1 < n and src[j + 1].isdigit():
                j += 2
                while j < n and src[j].isdigit():
                    j += 1
            out.append(_Token("number", src[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            while j < n and src[j] == "'":
                j += 1
            out.append(_Token("ident", src[i:j], i))
            i = j
            continue
        raise ExprSyntaxError("unexpected character %r at position %d" % (ch, i))
    return out


class _Parser:
    def __init__(self, tokens, g: Graph, field: Field):
        self.tokens = tokens
        self.i = 0
        self.g = g
        self.field = field

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> _Token:
        t = self.peek()
        if t is None:
            raise ExprSyntaxError("unexpected end of expression")
        self.i += 1
        return t

    def expect(self, text: str) -> _Token:
        t = self.take()
        if t.kind != "sym" or t.text != text:
            raise ExprSyntaxError(
                "expected %r at position %d, found %r" % (text, t.pos, t.text)
            )
        return t

    # expr := term (('+'|'-') term)*
    def expr(self) -> LpaElement:
        out = self.term()
        while True:
            t = self.peek()
            if t is None or t.kind != "sym" or t.text not in "+-":
                return out
            self.take()
            rhs = self.term()
            out = out + rhs if t.text == "+" else out - rhs

    # term := '-'? factor factor*   with '.' as an explicit product dot
    def term(self) -> LpaElement:
        negate = False
        t = self.peek()
        if t is not None and t.kind == "sym" and t.text == "-":
            self.take()
            negate = True
        out = self.factor()
        while True:
            t = self.peek()
            if t is not None and t.kind == "sym" and t.text == ".":
                self.take()
                out = out * self.factor()
                continue
            if t is not None and (
                t.kind in ("ident", "number") or (t.kind == "sym" and t.text == "(")
            ):
                out = out * self.factor()
                continue
            return -out if negate else out

    # factor := primary '*'*
    def factor(self) -> LpaElement:
        out = self.primary()
        while True:
            t = self.peek()
            if t is not None and t.kind == "sym" and t.text == "*":
                self.take()
                out = out.star()
            else:
                return out

    def primary(self) -> LpaElement:
        t = self.take()
        if t.kind == "sym" and t.text == "(":
            out = self.expr()
            self.expect(")")
            return out
        if t.kind == "number":
            return identity_element(self.g, self.field).scale(self._scalar(t))
        if t.kind == "ident":
            return self._resolve(t)
        raise ExprSyntaxError(
            "unexpected %r at position %d" % (t.text, t.pos)
        )

    def _scalar(self, t: _Token):
        if "/" in t.text:
            a, b = t.text.split("/")
            return self.field.from_int(int(a)) * self.field.invert(
                self.field.from_int(int(b))
            )
        return self.field.from_int(int(t.text))

    def _resolve(self, t: _Token) -> LpaElement:
        name, idx = t.text, None
        nxt = self.peek()
        if nxt is not None and nxt.kind == "sym" and nxt.text == "[":
            self.take()
            num = self.take()
            if num.kind != "number" or "/" in num.text:
                raise ExprSyntaxError(
                    "expected an index at position %d" % num.pos
                )
            idx = int(num.text)
            self.expect("]")
        if name in self.g.vertices:
            if idx is not None:
                raise ExprSyntaxError(
                    "vertex %r takes no index (position %d)" % (name, t.pos)
                )
            return vertex_element(self.g, name, self.field)
        if self.g.has_edge_class(name):
            ec = self.g.edge_class(name)
            i = idx if idx is not None else 0
            if not is_omega(ec.multiplicity) and i >= ec.multiplicity:
                raise UnknownSymbol(
                    "edge class %r has no representative %d" % (name, i)
                )
            return edge_element(self.g, Edge(name, i), self.field)
        raise UnknownSymbol("unknown symbol %r at position %d" % (name, t.pos))


def parse_expression(src: str, g: Graph, field: Field = QQ) -> LpaElement:
    tokens = _tokenize(src)
    if not tokens:
        raise ExprSyntaxError("empty expression")
    parser = _Parser(tokens, g, field)
    out = parser.expr()
    trailing = parser.peek()
    if trailing is not None:
        raise ExprSyntaxError(
            "trailing input at position %d: %r" % (trailing.pos, trailing.text)
        )
    return out


# ------------------------------------------------------------- printing


def format_monomial(g: Graph, m) -> str:
    parts = [g.edge_label(e) for e in m.real.edges]
    parts.extend(g.edge_label(e) + "*" for e in reversed(m.ghost.edges))
    if not parts:
        return m.real.source
    return " ".join(parts)


def format_element(x: LpaElement) -> str:
    terms = x.sorted_terms()
    if not terms:
        return "0"
    field = x.field
    one = field.one()
    pieces = []
    for m, coeff in terms:
        word = format_monomial(x.graph, m)
        fc = field.format(coeff)
        sign = "+"
        if fc.startswith("-"):
            sign = "-"
            fc = fc[1:]
        body = word if coeff == one or fc == "1" else "%s %s" % (fc, word)
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = first_body if first_sign == "+" else "-" + first_body
    for sign, body in pieces[1:]:
        out += " %s %s" % (sign, body)
    return out
