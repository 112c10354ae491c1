"""Concrete syntax: tokenizer, parser and printer for rig expressions.

Grammar (whitespace insensitive, ``+`` binds looser than ``*``)::

    expr    := mult ("+" mult)*
    mult    := atom ("*" atom)*
    atom    := nat | var | fn "(" expr ")" | "(" expr ")"
    var     := letter "[" payload "]"

At level 1 a payload is a comma-separated coordinate vector, one natural per
carrier generator.  At level 2 the payload is itself an expression over the
base carrier, normalized on the spot, so ``g(y[x[1]])`` reads the inner
``x[1]`` as a level-1 value.  Variable letters x/y/z and operation letters
f/g/h are interchangeable on input; the carrier argument fixes the meaning.
Naturals other than 0 and 1 are sugar for repeated sums of 1, which keeps
the canonical renderings (like ``5*x[0]``) readable back in.
"""

from __future__ import annotations

from dataclasses import dataclass

from .carrier import Carrier, FreeMonoid, MonoidElem, MonomialBasis, TensorElem
from .normal import (
    GenAtom, app_letter, as_monoid_element, from_monoid_element, normalize,
    render_monomial, render_nf, var_letter,
)
from .terms import App, One, Prod, Sum, Term, Var, Zero, ONE, ZERO, positions


class ParseError(ValueError):
    """Syntax or arity problem in an input expression, with position info."""


_VAR_NAMES = {"x", "y", "z"}
_APP_NAMES = {"f", "g", "h"}


@dataclass(frozen=True)
class _Token:
    kind: str  # "nat" | "name" | "sym" | "end"
    value: object
    line: int
    col: int


def _tokenize(src: str) -> list[_Token]:
    out = []
    line, col, i = 1, 1, 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
        elif ch.isspace():
            col, i = col + 1, i + 1
        elif ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            out.append(_Token("nat", int(src[i:j]), line, col))
            col, i = col + (j - i), j
        elif ch.isalpha():
            j = i
            while j < len(src) and src[j].isalpha():
                j += 1
            out.append(_Token("name", src[i:j], line, col))
            col, i = col + (j - i), j
        elif ch in "+*()[],":
            out.append(_Token("sym", ch, line, col))
            col, i = col + 1, i + 1
        else:
            raise ParseError(f"unexpected character {ch!r} at line {line}, column {col}")
    out.append(_Token("end", None, line, col))
    return out


def _nat_term(n: int) -> Term:
    if n == 0:
        return ZERO
    term: Term = ONE
    for _ in range(n - 1):
        term = Sum(term, ONE)
    return term


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, sym: str) -> _Token:
        tok = self.take()
        if tok.kind != "sym" or tok.value != sym:
            raise ParseError(f"expected {sym!r} at line {tok.line}, column {tok.col}")
        return tok

    def expr(self, carrier: Carrier) -> Term:
        term = self.mult(carrier)
        while self.peek().kind == "sym" and self.peek().value == "+":
            self.take()
            term = Sum(term, self.mult(carrier))
        return term

    def mult(self, carrier: Carrier) -> Term:
        term = self.atom(carrier)
        while self.peek().kind == "sym" and self.peek().value == "*":
            self.take()
            term = Prod(term, self.atom(carrier))
        return term

    def atom(self, carrier: Carrier) -> Term:
        tok = self.take()
        if tok.kind == "nat":
            return _nat_term(tok.value)
        if tok.kind == "name" and tok.value in _VAR_NAMES:
            self.expect("[")
            elem = self.payload(carrier, tok)
            self.expect("]")
            return Var(elem)
        if tok.kind == "name" and tok.value in _APP_NAMES:
            self.expect("(")
            body = self.expr(carrier)
            self.expect(")")
            return App(body)
        if tok.kind == "sym" and tok.value == "(":
            term = self.expr(carrier)
            self.expect(")")
            return term
        raise ParseError(f"expected an expression at line {tok.line}, column {tok.col}")

    def payload(self, carrier: Carrier, at: _Token) -> MonoidElem:
        if isinstance(carrier, MonomialBasis):
            inner = self.expr(carrier.base)
            return as_monoid_element(normalize(inner, carrier.base))
        coords = []
        if not (self.peek().kind == "sym" and self.peek().value == "]"):
            while True:
                tok = self.take()
                if tok.kind != "nat":
                    raise ParseError(
                        f"expected a coordinate at line {tok.line}, column {tok.col}")
                coords.append(tok.value)
                if self.peek().kind == "sym" and self.peek().value == ",":
                    self.take()
                else:
                    break
        if len(coords) != carrier.rank:
            raise ParseError(
                f"variable at line {at.line}, column {at.col} has {len(coords)} "
                f"coordinates but the carrier rank is {carrier.rank}")
        return MonoidElem.from_dict(carrier, dict(enumerate(coords)))


def parse(src: str, carrier: Carrier) -> Term:
    """Parse an expression over the given carrier."""
    parser = _Parser(_tokenize(src))
    term = parser.expr(carrier)
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"trailing input at line {tok.line}, column {tok.col}")
    return term


def _infer_carrier(term: Term) -> Carrier | None:
    for _, sub in positions(term):
        if isinstance(sub, Var):
            return sub.elem.carrier
    return None


# Input-syntax emission.  Display text writes a generator atom by its index
# (``x[0]``), but the grammar reads ``x[...]`` as a coordinate vector, so
# anything meant to be parsed back (payload brackets in particular) must
# spell generator atoms as unit vectors instead.

def _emit_atom(atom, carrier: Carrier) -> str:
    level = carrier.level
    if isinstance(atom, GenAtom):
        if isinstance(carrier, FreeMonoid):
            coords = ",".join("1" if i == atom.index else "0"
                              for i in range(carrier.rank))
            return f"{var_letter(level)}[{coords}]"
        inner = emit_nf(from_monoid_element(
            MonoidElem.generator(carrier, atom.index)))
        return f"{var_letter(level)}[{inner}]"
    return f"{app_letter(level)}({emit_nf(atom.argument)})"


def emit_nf(a) -> str:
    """Render a canonical form as parseable input that normalizes back to it."""
    if a.is_zero():
        return "0"
    pieces = []
    for m, c in a.items:
        mono = "*".join(_emit_atom(x, a.carrier) for x in m.atoms) if m.atoms else "1"
        if not m.atoms:
            pieces.append(str(c))
        elif c == 1:
            pieces.append(mono)
        else:
            pieces.append(f"{c}*{mono}")
    return " + ".join(pieces)


def print_term(term: Term, carrier: Carrier | None = None) -> str:
    """Fully parenthesized rendering; parses back to an equal term."""
    if carrier is None:
        carrier = _infer_carrier(term) or FreeMonoid(0)
    return _print(term, carrier)


def _print(term: Term, carrier: Carrier) -> str:
    if isinstance(term, Zero):
        return "0"
    if isinstance(term, One):
        return "1"
    if isinstance(term, Var):
        level = carrier.level
        if isinstance(carrier, FreeMonoid):
            coords = ",".join(str(term.elem.coeff(i)) for i in range(carrier.rank))
            return f"{var_letter(level)}[{coords}]"
        return f"{var_letter(level)}[{emit_nf(from_monoid_element(term.elem))}]"
    if isinstance(term, Sum):
        return f"({_print(term.left, carrier)} + {_print(term.right, carrier)})"
    if isinstance(term, Prod):
        return f"({_print(term.left, carrier)} * {_print(term.right, carrier)})"
    if isinstance(term, App):
        return f"{app_letter(carrier.level)}({_print(term.body, carrier)})"
    raise TypeError(f"not a term: {term!r}")


def render_tensor(a: TensorElem) -> str:
    """Display text for tensor elements: coefficient-tagged pure tensors."""
    if a.is_zero():
        return "0"
    pieces = []
    for key, c in a.items:
        parts = " ⊗ ".join(
            _render_factor_key(f, k) for f, k in zip(a.factors, key))
        pieces.append(parts if c == 1 else f"{c}*({parts})")
    return " + ".join(pieces)


def _render_factor_key(factor: Carrier, key) -> str:
    if isinstance(factor, FreeMonoid):
        return f"e[{key}]"
    return render_monomial(key, factor.base.level)
