"""Surface syntax: parsing and canonical printing of operators, elements,
polynomials, rational functions, and points.

The grammar accepts integers, `x`, the shift symbol `S`, `+ - * / ^` and
parentheses.  Multiplication is the noncommutative operator product, so
`S*x` parses to `(x+1)*S`.  Division is only allowed by shift-free
(order-zero) expressions, which keeps `S` out of denominators.  Printing is
canonical: coefficients are coprime with monic denominator, terms ascend in
powers of `S`, and polynomials ascend in powers of the variable, so printed
output reparses to an equal value.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .errors import ParseError
from .fields import AlgebraicPoint, NFElem, Poly, RationalFunction, is_irreducible
from .ore import OreOperator, QuotientElement

# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def _coeff_str(c, compact: bool) -> tuple:
    """Render a constant; returns (text, is_atomic).

    Rationals are atomic: `-3/4*x` reparses to the same value because `^`,
    `*` and `/` bind tighter than addition and unary minus distributes.
    Genuine number-field constants need parentheses.
    """
    if isinstance(c, NFElem):
        if all(v == 0 for v in c.coords[1:]):
            return _coeff_str(c.coords[0], compact)
        text = poly_str(Poly(c.coords), "t", compact=compact)
        return text, False
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator), True
    return f"{c.numerator}/{c.denominator}", True


def poly_str(p: Poly, var: str, compact: bool = False) -> str:
    """Ascending-power canonical form, e.g. ``-2 + 3*x + x^2``."""
    if p.is_zero:
        return "0"
    plus = "+" if compact else " + "
    minus = "-" if compact else " - "
    terms = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        ctext, atomic = _coeff_str(c, compact)
        if k == 0:
            terms.append(ctext if atomic else f"({ctext})" if isinstance(c, NFElem) else ctext)
            continue
        vpart = var if k == 1 else f"{var}^{k}"
        if c == 1:
            terms.append(vpart)
        elif c == -1:
            terms.append(f"-{vpart}")
        elif atomic:
            terms.append(f"{ctext}*{vpart}")
        else:
            terms.append(f"({ctext})*{vpart}")
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += minus + t[1:]
        else:
            out += plus + t
    return out


def _term_count(p: Poly) -> int:
    return sum(1 for c in p.coeffs if c != 0)


def rf_str(f: RationalFunction, var: str, compact: bool = False) -> str:
    """Canonical string of a rational function, parseable by this module."""
    num = poly_str(f.num, var, compact)
    if f.den == Poly.one():
        return num
    den = poly_str(f.den, var, compact)
    if _term_count(f.num) > 1:
        num = f"({num})"
    if _term_count(f.den) > 1:
        den = f"({den})"
    return f"{num}/{den}"


def _rf_is_atomic(f: RationalFunction) -> bool:
    # safe to prefix "*S^k" without parentheses: `*` and `/` are
    # left-associative at one precedence level, so "a/b*S" is (a/b)*S and
    # only a bare multi-term numerator needs wrapping
    if f.den != Poly.one():
        return True
    if _term_count(f.num) != 1:
        return False
    return not isinstance(f.num.leading, NFElem)


def element_str(coords, compact: bool = False) -> str:
    """Print coordinates against the standard basis 1, S, S^2, ..."""
    terms = []
    for k, c in enumerate(coords):
        if c.is_zero:
            continue
        if k == 0:
            terms.append(rf_str(c, "x", compact))
            continue
        spart = "S" if k == 1 else f"S^{k}"
        if c == RationalFunction.one():
            terms.append(spart)
        elif _rf_is_atomic(c):
            terms.append(f"{rf_str(c, 'x', compact)}*{spart}")
        else:
            terms.append(f"({rf_str(c, 'x', compact)})*{spart}")
    if not terms:
        return "0"
    plus = "+" if compact else " + "
    minus = "-" if compact else " - "
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += minus + t[1:]
        else:
            out += plus + t
    return out


def operator_str(op: OreOperator, compact: bool = False) -> str:
    return element_str(op.coeffs, compact)


def point_str(point: AlgebraicPoint) -> str:
    return str(point)


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()=]))")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items = []  # (kind, value, position)
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                bad_at = len(text) - len(stripped)
                raise ParseError("unexpected character", text, bad_at)
            if m.group(1) is not None:
                self.items.append(("int", int(m.group(1)), m.start(1)))
            elif m.group(2) is not None:
                self.items.append(("name", m.group(2), m.start(2)))
            else:
                self.items.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.index = 0

    def peek(self):
        if self.index < len(self.items):
            return self.items[self.index]
        return ("end", None, len(self.text))

    def next(self):
        tok = self.peek()
        self.index += 1
        return tok

    def expect_op(self, symbol: str):
        kind, value, pos = self.next()
        if kind != "op" or value != symbol:
            raise ParseError(f"expected {symbol!r}", self.text, pos)

    def error(self, message: str) -> ParseError:
        _, _, pos = self.peek()
        return ParseError(message, self.text, pos)


# ---------------------------------------------------------------------------
# Operator expression parser
# ---------------------------------------------------------------------------


class _OperatorParser:
    """Recursive descent over OreOperator values; `*` is the skew product."""

    def __init__(self, text: str, allow_shift: bool = True):
        self.tokens = _Tokens(text)
        self.allow_shift = allow_shift

    def parse(self) -> OreOperator:
        value = self._expr()
        kind, _, pos = self.tokens.peek()
        if kind != "end":
            raise ParseError("trailing input", self.tokens.text, pos)
        return value

    def _expr(self) -> OreOperator:
        value = self._term()
        while True:
            kind, sym, _ = self.tokens.peek()
            if kind == "op" and sym in "+-":
                self.tokens.next()
                rhs = self._term()
                value = value + rhs if sym == "+" else value - rhs
            else:
                return value

    def _term(self) -> OreOperator:
        value = self._unary()
        while True:
            kind, sym, pos = self.tokens.peek()
            if kind == "op" and sym == "*":
                self.tokens.next()
                value = value * self._unary()
            elif kind == "op" and sym == "/":
                self.tokens.next()
                divisor = self._unary()
                if divisor.order > 0:
                    raise ParseError(
                        "division by an expression containing S", self.tokens.text, pos
                    )
                if divisor.is_zero:
                    raise ParseError("division by zero", self.tokens.text, pos)
                value = value.scaled_left(divisor.coeffs[0].reciprocal())
            else:
                return value

    def _unary(self) -> OreOperator:
        kind, sym, _ = self.tokens.peek()
        if kind == "op" and sym == "-":
            self.tokens.next()
            return -self._unary()
        if kind == "op" and sym == "+":
            self.tokens.next()
            return self._unary()
        return self._power()

    def _power(self) -> OreOperator:
        base = self._atom()
        while True:
            kind, sym, pos = self.tokens.peek()
            if kind == "op" and sym == "^":
                self.tokens.next()
                kind2, value, pos2 = self.tokens.next()
                if kind2 != "int":
                    raise ParseError("exponent must be a nonnegative integer",
                                     self.tokens.text, pos2)
                base = base ** value
            else:
                return base

    def _atom(self) -> OreOperator:
        kind, value, pos = self.tokens.next()
        if kind == "int":
            return OreOperator.constant(Fraction(value))
        if kind == "op" and value == "(":
            inner = self._expr()
            self.tokens.expect_op(")")
            return inner
        if kind == "name":
            if value == "x":
                return OreOperator.constant(RationalFunction.x())
            if value == "S":
                if not self.allow_shift:
                    raise ParseError("S is not allowed here", self.tokens.text, pos)
                return OreOperator.shift()
            raise ParseError(f"unknown symbol {value!r}", self.tokens.text, pos)
        raise ParseError("expected a value", self.tokens.text, pos)


def parse_operator(text: str) -> OreOperator:
    """Parse an operator expression such as ``(x+2)^2 + x*S^2 + (x+2)*S^3``."""
    return _OperatorParser(text).parse()


def parse_element(text: str, order: int) -> QuotientElement:
    """Parse a shift-free-denominator expression as a residue-class element of
    order < `order`."""
    op = parse_operator(text)
    if op.order >= order:
        raise ParseError(
            f"element has order {op.order} but must have order < {order}; "
            "reduce it modulo the operator first",
            text,
            0,
        )
    coords = list(op.coeffs) + [RationalFunction.zero()] * (order - len(op.coeffs))
    return QuotientElement(tuple(coords))


def parse_poly(text: str) -> Poly:
    """Parse a plain polynomial in x."""
    op = _OperatorParser(text, allow_shift=False).parse()
    f = op.coeffs[0] if op.coeffs else RationalFunction.zero()
    if f.den != Poly.one():
        raise ParseError("expected a polynomial, not a quotient", text, 0)
    return f.num


def parse_point(text: str) -> AlgebraicPoint:
    """Parse a point: a rational literal, or ``root(<poly>)`` plus an
    optional integer offset."""
    tokens = _Tokens(text)
    kind, value, pos = tokens.peek()
    if kind == "name" and value == "root":
        tokens.next()
        tokens.expect_op("(")
        depth = 1
        start = tokens.index
        while depth:
            k, v, p = tokens.next()
            if k == "end":
                raise ParseError("unbalanced parentheses", text, p)
            if k == "op" and v == "(":
                depth += 1
            elif k == "op" and v == ")":
                depth -= 1
        inner_tokens = tokens.items[start:tokens.index - 1]
        if not inner_tokens:
            raise ParseError("empty root()", text, pos)
        lo = inner_tokens[0][2]
        hi_tok = inner_tokens[-1]
        hi = hi_tok[2] + len(str(hi_tok[1]))
        poly = parse_poly(text[lo:hi])
        poly = poly.monic()
        if not is_irreducible(poly):
            raise ParseError("root() requires an irreducible polynomial", text, pos)
        offset = 0
        kind2, sym, pos2 = tokens.peek()
        if kind2 == "op" and sym in "+-":
            tokens.next()
            kind3, n, pos3 = tokens.next()
            if kind3 != "int":
                raise ParseError("expected an integer offset", text, pos3)
            offset = n if sym == "+" else -n
        kind4, _, pos4 = tokens.peek()
        if kind4 != "end":
            raise ParseError("trailing input after point", text, pos4)
        return AlgebraicPoint(poly, offset)

    # rational literal, possibly signed
    sign = 1
    kind, value, pos = tokens.next()
    if kind == "op" and value in "+-":
        sign = -1 if value == "-" else 1
        kind, value, pos = tokens.next()
    if kind != "int":
        raise ParseError("expected a rational point or root(...)", text, pos)
    numerator = value
    denominator = 1
    kind2, sym, _ = tokens.peek()
    if kind2 == "op" and sym == "/":
        tokens.next()
        kind3, d, pos3 = tokens.next()
        if kind3 != "int" or d == 0:
            raise ParseError("expected a nonzero integer denominator", text, pos3)
        denominator = d
    kind4, _, pos4 = tokens.peek()
    if kind4 != "end":
        raise ParseError("trailing input after point", text, pos4)
    return AlgebraicPoint.from_rational(Fraction(sign * numerator, denominator))


def parse_orbit_key(text: str) -> str:
    """Normalize a user-facing orbit name ("Z", a polynomial, or root(...))
    to the canonical orbit key."""
    text = text.strip()
    if text == "Z":
        return "Z"
    if text.startswith("root"):
        return parse_point(text).orbit_key()
    poly = parse_poly(text).monic()
    if not is_irreducible(poly):
        raise ParseError("orbit key must be an irreducible polynomial", text, 0)
    return AlgebraicPoint(poly, 0).orbit_key()
