"""Parser for ideal expressions given on the command line.

Grammar (whitespace insignificant)::

    ideal   := gen ("," gen)*
    gen     := ["-"] term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := rational | "a" | var ["^" exponent]
    var     := "x" | "y"
    rational:= integer ["/" integer]

Each term may contain at most one rational factor, at most one symbolic
parameter ``a``, and each variable at most once; exponents are decimal
integers.  Parsing is exact (:class:`fractions.Fraction`) and every error
carries the byte offset at which it was detected.  Printing a parsed
expression reproduces the input up to whitespace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

EXPONENT_CAP = 10_000

_VARS = ("x", "y")


class ParseError(ValueError):
    """Syntax error with the byte offset of the offending position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Term:
    """One parsed product, preserving how it was written."""

    coeff: Fraction = Fraction(1)
    coeff_explicit: bool = False
    has_a: bool = False
    powers: tuple = ()  # ((var, exponent, caret_written), ...) in input order

    @property
    def exponents(self) -> tuple:
        ex = dict.fromkeys(_VARS, 0)
        for v, e, _ in self.powers:
            ex[v] = e
        return (ex["x"], ex["y"])

    def format(self, leading: bool) -> str:
        mag = abs(self.coeff)
        parts = []
        if self.coeff_explicit or (mag != 1 or (not self.has_a and not self.powers)):
            parts.append(str(mag))
        if self.has_a:
            parts.append("a")
        for v, e, caret in self.powers:
            parts.append(f"{v}^{e}" if caret else v)
        body = "*".join(parts)
        if leading:
            return body if self.coeff >= 0 else "-" + body
        return (" + " if self.coeff >= 0 else " - ") + body


@dataclass(frozen=True)
class IdealExpr:
    """A parsed comma-separated list of generators."""

    source: str
    generators: tuple = ()  # tuple of tuples of Term

    @property
    def has_parameter(self) -> bool:
        return any(t.has_a for g in self.generators for t in g)

    def format(self) -> str:
        return ", ".join(
            "".join(t.format(leading=(i == 0)) for i, t in enumerate(g))
            for g in self.generators)

    def coefficient_maps(self, a_value=None) -> list:
        """Each generator as {(ex, ey): Fraction}; substitutes ``a_value``
        for the symbolic parameter (required when the parameter occurs)."""
        out = []
        for g in self.generators:
            acc: dict = {}
            for t in g:
                c = t.coeff
                if t.has_a:
                    if a_value is None:
                        raise ValueError(
                            "expression uses the symbolic parameter 'a'; "
                            "a numeric value is required here")
                    c *= Fraction(a_value)
                mono = t.exponents
                c = acc.get(mono, Fraction(0)) + c
                if c:
                    acc[mono] = c
                else:
                    acc.pop(mono, None)
            out.append(acc)
        return out

    def elements(self, ring, a_value=None) -> list:
        """Generators as elements of a curve ring.

        With a symbolic parameter and no ``a_value``, the ring's coefficient
        algebra must provide a variable named ``a``.
        """
        out = []
        symbolic = a_value is None and self.has_parameter
        if symbolic and "a" not in getattr(ring.coeff, "names", ()):
            raise ValueError(
                "expression uses the symbolic parameter 'a' but the "
                "coefficient algebra has no such variable")
        for g in self.generators:
            e = ring.zero()
            for t in g:
                if t.has_a and symbolic:
                    c = {k: v * t.coeff for k, v in ring.coeff.var("a").items()}
                elif t.has_a:
                    c = ring.coeff.from_rational(t.coeff * Fraction(a_value))
                else:
                    c = ring.coeff.from_rational(t.coeff)
                ex, ey = t.exponents
                e = e + ring.monomial(ex, ey, c)
            out.append(e)
        return out


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a digit", start)
        return int(self.text[start:self.pos])


def _parse_term(sc: _Scanner) -> Term:
    coeff = Fraction(1)
    coeff_explicit = False
    has_a = False
    powers: list = []
    first = True
    while True:
        sc.skip_ws()
        here = sc.pos
        ch = sc.peek()
        if ch.isdigit():
            if coeff_explicit:
                raise ParseError("second rational factor in one term", here)
            num = sc.integer()
            den = 1
            if sc.peek() == "/":
                sc.take()
                at = sc.pos
                den = sc.integer()
                if den == 0:
                    raise ParseError("zero denominator", at)
            coeff *= Fraction(num, den)
            coeff_explicit = True
        elif ch == "a":
            if has_a:
                raise ParseError("parameter 'a' repeated in one term", here)
            sc.take()
            has_a = True
        elif ch in _VARS:
            if any(v == ch for v, _, _ in powers):
                raise ParseError(f"variable '{ch}' repeated in one term", here)
            sc.take()
            exp, caret = 1, False
            if sc.peek() == "^":
                sc.take()
                at = sc.pos
                sc.skip_ws()
                exp = sc.integer()
                caret = True
                if exp > EXPONENT_CAP:
                    raise ParseError("exponent overflow", at)
            powers.append((ch, exp, caret))
        elif first:
            raise ParseError("expected a term", here)
        else:
            raise ParseError("expected a factor after '*'", here)
        first = False
        if sc.peek() == "*":
            sc.take()
            continue
        return Term(coeff, coeff_explicit, has_a, tuple(powers))


def _parse_gen(sc: _Scanner) -> tuple:
    terms = []
    sign = Fraction(1)
    if sc.peek() == "-":
        sc.take()
        sign = Fraction(-1)
    while True:
        t = _parse_term(sc)
        terms.append(Term(sign * t.coeff, t.coeff_explicit, t.has_a, t.powers))
        ch = sc.peek()
        if ch == "+":
            sc.take()
            sign = Fraction(1)
        elif ch == "-":
            sc.take()
            sign = Fraction(-1)
        else:
            return tuple(terms)


def parse_ideal_expr(text: str) -> IdealExpr:
    """Parse a comma-separated generator list; errors carry byte offsets."""
    sc = _Scanner(text)
    gens = [_parse_gen(sc)]
    while True:
        ch = sc.peek()
        if ch == ",":
            sc.take()
            gens.append(_parse_gen(sc))
        elif ch == "":
            return IdealExpr(text, tuple(gens))
        else:
            raise ParseError(f"unexpected character {ch!r}", sc.pos)
