"""Pluggable coefficient algebras for the curve rings.

Three variants are supported:

* ``Rationals`` -- plain exact rationals.
* ``TruncatedArtin(params, nil_order)`` -- polynomials in the parameters with
  every monomial of total degree >= nil_order killed (an Artin local algebra).
* ``FreePoly(names)`` -- the free polynomial ring on named variables, used for
  generic deformation coefficients.

A coefficient value is a sparse polynomial: a dict mapping a monomial to a
nonzero ``Fraction``.  Monomials are sorted tuples of ``(var_index, exponent)``
pairs with positive exponents; ``()`` is the constant monomial.  All
arithmetic goes through the owning :class:`CoeffAlgebra` so that Artin
truncation is applied uniformly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

CMono = tuple  # tuple[(var_index, exp), ...], sorted by var_index
CPoly = dict  # dict[CMono, Fraction]

RATIONALS = "rationals"
TRUNCATED_ARTIN = "truncated-artin"
FREE_POLY = "free-poly"

_ZERO = Fraction(0)


def cmono_degree(mono: CMono) -> int:
    return sum(e for _, e in mono)


def cmono_mul(a: CMono, b: CMono) -> CMono:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for idx, e in b:
        acc[idx] = acc.get(idx, 0) + e
    return tuple(sorted(acc.items()))


class CoeffAlgebra:
    """One of the three coefficient algebras, with its element arithmetic."""

    def __init__(self, variant: str, names: tuple[str, ...] = (), nil_order: int | None = None):
        if variant not in (RATIONALS, TRUNCATED_ARTIN, FREE_POLY):
            raise ValueError(f"unknown coefficient algebra variant {variant!r}")
        if len(set(names)) != len(names) or any(not n for n in names):
            raise ValueError("coefficient variable names must be distinct and nonempty")
        if variant == RATIONALS and names:
            raise ValueError("Rationals has no parameters")
        if variant == TRUNCATED_ARTIN:
            if nil_order is None or nil_order < 2:
                raise ValueError("TruncatedArtin needs nil_order >= 2")
        elif nil_order is not None:
            raise ValueError("nil_order only applies to TruncatedArtin")
        self.variant = variant
        self.names = tuple(names)
        self.nil_order = nil_order
        self._index = {n: i for i, n in enumerate(self.names)}

    # -- constructors -------------------------------------------------------

    @classmethod
    def rationals(cls) -> "CoeffAlgebra":
        return cls(RATIONALS)

    @classmethod
    def truncated_artin(cls, names: Iterable[str], nil_order: int) -> "CoeffAlgebra":
        return cls(TRUNCATED_ARTIN, tuple(names), nil_order)

    @classmethod
    def free_poly(cls, names: Iterable[str]) -> "CoeffAlgebra":
        return cls(FREE_POLY, tuple(names))

    def __eq__(self, other):
        return (
            isinstance(other, CoeffAlgebra)
            and self.variant == other.variant
            and self.names == other.names
            and self.nil_order == other.nil_order
        )

    def __hash__(self):
        return hash((self.variant, self.names, self.nil_order))

    def __repr__(self):
        if self.variant == RATIONALS:
            return "Q"
        if self.variant == TRUNCATED_ARTIN:
            return f"Q[{','.join(self.names)}]/(deg>={self.nil_order})"
        return f"Q[{','.join(self.names)}]"

    # -- element construction ----------------------------------------------

    def zero(self) -> CPoly:
        return {}

    def one(self) -> CPoly:
        return {(): Fraction(1)}

    def from_rational(self, q) -> CPoly:
        q = Fraction(q)
        return {(): q} if q else {}

    def var(self, name: str) -> CPoly:
        if name not in self._index:
            raise KeyError(f"{name!r} is not a parameter of {self!r}")
        return {((self._index[name], 1),): Fraction(1)}

    def from_terms(self, terms: dict) -> CPoly:
        """Canonicalize a raw {mono: rational} dict (drops zeros, truncates)."""
        out: CPoly = {}
        for mono, q in terms.items():
            q = Fraction(q)
            if not q or self._dead(mono):
                continue
            mono = tuple(sorted((i, e) for i, e in mono if e))
            out[mono] = out.get(mono, _ZERO) + q
            if not out[mono]:
                del out[mono]
        return out

    def _dead(self, mono: CMono) -> bool:
        return self.variant == TRUNCATED_ARTIN and cmono_degree(mono) >= self.nil_order

    # -- arithmetic ---------------------------------------------------------

    def cadd(self, a: CPoly, b: CPoly) -> CPoly:
        if not b:
            return dict(a)
        out = dict(a)
        for mono, q in b.items():
            v = out.get(mono, _ZERO) + q
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return out

    def cneg(self, a: CPoly) -> CPoly:
        return {mono: -q for mono, q in a.items()}

    def csub(self, a: CPoly, b: CPoly) -> CPoly:
        return self.cadd(a, self.cneg(b))

    def cmul(self, a: CPoly, b: CPoly) -> CPoly:
        out: CPoly = {}
        for ma, qa in a.items():
            for mb, qb in b.items():
                mono = cmono_mul(ma, mb)
                if self._dead(mono):
                    continue
                v = out.get(mono, _ZERO) + qa * qb
                if v:
                    out[mono] = v
                else:
                    del out[mono]
        return out

    def cscale(self, a: CPoly, q) -> CPoly:
        q = Fraction(q)
        if not q:
            return {}
        return {mono: c * q for mono, c in a.items()}

    def is_zero(self, a: CPoly) -> bool:
        return not a

    def as_rational(self, a: CPoly) -> Fraction:
        """The value of a constant element; error if non-constant."""
        if not a:
            return _ZERO
        if set(a) != {()}:
            raise ValueError(f"coefficient {a!r} is not a rational constant")
        return a[()]

    # -- Artin structure ----------------------------------------------------

    def monomial_basis(self) -> list[CMono]:
        """Fixed enumeration of the monomial Q-basis (TruncatedArtin only).

        Graded, then lexicographic by exponent vector; this enumeration is
        part of the stable output contract of the flattening oracle.
        """
        if self.variant != TRUNCATED_ARTIN:
            raise ValueError("monomial basis only defined for TruncatedArtin")
        n = len(self.names)
        basis: list[CMono] = []

        def rec(prefix: list[int], i: int, budget: int):
            if i == n:
                basis.append(tuple((j, e) for j, e in enumerate(prefix) if e))
                return
            for e in range(budget + 1):
                rec(prefix + [e], i + 1, budget - e)

        rec([], 0, self.nil_order - 1)
        return sorted(basis, key=lambda m: (cmono_degree(m), _lex_key(m, n)))

    def dim(self) -> int:
        return len(self.monomial_basis())

    def in_maximal_ideal(self, a: CPoly) -> bool:
        return () not in a

    # -- display ------------------------------------------------------------

    def format(self, a: CPoly) -> str:
        if not a:
            return "0"
        parts = []
        for mono in sorted(a, key=lambda m: (cmono_degree(m), m)):
            q = a[mono]
            body = "*".join(
                f"{self.names[i]}^{e}" if e > 1 else self.names[i] for i, e in mono
            )
            if not body:
                parts.append(str(q))
            elif q == 1:
                parts.append(body)
            elif q == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{q}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def _lex_key(mono: CMono, n: int) -> tuple:
    d = dict(mono)
    return tuple(-d.get(i, 0) for i in range(n))
