"""Truncated exact arithmetic in the three curve rings.

* ``NodeAbsolute``: k[[x,y]]/(xy), canonical monomials 1, x^i, y^j.
* ``NodeRelative(s)``: the same ring over a base, with xy rewritten to s; the
  base element s lives in the coefficient algebra.
* ``Cusp``: k[[x,y]]/(x^2 - y^3), canonical monomials x^eps * y^j, eps in {0,1}.

Elements are truncated: every term of total x,y-degree >= D is dropped after
reduction to canonical form.  Rewriting never lowers the total degree of a
canonical monomial, so truncation is compatible with multiplication.  All
values are immutable; operations are pure.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffs import CoeffAlgebra, CPoly, FREE_POLY

NODE_ABSOLUTE = "node-absolute"
NODE_RELATIVE = "node-relative"
CUSP = "cusp"

Monomial = tuple  # (x_exp, y_exp), canonical for the ring kind


def monomial_key(mono: Monomial) -> tuple:
    """Fixed monomial order: x-power descending, then y-power ascending."""
    return (-mono[0], mono[1])


class CurveRing:
    """One of the three curve rings at a fixed truncation order D."""

    def __init__(self, kind: str, coeff: CoeffAlgebra, trunc: int,
                 base_param: str | None = None, base_value: CPoly | None = None):
        if kind not in (NODE_ABSOLUTE, NODE_RELATIVE, CUSP):
            raise ValueError(f"unknown curve ring kind {kind!r}")
        if trunc < 2:
            raise ValueError("truncation order must be >= 2")
        if kind == NODE_RELATIVE:
            if base_value is not None:
                base = coeff.from_terms(base_value)
            elif base_param is not None:
                base = coeff.var(base_param)
            else:
                raise ValueError("NodeRelative needs a base parameter or base value")
        else:
            if base_param is not None or base_value is not None:
                raise ValueError("base parameter only applies to NodeRelative")
            base = None
        self.kind = kind
        self.coeff = coeff
        self.trunc = trunc
        self.base_param = base_param if kind == NODE_RELATIVE else None
        self._base = base
        self._base_key = None if base is None else tuple(sorted(base.items()))

    # -- constructors -------------------------------------------------------

    @classmethod
    def node_absolute(cls, coeff: CoeffAlgebra, trunc: int) -> "CurveRing":
        return cls(NODE_ABSOLUTE, coeff, trunc)

    @classmethod
    def node_relative(cls, coeff: CoeffAlgebra, trunc: int, base_param: str) -> "CurveRing":
        return cls(NODE_RELATIVE, coeff, trunc, base_param=base_param)

    @classmethod
    def cusp(cls, coeff: CoeffAlgebra, trunc: int) -> "CurveRing":
        return cls(CUSP, coeff, trunc)

    def at_truncation(self, trunc: int) -> "CurveRing":
        return CurveRing(self.kind, self.coeff, trunc, base_param=self.base_param,
                         base_value=None if self.base_param or self._base is None else self._base)

    def __eq__(self, other):
        return (
            isinstance(other, CurveRing)
            and self.kind == other.kind
            and self.coeff == other.coeff
            and self.trunc == other.trunc
            and self._base_key == other._base_key
        )

    def __hash__(self):
        return hash((self.kind, self.coeff, self.trunc, self._base_key))

    def __repr__(self):
        tag = {NODE_ABSOLUTE: "Node", NODE_RELATIVE: "NodeRel", CUSP: "Cusp"}[self.kind]
        return f"{tag}(coeff={self.coeff!r}, D={self.trunc})"

    # -- canonical monomials -------------------------------------------------

    def canonical_monomials(self) -> list[Monomial]:
        """All canonical monomials of degree < D in the fixed order."""
        D = self.trunc
        if self.kind == CUSP:
            mons = [(e, j) for e in (0, 1) for j in range(D - e)]
        else:
            mons = [(i, 0) for i in range(D)] + [(0, j) for j in range(1, D)]
        return sorted(mons, key=monomial_key)

    # -- reduction -----------------------------------------------------------

    def reduce_terms(self, raw: dict) -> dict:
        """Reduce a raw {(ex, ey): coeff-poly} dict to canonical form."""
        A = self.coeff
        out: dict = {}
        for (ex, ey), c in raw.items():
            c = dict(c)
            if not c:
                continue
            if self.kind == CUSP:
                while ex >= 2:
                    ex -= 2
                    ey += 3
            elif ex and ey:
                k = min(ex, ey)
                ex -= k
                ey -= k
                if self.kind == NODE_ABSOLUTE:
                    continue
                for _ in range(k):
                    c = A.cmul(c, self._base)
                if not c:
                    continue
            if ex + ey >= self.trunc:
                continue
            mono = (ex, ey)
            if mono in out:
                v = A.cadd(out[mono], c)
                if v:
                    out[mono] = v
                else:
                    del out[mono]
            else:
                out[mono] = c
        return out

    # -- element constructors -----------------------------------------------

    def element(self, raw: dict) -> "RingElement":
        """Build an element from a raw {(ex, ey): coeff} dict (coeffs may be
        rationals or coefficient polynomials)."""
        conv = {}
        for mono, c in raw.items():
            c = c if isinstance(c, dict) else self.coeff.from_rational(c)
            if mono in conv:
                conv[mono] = self.coeff.cadd(conv[mono], c)
            else:
                conv[mono] = dict(c)
        return RingElement(self, self.reduce_terms(conv))

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return self.element({(0, 0): 1})

    def x(self, power: int = 1) -> "RingElement":
        return self.element({(power, 0): 1})

    def y(self, power: int = 1) -> "RingElement":
        return self.element({(0, power): 1})

    def monomial(self, ex: int, ey: int, coeff=1) -> "RingElement":
        return self.element({(ex, ey): coeff})


class RingElement:
    """Canonical truncated element of a curve ring.  Immutable."""

    __slots__ = ("ring", "terms", "_key")

    def __init__(self, ring: CurveRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._key = None

    def _sorted_key(self):
        if self._key is None:
            self._key = tuple(
                (mono, tuple(sorted(self.terms[mono].items())))
                for mono in sorted(self.terms, key=monomial_key)
            )
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.ring == other.ring
            and self._sorted_key() == other._sorted_key()
        )

    def __hash__(self):
        return hash((self.ring, self._sorted_key()))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, ex: int, ey: int) -> CPoly:
        return dict(self.terms.get((ex, ey), {}))

    def degree(self) -> int:
        """Largest x,y-degree of a term (-1 for zero)."""
        return max((ex + ey for ex, ey in self.terms), default=-1)

    def order(self) -> int:
        """Smallest x,y-degree of a term (-1 for zero)."""
        return min((ex + ey for ex, ey in self.terms), default=-1)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "RingElement"):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        A = self.ring.coeff
        out = {m: dict(c) for m, c in self.terms.items()}
        for mono, c in other.terms.items():
            v = A.cadd(out.get(mono, {}), c)
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return RingElement(self.ring, out)

    def __neg__(self) -> "RingElement":
        A = self.ring.coeff
        return RingElement(self.ring, {m: A.cneg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        A = self.ring.coeff
        raw: dict = {}
        for (ax, ay), ca in self.terms.items():
            for (bx, by), cb in other.terms.items():
                mono = (ax + bx, ay + by)
                c = A.cmul(ca, cb)
                if not c:
                    continue
                if mono in raw:
                    raw[mono] = A.cadd(raw[mono], c)
                else:
                    raw[mono] = c
        return RingElement(self.ring, self.ring.reduce_terms(raw))

    def scale(self, q) -> "RingElement":
        """Scale by a rational or by a coefficient-algebra element."""
        A = self.ring.coeff
        c = q if isinstance(q, dict) else A.from_rational(q)
        out = {}
        for mono, v in self.terms.items():
            w = A.cmul(v, c)
            if w:
                out[mono] = w
        return RingElement(self.ring, self.ring.reduce_terms(out))

    # -- display -------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        A = self.ring.coeff
        parts = []
        for mono in sorted(self.terms, key=monomial_key):
            ex, ey = mono
            body = "*".join(
                ([f"x^{ex}" if ex > 1 else "x"] if ex else [])
                + ([f"y^{ey}" if ey > 1 else "y"] if ey else [])
            )
            c = A.format(self.terms[mono])
            if not body:
                parts.append(c)
            elif c == "1":
                parts.append(body)
            elif c == "-1":
                parts.append(f"-{body}")
            elif "+" in c or "-" in c[1:]:
                parts.append(f"({c})*{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def substitute(e: RingElement, assignment: dict, target: CoeffAlgebra,
               target_ring: CurveRing | None = None) -> RingElement:
    """Specialize an element over FreePoly coefficients into a target algebra.

    ``assignment`` maps every coefficient variable occurring in ``e`` (and the
    base parameter, for relative rings) to a rational or a coefficient
    polynomial of ``target``.  The result is re-canonicalized in a ring of the
    same kind and truncation over ``target``.
    """
    src = e.ring.coeff
    if src.variant != FREE_POLY:
        raise ValueError("substitute expects an element over FreePoly coefficients")
    values = {}
    for name, v in assignment.items():
        values[name] = v if isinstance(v, dict) else target.from_rational(v)

    def eval_cpoly(c: CPoly) -> CPoly:
        acc = target.zero()
        for mono, q in c.items():
            term = target.from_rational(q)
            for idx, exp in mono:
                name = src.names[idx]
                if name not in values:
                    raise KeyError(f"unassigned coefficient variable {name!r}")
                for _ in range(exp):
                    term = target.cmul(term, values[name])
            acc = target.cadd(acc, term)
        return acc

    if target_ring is None:
        if e.ring.kind == NODE_RELATIVE:
            base = e.ring.base_param
            if base not in assignment:
                raise KeyError(f"unassigned base parameter {base!r}")
            target_ring = CurveRing(NODE_RELATIVE, target, e.ring.trunc,
                                    base_value=values[base])
        else:
            target_ring = CurveRing(e.ring.kind, target, e.ring.trunc)
    raw = {mono: eval_cpoly(c) for mono, c in e.terms.items()}
    return RingElement(target_ring, target_ring.reduce_terms(raw))


class IdealGens:
    """A finitely generated ideal in a curve ring, given by its generators."""

    def __init__(self, ring: CurveRing, gens):
        gens = tuple(gens)
        if not gens:
            raise ValueError("IdealGens needs at least one generator")
        for g in gens:
            if not isinstance(g, RingElement) or g.ring != ring:
                raise ValueError("generators must live in the stated ring")
            if g.is_zero():
                raise ValueError("generators must be nonzero")
        self.ring = ring
        self.gens = gens

    def at_truncation(self, trunc: int) -> "IdealGens":
        ring = self.ring.at_truncation(trunc)
        gens = []
        for g in self.gens:
            h = RingElement(ring, ring.reduce_terms({m: dict(c) for m, c in g.terms.items()}))
            if not h.is_zero():
                gens.append(h)
        if not gens:
            raise ValueError("all generators vanish at this truncation")
        return IdealGens(ring, gens)

    def max_degree(self) -> int:
        return max(g.degree() for g in self.gens)

    def __repr__(self):
        return "(" + ", ".join(repr(g) for g in self.gens) + ")"
