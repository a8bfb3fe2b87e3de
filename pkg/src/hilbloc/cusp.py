"""Ideals in the cusp ring k[[x,y]]/(x^2 - y^3): normal forms and classification.

Every nonzero nonunit element is a unit times one of y^n, x*y^m, or
x*y^m + d*y^n with m < n < m+3 (for n >= m+3 the y-part is absorbed into the
principal ideal, since y^n = x*y^(n-m-3) * x*y^m).  Consequently every ideal
is, up to equality, one of the canonical families

    (y^n), (x), (x*y^m), (x*y^m, y^(m+k)), (x*y^m + a*y^(m+k)),  k in {1, 2},

and classification proceeds by colength: each colength class contains exactly
two discrete ideals plus one a-parameterized pencil, decided by exact ideal
equality against the brute-force oracle.  Flat limits of the pencils at a = 0
and a = infinity (via the b = 1/a chart) are certified by a
colength + membership + uniqueness argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeffs import CoeffAlgebra
from .linalg import solve_linear
from .oracle import colength as oracle_colength
from .oracle import ideal_equal, member, row_space
from .rings import CUSP, CurveRing, IdealGens, RingElement

POW_Y = "pow-y"
X_ONLY = "x"
X_POW_Y = "x-pow-y"
TWO_GEN = "two-gen"
BINOM = "binom"

TO_ZERO = "a->0"
TO_INFINITY = "a->oo"


class TheoremViolationError(Exception):
    """An input escaped the cusp classification or a limit failed to certify."""


class TruncationError(Exception):
    """The requested truncation order is too small for the computation."""


@dataclass(frozen=True)
class CuspCanonicalIdeal:
    """One of the canonical cusp ideals; ``a`` is the pencil parameter."""

    variant: str
    m: int = 0  # y-exponent: n for PowY, m for the x*y^m families
    k: int = 0  # offset of the second y-power (two-generator and pencil forms)
    a: Fraction | None = None

    def __post_init__(self):
        if self.variant == POW_Y:
            if self.m < 1:
                raise ValueError("PowY needs exponent >= 1")
        elif self.variant == X_ONLY:
            if self.m or self.k:
                raise ValueError("the ideal (x) carries no parameters")
        elif self.variant == X_POW_Y:
            if self.m < 1:
                raise ValueError("XPowY needs exponent >= 1; use X for m = 0")
        elif self.variant in (TWO_GEN, BINOM):
            if self.m < 0 or self.k not in (1, 2):
                raise ValueError("two-generator/pencil forms need m >= 0, k in {1, 2}")
            if self.variant == BINOM and not self.a:
                raise ValueError("the pencil parameter must be nonzero")
        else:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant != BINOM and self.a is not None:
            raise ValueError("only the pencil form carries a parameter")

    # -- constructors --------------------------------------------------------

    @classmethod
    def pow_y(cls, n: int) -> "CuspCanonicalIdeal":
        return cls(POW_Y, m=n)

    @classmethod
    def x_only(cls) -> "CuspCanonicalIdeal":
        return cls(X_ONLY)

    @classmethod
    def x_pow_y(cls, m: int) -> "CuspCanonicalIdeal":
        """(x*y^m), collapsing to (x) when m = 0."""
        return cls(X_ONLY) if m == 0 else cls(X_POW_Y, m=m)

    @classmethod
    def two_gen(cls, m: int, k: int) -> "CuspCanonicalIdeal":
        return cls(TWO_GEN, m=m, k=k)

    @classmethod
    def binom(cls, m: int, k: int, a) -> "CuspCanonicalIdeal":
        return cls(BINOM, m=m, k=k, a=Fraction(a))

    # -- structure -----------------------------------------------------------

    def colength(self) -> int:
        return colength_formula(self)

    def generators(self, ring: CurveRing) -> IdealGens:
        if ring.kind != CUSP:
            raise ValueError("canonical cusp ideals live in the cusp ring")
        if self.variant == POW_Y:
            gens = [ring.y(self.m)]
        elif self.variant == X_ONLY:
            gens = [ring.x()]
        elif self.variant == X_POW_Y:
            gens = [ring.monomial(1, self.m)]
        elif self.variant == TWO_GEN:
            gens = [ring.monomial(1, self.m), ring.y(self.m + self.k)]
        else:
            gens = [ring.monomial(1, self.m) + ring.y(self.m + self.k).scale(self.a)]
        return IdealGens(ring, gens)

    def label(self) -> str:
        def yp(e: int) -> str:
            return "y" if e == 1 else f"y^{e}"

        if self.variant == POW_Y:
            return f"({yp(self.m)})"
        if self.variant == X_ONLY:
            return "(x)"
        if self.variant == X_POW_Y:
            return f"(x*{yp(self.m)})"
        xpart = "x" if self.m == 0 else f"x*{yp(self.m)}"
        if self.variant == TWO_GEN:
            return f"({xpart}, {yp(self.m + self.k)})"
        coeff = "" if self.a == 1 else f"{self.a}*"
        return f"({xpart} + {coeff}{yp(self.m + self.k)})"

    def as_dict(self) -> dict:
        out = {"variant": self.variant, "label": self.label(),
               "colength": self.colength()}
        if self.variant in (POW_Y, X_POW_Y, TWO_GEN, BINOM):
            out["m" if self.variant != POW_Y else "n"] = self.m
        if self.variant in (TWO_GEN, BINOM):
            out["k"] = self.k
        if self.variant == BINOM:
            out["a"] = str(self.a)
        return out


def colength_formula(c: CuspCanonicalIdeal) -> int:
    """dim of R/I for each canonical family (cross-checked against the oracle)."""
    if c.variant == POW_Y:
        return 2 * c.m
    if c.variant == X_ONLY:
        return 3
    if c.variant == X_POW_Y:
        return 2 * c.m + 3
    if c.variant == TWO_GEN:
        return 2 * c.m + c.k
    return 2 * c.m + c.k + 1  # pencil: one step below the two-generator form


def cusp_ring(trunc: int) -> CurveRing:
    return CurveRing.cusp(CoeffAlgebra.rationals(), trunc)


def default_cusp_ring(m: int) -> CurveRing:
    """A cusp ring over the rationals roomy enough for the degree-m families."""
    return cusp_ring(max(8, 2 * m + 10))


# -- associate normal forms --------------------------------------------------


@dataclass(frozen=True)
class AssocForm:
    """``unit_witness * canonical == input`` modulo degree >= trunc."""

    canonical: RingElement
    unit_witness: RingElement
    m: int | None  # x*y^m order of the x-part (None if absent)
    n: int | None  # y^n order of the pure y-part (None if absent)
    d: Fraction | None  # pencil coefficient when m < n < m+3
    trunc: int

    def verify(self, e: RingElement) -> bool:
        ring = self.canonical.ring
        e_t = RingElement(ring, ring.reduce_terms(
            {mono: dict(c) for mono, c in e.terms.items()}))
        cst = self.unit_witness.coefficient(0, 0)
        return bool(cst) and (self.unit_witness * self.canonical) == e_t


def _xy_parts(e: RingElement) -> tuple[dict, dict]:
    """Split canonical terms into the x*y^j part and the pure y^j part."""
    xpart, ypart = {}, {}
    for (ex, ey), c in e.terms.items():
        q = Fraction(next(iter(c.values())))
        (xpart if ex else ypart)[ey] = q
    return xpart, ypart


def _solve_unit(e: RingElement, canonical: RingElement) -> RingElement | None:
    """Solve u * canonical == e for u over the canonical monomials (exact)."""
    ring = canonical.ring
    monos = ring.canonical_monomials()
    col = {mono: j for j, mono in enumerate(monos)}
    # row per target monomial: sum over unknowns u_mono of coeff(target, mono*c)
    rows_by_target: dict = {}
    for mono, j in col.items():
        prod = ring.monomial(*mono) * canonical
        for tgt, c in prod.terms.items():
            rows_by_target.setdefault(tgt, {})[j] = Fraction(next(iter(c.values())))
    targets = sorted(rows_by_target)
    rows = [rows_by_target[t] for t in targets]
    rhs = []
    for t in targets:
        c = e.terms.get(t, {})
        rhs.append(Fraction(next(iter(c.values()))) if c else Fraction(0))
    # targets missed by every product must be absent from e as well
    for tgt, c in e.terms.items():
        if tgt not in rows_by_target and c:
            return None
    sol = solve_linear(rows, rhs, len(monos))
    if sol is None:
        return None
    return ring.element({mono: sol[j] for mono, j in col.items() if sol[j]})


def _normal_form_at(e: RingElement, T: int) -> AssocForm:
    ring = e.ring.at_truncation(T)
    e_t = RingElement(ring, ring.reduce_terms(
        {mono: dict(c) for mono, c in e.terms.items()}))
    if e_t.is_zero():
        raise TruncationError(f"element vanishes at truncation {T}")
    xpart, ypart = _xy_parts(e_t)
    m = min(xpart) if xpart else None
    n = min(ypart) if ypart else None
    d = None
    if m is None:
        canonical = ring.y(n)
    elif n is None or n > m + 2:
        canonical = ring.monomial(1, m)  # y^n with n >= m+3 folds into the unit
    elif n <= m:
        canonical = ring.y(n)
    else:  # m < n < m + 3: the pencil window
        d = ypart[n] / xpart[m]
        canonical = ring.monomial(1, m) + ring.y(n).scale(d)
    u = _solve_unit(e_t, canonical)
    if u is None or not u.coefficient(0, 0):
        raise TruncationError(
            f"unit witness solve failed at truncation {T}; raise the truncation")
    return AssocForm(canonical=canonical, unit_witness=u, m=m, n=n, d=d, trunc=T)


def associate_normal_form(e: RingElement, T: int | None = None) -> AssocForm:
    """Unit-times-canonical factorization of a nonzero nonunit cusp element.

    The canonical form is y^n, x*y^m, or x*y^m + d*y^n with m < n < m+3 and
    d the ratio of the two leading coefficients; any pure y-part of order
    >= m+3 is absorbed into the unit (y^(m+3) = x * x*y^m).  The witness is
    recomputed at T+2 and the canonical form must agree.
    """
    if e.ring.kind != CUSP:
        raise ValueError("associate normal forms are for the cusp ring")
    if e.is_zero():
        raise ValueError("the zero element has no normal form")
    if e.coefficient(0, 0):
        raise ValueError("units have trivial normal form; expected a nonunit")
    order = e.order()
    if T is None:
        xpart, ypart = _xy_parts(e)
        m = min(xpart) if xpart else 0
        n = min(ypart) if ypart else 0
        T = 2 * (m + n) + 8
    if T < 2 * order + 6:
        raise TruncationError(f"truncation {T} below the bound {2 * order + 6}")
    form = _normal_form_at(e, T)
    again = _normal_form_at(e, T + 2)
    same = (form.m == again.m and form.n == again.n and form.d == again.d)
    if not same:
        raise TruncationError(
            f"canonical form did not stabilize between truncations {T} and {T + 2}")
    if not form.verify(e):
        raise TheoremViolationError("unit witness failed verification")
    return form


def principal_ideal_normalize(e: RingElement) -> CuspCanonicalIdeal:
    """Canonical ideal generated by a single nonzero nonunit element."""
    form = associate_normal_form(e)
    if form.m is None or (form.n is not None and form.n <= form.m):
        out = CuspCanonicalIdeal.pow_y(form.n)
    elif form.d is not None:
        out = CuspCanonicalIdeal.binom(form.m, form.n - form.m, form.d)
    else:
        out = CuspCanonicalIdeal.x_pow_y(form.m)
    ring = default_cusp_ring(max(form.m or 0, form.n or 0, e.degree()))
    e_l = RingElement(ring, ring.reduce_terms(
        {mono: dict(c) for mono, c in e.terms.items()}))
    if not ideal_equal(IdealGens(ring, [e_l]), out.generators(ring)):
        raise TheoremViolationError(
            f"normalized ideal {out.label()} is not equal to the input ideal")
    return out


# -- classification ----------------------------------------------------------


def candidates_for_colength(c: int) -> tuple[list, list]:
    """(discrete canonical ideals, pencil families (m, k)) of colength c."""
    if c < 1:
        raise ValueError("colength must be >= 1")
    if c == 1:
        return [CuspCanonicalIdeal.two_gen(0, 1)], []
    if c % 2 == 0:
        M = c // 2
        return ([CuspCanonicalIdeal.pow_y(M), CuspCanonicalIdeal.two_gen(M - 1, 2)],
                [(M - 1, 1)])
    M = (c - 1) // 2
    return ([CuspCanonicalIdeal.two_gen(M, 1), CuspCanonicalIdeal.x_pow_y(M - 1)],
            [(M - 1, 2)])


def _pencil_parameter(I: IdealGens, m: int, k: int) -> Fraction | None:
    """Nonzero a with x*y^m + a*y^(m+k) in I, if one exists (residuals must
    be proportional); None otherwise."""
    D = max(2 * (2 * (m + k) + 4) + 4, I.ring.trunc)
    space, flat = row_space(I, D)
    ring_d = I.at_truncation(D).ring
    r1 = space.reduce_fraction_row(flat.row_of(ring_d.monomial(1, m)))
    r2 = space.reduce_fraction_row(flat.row_of(ring_d.y(m + k)))
    if not r2 or set(r1) != set(r2):
        return None
    ratios = {r1[cidx] / r2[cidx] for cidx in r1}
    if len(ratios) != 1:
        return None
    a = -ratios.pop()
    return a if a else None


def classify_cusp_ideal(I: IdealGens) -> CuspCanonicalIdeal:
    """Match a finite-colength cusp ideal against the canonical list.

    Candidates are enumerated by colength class (two discrete ideals plus one
    pencil per class) and decided by exact ideal equality; the pencil
    parameter is recovered by a single linear residual solve.
    """
    if I.ring.kind != CUSP:
        raise ValueError("classification is for cusp ideals")
    c = oracle_colength(I)
    if c == 0:
        raise ValueError("the unit ideal is outside the classification")
    discrete, pencils = candidates_for_colength(c)
    ring = default_cusp_ring(c)
    for cand in discrete:
        if ideal_equal(I, cand.generators(ring)):
            return cand
    for m, k in pencils:
        if m < 0:
            continue
        a = _pencil_parameter(I, m, k)
        if a is not None:
            cand = CuspCanonicalIdeal.binom(m, k, a)
            if ideal_equal(I, cand.generators(ring)):
                return cand
    raise TheoremViolationError(
        f"colength-{c} ideal matches no canonical cusp ideal: {I!r}")


def distinctness(m: int, k: int, a, b) -> bool:
    """Do distinct nonzero pencil parameters give distinct ideals?"""
    a, b = Fraction(a), Fraction(b)
    if not a or not b:
        raise ValueError("pencil parameters must be nonzero")
    ring = default_cusp_ring(m + k)
    return not ideal_equal(CuspCanonicalIdeal.binom(m, k, a).generators(ring),
                           CuspCanonicalIdeal.binom(m, k, b).generators(ring))


# -- the containment poset ---------------------------------------------------


def pair_chain_length(m: int, n: int) -> int:
    """Length of the maximal chain from the two-generator pair (m, n) down to
    (0, 1): colengths drop by one along each step, giving m + n - 1."""
    if m < 0 or n < 1 or m >= n:
        raise ValueError("need 0 <= m < n")
    return m + n - 1


def pair_is_successor(pair1: tuple, pair2: tuple) -> bool:
    """One containment step (x*y^m1, y^n1) > (x*y^m2, y^n2): the index sum
    drops by exactly one and both indices are monotone; the smaller pair must
    stay minimally two-generated (m2 + 3 > n2)."""
    (m1, n1), (m2, n2) = pair1, pair2
    for m, n in (pair1, pair2):
        if m < 0 or n < 1 or m >= n:
            return False
    return m1 + n1 - 1 == m2 + n2 and m2 <= m1 and n2 <= n1 and m2 + 3 > n2


def pair_successors(pair: tuple) -> list:
    m1, n1 = pair
    return [(m2, n2) for m2 in range(m1 + 1) for n2 in range(1, n1 + 1)
            if pair_is_successor(pair, (m2, n2))]


# -- flat limits of the pencils ----------------------------------------------

LIMIT_TABLE = {
    # (k, direction) -> claimed canonical limit builder
    (1, TO_ZERO): lambda m: CuspCanonicalIdeal.two_gen(m, 2),
    (2, TO_ZERO): lambda m: CuspCanonicalIdeal.x_pow_y(m),
    (1, TO_INFINITY): lambda m: CuspCanonicalIdeal.pow_y(m + 1),
    (2, TO_INFINITY): lambda m: CuspCanonicalIdeal.two_gen(m + 1, 1),
}

DEFAULT_LIMIT_SAMPLES = (Fraction(1), Fraction(2), Fraction(3),
                         Fraction(-1), Fraction(1, 2))


def expected_limit(m: int, k: int, direction: str) -> CuspCanonicalIdeal:
    if direction not in (TO_ZERO, TO_INFINITY):
        raise ValueError(f"unknown direction {direction!r}")
    return LIMIT_TABLE[(k, direction)](m)


def flat_limit_certify(m: int, k: int, direction: str,
                       claimed: CuspCanonicalIdeal | None = None,
                       samples=DEFAULT_LIMIT_SAMPLES) -> CuspCanonicalIdeal:
    """Certify the limit of the pencil (x*y^m + a*y^(m+k)) at a = 0 or oo.

    Mechanized argument: (a) the claimed limit has the same colength as every
    sampled pencil member; (b) the direction chart is consistent -- at each
    sampled parameter the chart generator (x*y^m + a*y^(m+k), or
    b*x*y^m + y^(m+k) with b = 1/a at infinity) generates the same ideal;
    (c) the claimed limit contains the chart generator at the boundary value
    and is the unique canonical ideal in its colength class doing so.
    """
    if k not in (1, 2) or m < 0:
        raise ValueError("pencil needs m >= 0, k in {1, 2}")
    if claimed is None:
        claimed = expected_limit(m, k, direction)
    ring = default_cusp_ring(m + k + 2)

    def chart_gen(t: Fraction) -> RingElement:
        if direction == TO_ZERO:
            return ring.monomial(1, m) + ring.y(m + k).scale(t)
        return ring.monomial(1, m).scale(t) + ring.y(m + k)

    claimed_I = claimed.generators(ring)
    want = oracle_colength(claimed_I)
    for a in samples:
        if not a:
            raise ValueError("samples must be nonzero")
        I_a = CuspCanonicalIdeal.binom(m, k, a).generators(ring)
        if oracle_colength(I_a) != want:
            raise TheoremViolationError(
                f"colength of the pencil at a={a} differs from the claimed limit")
        t = a if direction == TO_ZERO else 1 / a
        if not ideal_equal(IdealGens(ring, [chart_gen(t)]), I_a):
            raise TheoremViolationError(
                f"chart generator at parameter {t} does not generate the pencil member")
    boundary = chart_gen(Fraction(0))  # x*y^m at a->0, y^(m+k) at a->oo
    if not member(boundary, claimed_I):
        raise TheoremViolationError(
            f"claimed limit {claimed.label()} misses the boundary generator")
    discrete, pencils = candidates_for_colength(want)
    holders = [cand for cand in discrete
               if member(boundary, cand.generators(ring))]
    if holders != [claimed]:
        raise TheoremViolationError(
            f"boundary generator containment does not single out {claimed.label()}: "
            f"{[h.label() for h in holders]}")
    for pm, pk in pencils:
        if pm < 0:
            continue
        for a in samples:
            if member(boundary, CuspCanonicalIdeal.binom(pm, pk, a).generators(ring)):
                raise TheoremViolationError(
                    "boundary generator lies in a competing pencil member")
    return claimed
