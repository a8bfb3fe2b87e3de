"""Brute-force linear-algebra oracle for ideals in the curve rings.

Everything here reduces questions about an ideal I (colength, membership,
ideal equality, base-freeness of a deformation) to exact row reduction of the
spanning set { s^alpha * mono * g } at a finite truncation D, where mono runs
over canonical ring monomials of degree < D and s^alpha over the monomial
basis of the coefficient algebra (trivial over the rationals).

Truncation is handled by stabilization: answers are recomputed at increasing
D until consecutive truncations agree.  This oracle is the ground truth the
symbolic derivations in the rest of the library are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffs import RATIONALS, TRUNCATED_ARTIN
from .linalg import RowSpace
from .rings import CUSP, IdealGens, RingElement

DEFAULT_TRUNC_CAP = 256


class InfiniteColengthError(Exception):
    """Colength failed to stabilize below the truncation cap."""


class OracleError(Exception):
    pass


@dataclass
class QuotientBasis:
    monomials: list  # canonical (ex, ey) monomials over Q; flattened pairs over Artin
    colength: int | None  # None marks "not finite at truncation"
    trunc: int

    @property
    def finite(self) -> bool:
        return self.colength is not None


class _Flattening:
    """Column enumeration for one ring at one truncation."""

    def __init__(self, ring):
        self.ring = ring
        self.monomials = ring.canonical_monomials()
        self.mono_index = {m: i for i, m in enumerate(self.monomials)}
        if ring.coeff.variant == TRUNCATED_ARTIN:
            self.sbasis = ring.coeff.monomial_basis()
        elif ring.coeff.variant == RATIONALS:
            self.sbasis = [()]
        else:
            raise OracleError("oracle needs Rationals or TruncatedArtin coefficients")
        self.s_index = {m: i for i, m in enumerate(self.sbasis)}
        self.ncols = len(self.monomials) * len(self.sbasis)

    def row_of(self, e: RingElement) -> dict:
        row = {}
        w = len(self.sbasis)
        for mono, c in e.terms.items():
            base = self.mono_index[mono] * w
            for cm, q in c.items():
                row[base + self.s_index[cm]] = q
        return row

    def column_label(self, col: int):
        w = len(self.sbasis)
        mono = self.monomials[col // w]
        cm = self.sbasis[col % w]
        return mono if w == 1 else (mono, cm)


def _scalar_multipliers(ring):
    """Coefficient-algebra monomials to multiply generators by (S-span)."""
    if ring.coeff.variant == TRUNCATED_ARTIN:
        return [{m: 1} for m in ring.coeff.monomial_basis()]
    return [ring.coeff.one()]


def row_space(I: IdealGens, D: int) -> tuple[RowSpace, _Flattening]:
    """Row space of the flattened spanning set of I at truncation D."""
    J = I.at_truncation(D)
    flat = _Flattening(J.ring)
    space = RowSpace()
    scalars = _scalar_multipliers(J.ring)
    for g in J.gens:
        for mono in flat.monomials:
            prod = J.ring.monomial(*mono) * g
            if prod.is_zero():
                continue
            for s in scalars:
                v = prod.scale(s)
                if not v.is_zero():
                    space.add_row(flat.row_of(v))
    return space, flat


def _initial_trunc(I: IdealGens) -> int:
    """A-priori starting truncation from the generator degrees."""
    d = I.max_degree()
    if I.ring.kind == CUSP:
        ymax = max(ey for g in I.gens for _, ey in g.terms)
        bound = 2 * ymax + 4
    else:
        bound = 2 * d
    return max(4, 2 * bound + 4)


def _complement(space: RowSpace, flat: _Flattening) -> list:
    pivots = set(space.pivots)
    return [flat.column_label(c) for c in range(flat.ncols) if c not in pivots]


def quotient_basis(I: IdealGens, D: int) -> QuotientBasis:
    """Complement monomial basis of ring/I at truncation D.

    Finiteness is certified by recomputation at D+1 and D+2: the complement
    size must be stable.
    """
    if D < 2:
        raise ValueError("truncation must be >= 2")
    sizes = []
    comp0 = None
    for d in (D, D + 1, D + 2):
        space, flat = row_space(I, d)
        comp = _complement(space, flat)
        if d == D:
            comp0 = comp
        sizes.append(len(comp))
    stable = sizes[0] == sizes[1] == sizes[2]
    return QuotientBasis(monomials=comp0, colength=sizes[0] if stable else None, trunc=D)


def colength(I: IdealGens, cap: int = DEFAULT_TRUNC_CAP) -> int:
    """Stabilized colength; raises InfiniteColengthError past the cap."""
    D = _initial_trunc(I)
    while D <= cap:
        qb = quotient_basis(I, D)
        if qb.finite:
            return qb.colength
        D *= 2
    raise InfiniteColengthError(f"colength did not stabilize below D={cap}")


def member(e: RingElement, I: IdealGens, cap: int = DEFAULT_TRUNC_CAP) -> bool:
    """True iff e lies in the ideal; certified across two truncations."""
    if e.ring.kind != I.ring.kind or e.ring.coeff != I.ring.coeff:
        raise OracleError("element and ideal live in different rings")
    if e.is_zero():
        return True
    D = max(_initial_trunc(I), e.degree() + 4)
    while D <= cap:
        answers = []
        for d in (D, D + 1):
            space, flat = row_space(I, d)
            ring_d = I.at_truncation(d).ring
            e_d = RingElement(ring_d, ring_d.reduce_terms(
                {m: dict(c) for m, c in e.terms.items()}))
            answers.append(space.contains(flat.row_of(e_d)))
        if answers[0] == answers[1]:
            return answers[0]
        D *= 2
    raise OracleError(f"membership did not stabilize below D={cap}")


def ideal_equal(I: IdealGens, J: IdealGens, cap: int = DEFAULT_TRUNC_CAP) -> bool:
    """Mutual membership of all generators."""
    return all(member(g, J, cap) for g in I.gens) and all(member(g, I, cap) for g in J.gens)


def s_free_rank(I: IdealGens, claimed_basis: list, cap: int = DEFAULT_TRUNC_CAP) -> bool:
    """Is R_S/I_S free over S with the claimed monomial basis?

    Decided by flattened Q-linear algebra: the quotient dimension must equal
    |basis| * dim_Q(S) and the vectors { s^alpha * b } must be independent
    modulo the ideal.  Verified at two consecutive truncations.
    """
    if I.ring.coeff.variant != TRUNCATED_ARTIN:
        raise OracleError("s_free_rank needs TruncatedArtin coefficients")
    dim_s = len(I.ring.coeff.monomial_basis())
    want = len(claimed_basis) * dim_s
    D = max(_initial_trunc(I),
            max((ex + ey for ex, ey in claimed_basis), default=0) + 4)

    def check(d: int) -> bool:
        space, flat = row_space(I, d)
        if flat.ncols - space.rank != want:
            return False
        ring_d = I.at_truncation(d).ring
        scalars = _scalar_multipliers(ring_d)
        probe = RowSpace()
        probe.pivots = dict(space.pivots)  # rows are immutable; sharing is safe
        for mono in claimed_basis:
            b = ring_d.monomial(*mono)
            for s in scalars:
                v = b.scale(s)
                if v.is_zero() or not probe.add_row(flat.row_of(v)):
                    return False
        return True

    while D <= cap:
        a, b = check(D), check(D + 1)
        if a == b:
            return a
        D *= 2
    raise OracleError(f"freeness did not stabilize below D={cap}")
