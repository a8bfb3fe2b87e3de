"""Generic flat deformations of the monomial ideals Q_i^m in the node ring.

A colength-m monomial ideal Q_i^m = (x^{m+1-i}, y^i) deforms over an Artin
local base S to I_S = (f, g) with

    f = x^{m+1-i} + sum a_j x^j + sum b_j y^j       (j <= m-i, resp. j < i)
    g = y^i       + sum c_j x^j + sum d_j y^j

and flatness of R_S/I_S (freeness with basis 1, x..x^{m-i}, y..y^{i-1}) is
equivalent to an explicit set of quadratic relations among the coefficients.
This module builds the generic pair symbolically, derives the relations by
reducing y*f and x*g into the basis, states the closed-form relation families
for cross-checking, verifies the equivalence against the linear-algebra
oracle on random Artin points, classifies punctual ideals, and describes the
punctual Hilbert scheme as a chain of rational curves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import gb, oracle
from .coeffs import CoeffAlgebra
from .gb import Poly, PolyRing
from .rings import (CUSP, NODE_ABSOLUTE, NODE_RELATIVE, CurveRing, IdealGens,
                    RingElement, substitute)

BASE_NAME = "s"


def coeff_name(letter: str, index: int, level: int | None = None) -> str:
    """Canonical flat name for a deformation coefficient, e.g. a2 or a2_1."""
    return f"{letter}{index}" if level is None else f"{letter}{index}_{level}"


def name_key(name: str):
    """Sort key (letter, level, index); the base parameter s sorts last."""
    if name == BASE_NAME:
        return ("~", 0, 0)
    head, _, lv = name.partition("_")
    return (head[0], int(lv) if lv else 0, int(head[1:]))


@dataclass(frozen=True)
class DeformShape:
    """Index data of a generic deformation of Q_i^m, optionally level-tagged."""

    m: int
    i: int
    relative: bool = False
    level: int | None = None

    def __post_init__(self):
        if self.m < 1 or not (1 <= self.i <= self.m):
            raise ValueError(f"need 1 <= i <= m, got i={self.i}, m={self.m}")

    def names_of(self, letter: str) -> list[str]:
        lo, hi = {
            "a": (0, self.m - self.i),
            "b": (1, self.i - 1),
            "c": (0, self.m - self.i),
            "d": (1, self.i - 1),
        }[letter]
        return [coeff_name(letter, j, self.level) for j in range(lo, hi + 1)]

    def name(self, letter: str, index: int) -> str:
        return coeff_name(letter, index, self.level)

    def coeff_names(self) -> tuple:
        out = []
        for letter in "abcd":
            out.extend(self.names_of(letter))
        return tuple(sorted(out, key=name_key))

    def basis(self) -> list:
        """The distinguished monomial basis 1, x..x^{m-i}, y..y^{i-1}."""
        return ([(0, 0)] + [(j, 0) for j in range(1, self.m - self.i + 1)]
                + [(0, j) for j in range(1, self.i - 1 + 1)])

    @property
    def bc_pivot(self) -> str:
        """Multiplier of g in the reduction of y*f: b_{i-1}, or a_0 when i=1."""
        return self.name("b", self.i - 1) if self.i >= 2 else self.name("a", 0)

    @property
    def cb_pivot(self) -> str:
        """Multiplier of f in the reduction of x*g: always c_{m-i}."""
        return self.name("c", self.m - self.i)


def shape_algebra(shape: DeformShape) -> CoeffAlgebra:
    names = shape.coeff_names()
    if shape.relative:
        names = names + (BASE_NAME,)
    return CoeffAlgebra.free_poly(names)


def shape_ring(shape: DeformShape, algebra: CoeffAlgebra | None = None,
               trunc: int | None = None) -> CurveRing:
    algebra = algebra or shape_algebra(shape)
    trunc = trunc or shape.m + 6
    if shape.relative:
        return CurveRing.node_relative(algebra, trunc, BASE_NAME)
    return CurveRing.node_absolute(algebra, trunc)


def generic_pair(shape: DeformShape, ring: CurveRing):
    """The generic deformation generators (f, g) in the given ring."""
    A = ring.coeff

    def poly(lead_mono, letter_x, letter_y):
        raw = {lead_mono: A.one()}
        for name, j in zip(shape.names_of(letter_x),
                           range(0, shape.m - shape.i + 1)):
            raw[(j, 0)] = A.var(name)
        for name, j in zip(shape.names_of(letter_y), range(1, shape.i)):
            raw[(0, j)] = A.var(name)
        return ring.element(raw)

    f = poly((shape.m + 1 - shape.i, 0), "a", "b")
    g = poly((0, shape.i), "c", "d")
    return f, g


def generic_ideal(shape: DeformShape, ring: CurveRing | None = None) -> IdealGens:
    ring = ring or shape_ring(shape)
    return IdealGens(ring, generic_pair(shape, ring))


def reduce_to_basis(e: RingElement, f: RingElement, g: RingElement,
                    shape: DeformShape) -> RingElement:
    """Rewrite e modulo (f, g) until supported on the distinguished basis.

    Monomials x^e with e >= deg_x f are rewritten with f, y^e with e >= i
    with g; each step strictly lowers the maximal monomial degree, so the
    loop terminates with an element in the span of the basis.
    """
    lead_x = shape.m + 1 - shape.i
    lead_y = shape.i
    ring = e.ring
    while True:
        hit = None
        for (ex, ey), c in e.terms.items():
            if ex >= lead_x or ey >= lead_y:
                if hit is None or ex + ey > hit[0] + hit[1]:
                    hit = (ex, ey)
        if hit is None:
            return e
        ex, ey = hit
        c = e.terms[hit]
        if ex >= lead_x:
            mult = ring.monomial(ex - lead_x, ey).scale(c)
            e = e - mult * f
        else:
            mult = ring.monomial(ex, ey - lead_y).scale(c)
            e = e - mult * g


class RelationSet:
    """Canonicalized polynomial equations among deformation coefficients."""

    def __init__(self, ring: PolyRing, equations):
        self.ring = ring
        self.equations = canonical_equations(equations)

    def __iter__(self):
        return iter(self.equations)

    def __len__(self):
        return len(self.equations)

    def __eq__(self, other):
        return (isinstance(other, RelationSet) and self.ring == other.ring
                and self.equations == other.equations)

    def same_ideal(self, other: "RelationSet") -> bool:
        """Do the two sets generate the same polynomial ideal?"""
        if self.ring != other.ring:
            raise ValueError("relation sets live in different rings")
        if not self.equations or not other.equations:
            return self.equations == other.equations
        n = max(len(self.ring.names), gb.DEFAULT_MAX_VARS)
        G1 = gb.buchberger(self.equations, max_vars=n)
        G2 = gb.buchberger(other.equations, max_vars=n)
        return G1.polys == G2.polys

    def contains(self, eq: Poly) -> bool:
        if eq.is_zero():
            return True
        if not self.equations:
            return False
        n = max(len(self.ring.names), gb.DEFAULT_MAX_VARS)
        return gb.normal_form(eq, gb.buchberger(self.equations, max_vars=n)).is_zero()

    def __repr__(self):
        return "RelationSet{" + "; ".join(f"{e} = 0" for e in self.equations) + "}"


def canonical_equations(equations) -> list:
    out = []
    for e in equations:
        if e.is_zero():
            continue
        e = e.monic()
        if e not in out:
            out.append(e)
    return sorted(out, key=lambda e: (e.degree(), e.ring.key(e.lm()),
                                      sorted(e.terms.items())))


def relation_ring(shape: DeformShape) -> PolyRing:
    names = shape.coeff_names()
    if shape.relative:
        names = names + (BASE_NAME,)
    return PolyRing(names)


def _cpoly_to_poly(c: dict, src: CoeffAlgebra, ring: PolyRing) -> Poly:
    terms = {}
    for mono, q in c.items():
        expo = [0] * ring.n
        for idx, e in mono:
            expo[ring._index[src.names[idx]]] = e
        terms[tuple(expo)] = q
    return ring.from_terms(terms)


def derive_flat_relations(shape: DeformShape, ring: CurveRing | None = None,
                          rring: PolyRing | None = None) -> RelationSet:
    """Coefficient equations equivalent to flatness of the generic ideal.

    y*f and x*g are reduced into the distinguished basis over the free
    coefficient ring (with xy rewritten to s in the relative case); flatness
    holds iff every basis coefficient of both residuals vanishes.  A shared
    curve ring / relation ring may be supplied when several shapes live in
    one coefficient namespace (nested flags).
    """
    ring = ring or shape_ring(shape)
    f, g = generic_pair(shape, ring)
    rring = rring or relation_ring(shape)
    eqs = []
    for residual in (reduce_to_basis(ring.y() * f, f, g, shape),
                     reduce_to_basis(ring.x() * g, f, g, shape)):
        for mono in shape.basis():
            c = residual.coefficient(*mono)
            if c:
                eqs.append(_cpoly_to_poly(c, ring.coeff, rring))
    return RelationSet(rring, eqs)


def closed_form_relations(shape: DeformShape) -> RelationSet:
    """The explicit relation families, stated directly (not derived).

    Over an absolute base the right-hand sides are zero; over a relative base
    the top products equal s and the lower ones pick up s-multiples of the
    next coefficient up.  Used as an independent cross-check of
    :func:`derive_flat_relations`.
    """
    ring = relation_ring(shape)
    v = lambda name: ring.var(name)
    m, i, rel = shape.m, shape.i, shape.relative
    s = v(BASE_NAME) if rel else ring.zero()
    pb = v(shape.bc_pivot)
    c_top = v(shape.cb_pivot)
    eqs = []
    # from y*f: lower b's, the a_0 anchor, and the b*c products
    for j in range(1, i - 1):
        eqs.append(v(shape.name("b", j)) - pb * v(shape.name("d", j + 1)))
    if i >= 2:
        eqs.append(pb * v(shape.name("d", 1)) - v(shape.name("a", 0)))
    for j in range(0, m - i):
        eqs.append(pb * v(shape.name("c", j)) - s * v(shape.name("a", j + 1)))
    eqs.append(pb * c_top - s)
    # from x*g: lower c's, the a_0 anchor, and the c*b products
    for j in range(0, m - i):
        eqs.append(v(shape.name("c", j)) - c_top * v(shape.name("a", j + 1)))
    if i >= 2:
        eqs.append(c_top * v(shape.name("a", 0)) - s * v(shape.name("d", 1)))
    else:
        eqs.append(c_top * v(shape.name("a", 0)) - s)
    for j in range(1, i - 1):
        eqs.append(c_top * v(shape.name("b", j)) - s * v(shape.name("d", j + 1)))
    if i >= 2:
        eqs.append(c_top * v(shape.name("b", i - 1)) - s)
    return RelationSet(ring, eqs)


# -- random validation against the oracle ------------------------------------

def sample_pool(S: CoeffAlgebra) -> list:
    """Small fixed set of maximal-ideal elements to draw coefficients from."""
    ps = [S.var(n) for n in S.names[:2]]
    pool = [S.zero()]
    for p in ps:
        pool.extend([p, S.cneg(p)])
    if len(ps) >= 2:
        u, v = ps[0], ps[1]
        pool.extend([S.cadd(u, v), S.cmul(u, u), S.cmul(u, v), S.cmul(v, v)])
    return pool


def _specialized_ideal(shape: DeformShape, assignment: dict, S: CoeffAlgebra) -> IdealGens:
    ring = shape_ring(shape)
    f, g = generic_pair(shape, ring)
    fs = substitute(f, assignment, S)
    gs = substitute(g, assignment, S, target_ring=fs.ring)
    return IdealGens(fs.ring, [fs, gs])


def _relations_hold(relations: RelationSet, assignment: dict, S: CoeffAlgebra) -> bool:
    return all(S.is_zero(eq.evaluate(assignment, S)) for eq in relations)


def flat_point(shape: DeformShape, assignment: dict, S: CoeffAlgebra) -> bool:
    """Oracle verdict: is the specialized ideal a flat deformation?"""
    I = _specialized_ideal(shape, assignment, S)
    return oracle.s_free_rank(I, shape.basis())


def solve_relations(shape: DeformShape, free: dict, S: CoeffAlgebra,
                    zero_side: str | None = None) -> dict:
    """Extend free coordinates to a full point of the relation variety.

    ``free`` assigns the independent coordinates a_1..a_{m-i}, d_1..d_{i-1},
    the b-pivot and the c-pivot; the remaining coefficients are recovered
    from the relations.  Over an absolute base one pivot must vanish:
    ``zero_side`` picks "b" or "c".
    """
    m, i = shape.m, shape.i
    vals = {n: dict(c) for n, c in free.items()}
    if not shape.relative:
        vals[{"b": shape.bc_pivot, "c": shape.cb_pivot}[zero_side]] = S.zero()
    pb = vals[shape.bc_pivot]
    ct = vals[shape.cb_pivot]
    if i >= 2:
        vals[shape.name("a", 0)] = S.cmul(pb, vals[shape.name("d", 1)])
        for j in range(1, i - 1):
            vals[shape.name("b", j)] = S.cmul(pb, vals[shape.name("d", j + 1)])
    for j in range(0, m - i):
        vals[shape.name("c", j)] = S.cmul(ct, vals[shape.name("a", j + 1)])
    if shape.relative:
        vals[BASE_NAME] = S.cmul(pb, ct)
    return vals


def free_coordinate_names(shape: DeformShape) -> list[str]:
    names = [shape.name("a", j) for j in range(1, shape.m - shape.i + 1)]
    names += [shape.name("d", j) for j in range(1, shape.i)]
    names.append(shape.bc_pivot)
    if shape.cb_pivot not in names:
        names.append(shape.cb_pivot)
    return names


def verify_flat_iff(shape: DeformShape, S: CoeffAlgebra, trials: int = 25,
                    seed: int = 0) -> dict:
    """Randomized equivalence check: derived relations <=> oracle flatness.

    Each arbitrary sample tests both directions (a flat point must satisfy
    the relations, a relation point must be flat); constructed points of the
    relation variety additionally exercise sufficiency directly.
    """
    rng = random.Random(seed)
    relations = derive_flat_relations(shape)
    pool = sample_pool(S)
    names = list(shape.coeff_names())
    if shape.relative:
        names.append(BASE_NAME)
    report = {
        "shape": {"m": shape.m, "i": shape.i, "relative": shape.relative},
        "seed": seed,
        "arbitrary": {"sampled": 0, "flat": 0, "relations_hold": 0},
        "constructed": {"sampled": 0, "flat": 0},
        "counterexamples": [],
    }
    for _ in range(trials):
        assignment = {n: dict(rng.choice(pool)) for n in names}
        holds = _relations_hold(relations, assignment, S)
        flat = flat_point(shape, assignment, S)
        report["arbitrary"]["sampled"] += 1
        report["arbitrary"]["flat"] += flat
        report["arbitrary"]["relations_hold"] += holds
        if holds != flat:
            report["counterexamples"].append({
                "direction": "relations-without-flatness" if holds else "flat-without-relations",
                "assignment": {n: S.format(v) for n, v in assignment.items()},
            })
    for _ in range(trials):
        free = {n: dict(rng.choice(pool)) for n in free_coordinate_names(shape)}
        zero_side = None if shape.relative else rng.choice("bc")
        assignment = solve_relations(shape, free, S, zero_side)
        if not _relations_hold(relations, assignment, S):
            report["counterexamples"].append({
                "direction": "constructed-point-misses-relations",
                "assignment": {n: S.format(v) for n, v in assignment.items()},
            })
            continue
        flat = flat_point(shape, assignment, S)
        report["constructed"]["sampled"] += 1
        report["constructed"]["flat"] += flat
        if not flat:
            report["counterexamples"].append({
                "direction": "relations-without-flatness",
                "assignment": {n: S.format(v) for n, v in assignment.items()},
            })
    report["ok"] = not report["counterexamples"]
    return report


# -- classification of punctual ideals ---------------------------------------

@dataclass(frozen=True)
class NodeIdealClass:
    kind: str  # "type-c" | "type-q" | "not-punctual"
    m: int | None = None
    i: int | None = None
    a: Fraction | None = None

    def as_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.m is not None:
            out["m"] = self.m
        if self.i is not None:
            out["i"] = self.i
        if self.a is not None:
            out["a"] = str(self.a)
        return out


def default_node_ring(m: int) -> CurveRing:
    return CurveRing.node_absolute(CoeffAlgebra.rationals(), 2 * m + 8)


def q_ideal(m: int, i: int, ring: CurveRing | None = None) -> IdealGens:
    """Q_i^m = (x^{m+1-i}, y^i)."""
    if not 1 <= i <= m:
        raise ValueError(f"Q_i^m needs 1 <= i <= m, got i={i}, m={m}")
    ring = ring or default_node_ring(m)
    return IdealGens(ring, [ring.x(m + 1 - i), ring.y(i)])


def c_ideal(m: int, i: int, a, ring: CurveRing | None = None) -> IdealGens:
    """The principal ideal (y^i + a x^{m-i}) of colength m, a != 0."""
    a = Fraction(a)
    if not 1 <= i <= m - 1:
        raise ValueError(f"type-c needs 1 <= i <= m-1, got i={i}, m={m}")
    if not a:
        raise ValueError("type-c parameter must be nonzero")
    ring = ring or default_node_ring(m)
    return IdealGens(ring, [ring.y(i) + ring.x(m - i).scale(a)])


def classify_node_ideal(I: IdealGens) -> NodeIdealClass:
    """Identify a finite-colength ideal of the absolute node ring over Q."""
    if I.ring.kind != NODE_ABSOLUTE:
        raise ValueError("classification is for the absolute node ring")
    for g in I.gens:
        if not I.ring.coeff.is_zero(g.coefficient(0, 0)):
            return NodeIdealClass("not-punctual")
    m = oracle.colength(I)
    for i in range(1, m + 1):
        if oracle.ideal_equal(I, q_ideal(m, i, I.ring)):
            return NodeIdealClass("type-q", m=m, i=i)
    for i in range(1, m):
        a = _principal_parameter(I, i, m)
        if a is not None and a != 0 and oracle.ideal_equal(I, c_ideal(m, i, a, I.ring)):
            return NodeIdealClass("type-c", m=m, i=i, a=a)
    raise oracle.OracleError(f"ideal {I!r} did not match any classification case")


def _principal_parameter(I: IdealGens, i: int, m: int):
    """The a with y^i + a*x^{m-i} in I, if one exists."""
    D = max(oracle._initial_trunc(I), m + 4)
    space, flat = oracle.row_space(I, D)
    ring_d = I.at_truncation(D).ring
    r1 = space.reduce_fraction_row(flat.row_of(ring_d.y(i)))
    r2 = space.reduce_fraction_row(flat.row_of(ring_d.x(m - i)))
    if not r1 or not r2 or set(r1) != set(r2):
        return None
    ratios = {-r1[c] / r2[c] for c in r1}
    return ratios.pop() if len(ratios) == 1 else None


# -- the punctual Hilbert scheme as a chain ----------------------------------

@dataclass
class ChainComponent:
    """One rational component C_i^m, parametrized by a != 0."""

    m: int
    i: int
    ring: CurveRing

    def ideal_at(self, a) -> IdealGens:
        return c_ideal(self.m, self.i, a, self.ring)

    @property
    def label(self) -> str:
        return f"C_{self.i}^{self.m}"


@dataclass
class ChainDescription:
    m: int
    components: list = field(default_factory=list)
    gluing_points: list = field(default_factory=list)  # (label, IdealGens)


def punctual_chain(m: int) -> ChainDescription:
    """The punctual Hilbert scheme of the node as an ordered chain.

    Components C_1^m..C_{m-1}^m; consecutive components C_i, C_{i+1} meet at
    the monomial ideal Q_{i+1}^m.
    """
    if m < 2:
        raise ValueError("the chain description needs m >= 2")
    ring = default_node_ring(m)
    chain = ChainDescription(m=m)
    chain.components = [ChainComponent(m, i, ring) for i in range(1, m)]
    chain.gluing_points = [(f"Q_{i}^{m}", q_ideal(m, i, ring))
                           for i in range(2, m)]
    return chain
