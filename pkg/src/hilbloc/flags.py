"""Local models of nested chains of flat deformations in the node ring.

A flag pattern records a chain Q_{i_0}^m > Q_{i_1}^{m-1} > ... of monomial
ideals whose colengths drop by one and whose lower indices drop by zero or
one.  The chain decomposes into blocks: maximal constant runs of length at
least two are A-blocks, the leftover levels form B-blocks (strictly
decreasing runs).

Two independent routes to a local model of the (relative) flag Hilbert
scheme at such a chain are implemented:

* :func:`local_model` — collect every level's flatness relations and every
  consecutive pair's nesting relations, then run a deterministic linear
  elimination down to a designated retained parameter set;
* :func:`expected_model` — emit the cataloged closed-form equations per
  block boundary ([AAB]/[AAC] between consecutive A-blocks, [ABC] entering a
  B-block, [BAB] leaving one), with auxiliary substitutions for the
  eliminated top coefficients expanded eagerly.

The two are compared as ideals, certified as local complete intersections,
and validated pointwise against the linear-algebra oracle on random Artin
points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce as _reduce

from . import gb, oracle
from .coeffs import CoeffAlgebra
from .gb import Poly, PolyRing
from .linalg import solve_linear
from .node import (BASE_NAME, DeformShape, RelationSet, canonical_equations,
                   closed_form_relations, coeff_name, _cpoly_to_poly,
                   derive_flat_relations, free_coordinate_names, generic_pair,
                   name_key, reduce_to_basis, sample_pool, solve_relations)
from .rings import CurveRing, IdealGens, RingElement, substitute


class EliminationStall(Exception):
    """A non-retained variable survives with no linear defining relation."""


# -- patterns and block structure --------------------------------------------

@dataclass(frozen=True)
class FlagPattern:
    """Chain (Q_{i_0}^m, Q_{i_1}^{m-1}, ..., Q_{i_{n-1}}^{m-n+1})."""

    m: int
    indices: tuple

    def __init__(self, m: int, indices):
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "indices", tuple(indices))
        for k, i in enumerate(self.indices):
            if not 1 <= i <= m - k:
                raise ValueError(f"level {k}: need 1 <= i <= {m - k}, got {i}")
        for a, b in zip(self.indices, self.indices[1:]):
            if a - b not in (0, 1):
                raise ValueError("lower indices must drop by 0 or 1 per level")

    @property
    def length(self) -> int:
        return len(self.indices)

    def colength(self, level: int) -> int:
        return self.m - level

    def blocks(self) -> list:
        """Partition of levels into ("A"|"B", first, last), A-runs maximal."""
        n = self.length
        out = []
        k = 0
        while k < n:
            run = k
            while run + 1 < n and self.indices[run + 1] == self.indices[run]:
                run += 1
            if run > k:  # constant run of length >= 2: an A-block
                out.append(("A", k, run))
                k = run + 1
            else:  # strictly decreasing leftover: extend the current B-block
                if out and out[-1][0] == "B":
                    kind, f, _ = out[-1]
                    # only merge if the next level is not the start of an A-run
                    out[-1] = ("B", f, k)
                else:
                    out.append(("B", k, k))
                k += 1
        return out

    def block_word(self) -> list:
        return [(kind, last - first + 1) for kind, first, last in self.blocks()]

    def shapes(self) -> list:
        return [DeformShape(self.m - k, i, relative=True, level=k)
                for k, i in enumerate(self.indices)]

    def label(self) -> str:
        return "(" + ", ".join(f"Q_{i}^{self.m - k}"
                               for k, i in enumerate(self.indices)) + ")"


def chain_algebra(pattern: FlagPattern) -> CoeffAlgebra:
    names = set()
    for shape in pattern.shapes():
        names.update(shape.coeff_names())
    names.add(BASE_NAME)
    return CoeffAlgebra.free_poly(sorted(names, key=name_key))


def chain_ring(pattern: FlagPattern, algebra: CoeffAlgebra | None = None) -> CurveRing:
    algebra = algebra or chain_algebra(pattern)
    return CurveRing.node_relative(algebra, pattern.m + 6, BASE_NAME)


def chain_poly_ring(pattern: FlagPattern) -> PolyRing:
    return PolyRing(chain_algebra(pattern).names)


# -- nesting relations --------------------------------------------------------

def derive_nesting_relations(outer: DeformShape, inner: DeformShape,
                             ring: CurveRing | None = None,
                             rring: PolyRing | None = None) -> RelationSet:
    """Coefficient equations for containment of the outer generic ideal in
    the inner one.

    The outer generators are reduced modulo the inner generic pair into the
    inner monomial basis; containment holds iff every residual coefficient
    vanishes.
    """
    if inner.m != outer.m - 1 or outer.i - inner.i not in (0, 1):
        raise ValueError("inner shape must drop colength by 1 and index by 0 or 1")
    if ring is None or rring is None:
        pat = FlagPattern(outer.m, (outer.i, inner.i))
        sh = pat.shapes()
        outer, inner = sh[0], sh[1]
        ring = chain_ring(pat)
        rring = chain_poly_ring(pat)
    fo, go = generic_pair(outer, ring)
    fi, gi = generic_pair(inner, ring)
    eqs = []
    for e in (fo, go):
        residual = reduce_to_basis(e, fi, gi, inner)
        for mono in inner.basis():
            c = residual.coefficient(*mono)
            if c:
                eqs.append(_cpoly_to_poly(c, ring.coeff, rring))
    return RelationSet(rring, eqs)


def derived_consequences(relations: RelationSet, flatness: RelationSet | None = None) -> RelationSet:
    """Close a nesting relation set under both levels' flatness relations.

    Each flatness equation is reduced modulo the nesting relations; nonzero
    residues (formal consequences such as the product expression for s) are
    appended and the whole set re-canonicalized.
    """
    if not relations.equations:
        return relations
    extra = []
    if flatness is not None and flatness.equations:
        n = max(relations.ring.n, gb.DEFAULT_MAX_VARS)
        G = gb.buchberger(relations.equations, max_vars=n)
        for eq in flatness:
            r = gb.normal_form(eq, G)
            if not r.is_zero():
                extra.append(r)
    return RelationSet(relations.ring, list(relations.equations) + extra)


# -- local models -------------------------------------------------------------

@dataclass
class LocalModel:
    pattern: FlagPattern
    params: list  # ordered retained coefficient names
    ring: PolyRing  # polynomial ring on the retained parameters
    equations: list  # residual equations (Poly in `ring`)
    trace: list = field(default_factory=list)  # (eliminated var, Poly expr)
    relative: bool = True

    @property
    def ambient_dim(self) -> int:
        return len(self.params)

    def __repr__(self):
        eqs = "; ".join(f"{e} = 0" for e in self.equations) or "smooth"
        return f"LocalModel[{self.pattern.label()}; dim {self.ambient_dim}; {eqs}]"


def retained_params(pattern: FlagPattern) -> list:
    """The designated retained coordinates, from the per-block recipe.

    Level 0 keeps its top pair (a, c in an A-block, b, d in a B-block); the
    first level of every later A-block keeps top a and top c; the last level
    of every non-final A-block keeps top d and top b; interior A-levels keep
    top a; B-levels keep top d; the final level keeps all its a's and d's
    plus top b (final block A) or top c (final block B).
    """
    n = pattern.length
    blocks = pattern.blocks()
    shapes = pattern.shapes()
    final_kind = blocks[-1][0]
    kept: list[str] = []

    def a_top(lv):
        return coeff_name("a", pattern.colength(lv) - pattern.indices[lv], lv)

    def c_top(lv):
        return coeff_name("c", pattern.colength(lv) - pattern.indices[lv], lv)

    def b_top(lv):
        # the y-side pivot; degenerates to a_0 when the lower index is 1
        return shapes[lv].bc_pivot

    def d_top(lv):
        if pattern.indices[lv] < 2:
            return None
        return coeff_name("d", pattern.indices[lv] - 1, lv)

    for kind, first, last in blocks:
        for lv in range(first, last + 1):
            if lv == n - 1:
                i_f = pattern.indices[lv]
                kept.extend(coeff_name("a", j, lv)
                            for j in range(1, pattern.colength(lv) - i_f + 1))
                kept.extend(coeff_name("d", j, lv) for j in range(1, i_f))
                kept.append(b_top(lv) if final_kind == "A" else c_top(lv))
                if lv == 0 and kind == "B":
                    kept.extend(x for x in (d_top(lv),) if x)
                    kept.append(b_top(lv) if final_kind != "A" else c_top(lv))
            elif kind == "A":
                if lv == first:
                    kept.extend([a_top(lv), c_top(lv)])
                elif lv == last:
                    kept.extend(x for x in (d_top(lv), b_top(lv)) if x)
                else:
                    kept.append(a_top(lv))
            else:  # B-block level
                if lv == 0:
                    kept.extend(x for x in (b_top(lv), d_top(lv)) if x)
                else:
                    kept.extend(x for x in (d_top(lv),) if x)
    return sorted(set(kept), key=name_key)


def _eliminate(equations: list, retained: set, ring: PolyRing):
    """Deterministic linear elimination of all non-retained variables.

    Among all (equation, variable) pairs where a non-retained variable
    occurs exactly once, linearly, with constant coefficient, always
    eliminate the variable with the smallest canonical name; the base
    parameter s sorts last and is therefore eliminated last.
    """
    work = [e for e in equations if not e.is_zero()]
    trace = []
    while True:
        candidates = {}
        for idx, e in enumerate(work):
            for v in e.variables():
                if v in retained or v in candidates:
                    continue
                split = e.coefficient_of_var(v)
                if split is not None:
                    candidates.setdefault(v, (idx, split))
        if not candidates:
            break
        v = min(candidates, key=name_key)
        idx, (q, rest) = candidates[v]
        expr = rest.scale(-1 / q)
        trace.append((v, expr))
        nxt = []
        for j, e in enumerate(work):
            if j == idx:
                continue
            e = e.substitute(v, expr)
            if not e.is_zero():
                nxt.append(e)
        work = nxt
    leftover = set()
    for e in work:
        leftover.update(x for x in e.variables() if x not in retained)
    if leftover:
        raise EliminationStall(
            "no linear relation eliminates " + ", ".join(sorted(leftover, key=name_key)))
    return work, trace


def _prune_redundant(equations: list, max_vars: int) -> list:
    """Minimal generating subset: simplest equations first, the rest dropped
    when they reduce to zero, then a leave-one-out sweep of the survivors."""
    eqs = canonical_equations(equations)
    eqs.sort(key=lambda e: (e.degree(), len(e.terms), sorted(e.terms.items())))
    try:
        kept = []
        G = None
        for e in eqs:
            if kept:
                if G is None:
                    G = gb.buchberger(kept, max_vars=max_vars)
                if gb.normal_form(e, G).is_zero():
                    continue
            kept.append(e)
            G = None
        changed = True
        while changed and len(kept) > 1:
            changed = False
            for k, e in enumerate(kept):
                rest = kept[:k] + kept[k + 1:]
                Gr = gb.buchberger(rest, max_vars=max_vars)
                if gb.normal_form(e, Gr).is_zero():
                    kept = rest
                    changed = True
                    break
    except gb.VariableCapError:
        return eqs
    return canonical_equations(kept)


def _restrict(p: Poly, target: PolyRing) -> Poly:
    src = p.ring
    terms = {}
    for mono, q in p.terms.items():
        expo = [0] * target.n
        for i, e in enumerate(mono):
            if e:
                expo[target._index[src.names[i]]] = e
        terms[tuple(expo)] = q
    return target.from_terms(terms)


def local_model(pattern: FlagPattern, relative: bool = True) -> LocalModel:
    """Derive the local model by elimination from first principles.

    All flatness and nesting relations of the chain are collected in one
    polynomial ring; non-retained variables (s last) are eliminated through
    their linear defining relations; the surviving equations, rewritten in
    the retained coordinates, form the model.  The absolute model appends
    the eliminated product expression for s, evaluated at s = 0.
    """
    shapes = pattern.shapes()
    algebra = chain_algebra(pattern)
    ring = chain_ring(pattern, algebra)
    rring = PolyRing(algebra.names)
    eqs = []
    for shape in shapes:
        eqs.extend(derive_flat_relations(shape, ring, rring).equations)
    for outer, inner in zip(shapes, shapes[1:]):
        eqs.extend(derive_nesting_relations(outer, inner, ring, rring).equations)
    retained = retained_params(pattern)
    while True:
        try:
            residual, trace = _eliminate(eqs, set(retained), rring)
            break
        except EliminationStall as stall:
            # degenerate index ranges can leave a variable with no linear
            # defining relation; promote the smallest such variable
            stuck = str(stall).split("eliminates ", 1)[1].split(", ")
            retained = sorted(set(retained) | {stuck[0]}, key=name_key)
    if not relative:
        for v, expr in trace:
            if v == BASE_NAME:
                residual = residual + [expr]
                break
        else:
            raise ValueError("relative chain did not eliminate s")
    model_ring = PolyRing(tuple(retained))
    equations = _prune_redundant(
        [_restrict(e, model_ring) for e in residual],
        max_vars=max(len(retained), gb.DEFAULT_MAX_VARS))
    return LocalModel(pattern=pattern, params=retained, ring=model_ring,
                      equations=equations, trace=trace, relative=relative)


# -- the cataloged expected models -------------------------------------------

def expected_model(pattern: FlagPattern) -> LocalModel:
    """The closed-form relative local model, from the block catalog.

    Per pair of consecutive A-blocks two equations ([AAB], [AAC]); per
    B-block one equation for the A-block before it ([ABC]) and one for the
    A-block after it ([BAB]).  Step factors are differences of consecutive
    top coefficients; eliminated tops (the top a of a non-final A-block's
    last level, the top d of a later A-block's first level) are replaced by
    their auxiliary summation expressions, expanded eagerly.
    """
    n = pattern.length
    blocks = pattern.blocks()
    retained = retained_params(pattern)
    ring = PolyRing(tuple(retained))
    retained_set = set(retained)
    idx = pattern.indices

    def M(lv):
        return pattern.colength(lv) - idx[lv]

    def var(letter, j, lv):
        name = coeff_name(letter, j, lv)
        if letter in "bd" and j < 1:
            raise KeyError(name)
        try:
            return ring.var(name)
        except KeyError:
            raise KeyError(name)

    def block_of(lv):
        for blk in blocks:
            if blk[1] <= lv <= blk[2]:
                return blk
        raise AssertionError

    def a_top(lv) -> Poly:
        name = coeff_name("a", M(lv), lv)
        if name in retained_set:
            return ring.var(name)
        # eliminated: lv is the last level of a non-final A-block
        kind, first, last = block_of(lv + 1)
        if kind == "A":
            return var("a", M(lv + 1), lv + 1) + \
                var("b", idx[lv] - 1, lv) * var("c", M(lv + 1), lv + 1)
        # next block is a B-block P..Q; its c-anchor sits at R
        P, Q = first, last
        R = n - 1 if Q == n - 1 else Q + 1
        steps = list(range(P, R + 1))
        acc = ring.zero()
        for leave_out in steps:
            term = ring.one()
            for j in steps:
                if j != leave_out:
                    term = term * delta(j)
            acc = acc + term
        return var("a", M(R), R) + acc * var("b", idx[lv] - 1, lv) * var("c", M(R), R)

    def d_top(lv) -> Poly:
        name = coeff_name("d", idx[lv] - 1, lv)
        if name in retained_set:
            return ring.var(name)
        # eliminated: lv is the first level of a later A-block first..last
        kind, first, last = block_of(lv)
        steps = list(range(lv + 1, last + 1))
        acc = ring.zero()
        for leave_out in steps:
            term = ring.one()
            for j in steps:
                if j != leave_out:
                    term = term * alpha(j)
            acc = acc + term
        return var("d", idx[last] - 1, last) + \
            acc * var("c", M(lv), lv) * var("b", idx[last] - 1, last)

    def alpha(j) -> Poly:
        """Step factor between levels j-1, j of equal index."""
        return a_top(j - 1) - a_top(j)

    def delta(j) -> Poly:
        """Step factor between levels j-1, j of dropping index."""
        return d_top(j - 1) - d_top(j)

    def product(factors) -> Poly:
        return _reduce(lambda p, q: p * q, factors, ring.one())

    try:
        equations = []
        for blk, nxt in zip(blocks, blocks[1:]):
            if blk[0] == "A" and nxt[0] == "A":
                F, e = blk[1], blk[2]
                S, L = nxt[1], nxt[2]
                equations.append(
                    delta(S) * var("b", idx[e] - 1, e)
                    - product(alpha(j) for j in range(S + 1, L + 1)) * var("b", idx[L] - 1, L))
                equations.append(
                    delta(S) * var("c", M(S), S)
                    - product(alpha(j) for j in range(F + 1, e + 1)) * var("c", M(F), F))
        for pos, blk in enumerate(blocks):
            if blk[0] != "B":
                continue
            P, Q = blk[1], blk[2]
            if pos > 0 and blocks[pos - 1][0] == "A":
                F = blocks[pos - 1][1]
                R = n - 1 if Q == n - 1 else Q + 1
                equations.append(
                    product(delta(j) for j in range(P, R + 1)) * var("c", M(R), R)
                    - product(alpha(j) for j in range(F + 1, P)) * var("c", M(F), F))
            if pos + 1 < len(blocks) and blocks[pos + 1][0] == "A":
                S, L2 = blocks[pos + 1][1], blocks[pos + 1][2]
                anchor = var("b", idx[P - 1] - 1, P - 1) if P > 0 else var("b", idx[0] - 1, 0)
                equations.append(
                    product(delta(j) for j in range(max(P, 1), S + 1)) * anchor
                    - product(alpha(j) for j in range(S + 1, L2 + 1)) * var("b", idx[L2] - 1, L2))
    except KeyError as missing:
        raise ValueError(
            f"pattern {pattern.label()} is outside the cataloged model "
            f"families (needs nonexistent coefficient {missing})")
    return LocalModel(pattern=pattern, params=retained, ring=ring,
                      equations=canonical_equations(equations), relative=True)


def models_equivalent(derived: LocalModel, expected: LocalModel) -> bool:
    """Do the two models cut out the same ideal in the retained coordinates?"""
    if derived.params != expected.params:
        raise ValueError("models use different retained parameter sets")
    a, b = derived.equations, expected.equations
    if not a or not b:
        return bool(a) == bool(b)
    n = max(len(derived.params), gb.DEFAULT_MAX_VARS)
    return gb.buchberger(a, max_vars=n).polys == gb.buchberger(b, max_vars=n).polys


def check_lci(model: LocalModel, max_vars: int | None = None):
    """Is the model a local complete intersection?

    True for the smooth (equation-free) case; otherwise the equations must
    form a regular sequence and cut the dimension by exactly their number.
    Returns None when the variable cap rules out the computation.
    """
    if not model.equations:
        return True
    cap = max_vars or gb.DEFAULT_MAX_VARS
    try:
        if not gb.is_regular_sequence(model.equations, max_vars=cap):
            return False
        G = gb.buchberger(model.equations, max_vars=cap)
        return gb.ideal_dim(G, max_vars=cap) == len(model.params) - len(model.equations)
    except gb.VariableCapError:
        return None


# -- pointwise validation against the oracle ----------------------------------

def _assignment_from_point(model: LocalModel, point: dict, S: CoeffAlgebra) -> dict:
    """Extend retained-coordinate values to all chain coefficients by
    replaying the elimination trace backwards."""
    values = dict(point)
    for v, expr in reversed(model.trace):
        values[v] = expr.evaluate(values, S)
    return values


def _chain_ideals(pattern: FlagPattern, assignment: dict, S: CoeffAlgebra) -> list:
    ring = chain_ring(pattern)
    out = []
    target_ring = None
    for shape in pattern.shapes():
        f, g = generic_pair(shape, ring)
        fs = substitute(f, assignment, S, target_ring=target_ring)
        target_ring = fs.ring
        gs = substitute(g, assignment, S, target_ring=target_ring)
        out.append(IdealGens(target_ring, [fs, gs]))
    return out


def _chain_passes_oracle(pattern: FlagPattern, ideals: list) -> bool:
    for shape, I in zip(pattern.shapes(), ideals):
        if not oracle.s_free_rank(I, shape.basis()):
            return False
    for outer, inner in zip(ideals, ideals[1:]):
        if not all(oracle.member(g, inner) for g in outer.gens):
            return False
    return True


def _full_names(pattern: FlagPattern) -> list:
    return list(chain_algebra(pattern).names)


def validate_model_points(pattern: FlagPattern, model: LocalModel,
                          S: CoeffAlgebra, trials: int = 20, seed: int = 0,
                          attempts_per_trial: int = 200) -> dict:
    """Randomized two-way check of a derived model against the oracle.

    Forward: random model points (retained coordinates satisfying the
    residual equations, the rest recovered from the trace) must give chains
    in which every level is flat and consecutively nested.  Backward: chains
    built level-by-level by the multiplicative nesting construction must
    satisfy every model equation.  Perturbation: adding a unit-free nilpotent
    to one eliminated coefficient must be rejected by the oracle.
    """
    rng = random.Random(seed)
    pool = sample_pool(S)
    report = {
        "pattern": pattern.label(),
        "seed": seed,
        "forward": {"points": 0, "passes": 0, "sampling_failures": 0},
        "backward": {"points": 0, "passes": 0, "sampling_failures": 0},
        "perturbation": {"points": 0, "rejections": 0},
        "counterexamples": [],
    }

    def sample_model_point():
        for _ in range(attempts_per_trial):
            point = {p: dict(rng.choice(pool)) for p in model.params}
            if all(S.is_zero(e.evaluate(point, S)) for e in model.equations):
                return point
        return None

    last_good = None
    for _ in range(trials):
        point = sample_model_point()
        if point is None:
            report["forward"]["sampling_failures"] += 1
            continue
        assignment = _assignment_from_point(model, point, S)
        ideals = _chain_ideals(pattern, assignment, S)
        ok = _chain_passes_oracle(pattern, ideals)
        report["forward"]["points"] += 1
        report["forward"]["passes"] += ok
        if ok:
            last_good = assignment
        else:
            report["counterexamples"].append(
                {"direction": "model-point-fails-oracle",
                 "point": {k: S.format(v) for k, v in point.items()}})
    for _ in range(trials):
        assignment = _backward_chain(pattern, rng, pool, S)
        if assignment is None:
            report["backward"]["sampling_failures"] += 1
            continue
        report["backward"]["points"] += 1
        good = all(S.is_zero(_restrict_eval(e, assignment, S)) for e in model.equations)
        report["backward"]["passes"] += good
        if not good:
            report["counterexamples"].append(
                {"direction": "oracle-chain-fails-model",
                 "assignment": {k: S.format(v) for k, v in assignment.items()}})
    if last_good is not None and model.trace:
        u = S.var(S.names[0])
        for v, _ in model.trace:
            perturbed = dict(last_good)
            perturbed[v] = S.cadd(perturbed[v], u)
            ideals = _chain_ideals(pattern, perturbed, S)
            report["perturbation"]["points"] += 1
            rejected = not _chain_passes_oracle(pattern, ideals)
            report["perturbation"]["rejections"] += rejected
            if not rejected:
                report["counterexamples"].append(
                    {"direction": "perturbed-point-accepted", "variable": v})
            break
    report["ok"] = not report["counterexamples"]
    return report


def _restrict_eval(e: Poly, assignment: dict, S: CoeffAlgebra):
    return e.evaluate(assignment, S)


def _read_coeffs(shape, fn, gn, S: CoeffAlgebra) -> dict:
    vals = {}
    for letter, src in (("a", fn), ("b", fn), ("c", gn), ("d", gn)):
        for nm in shape.names_of(letter):
            j = int(nm[1:].partition("_")[0])
            mono = (j, 0) if letter in "ac" else (0, j)
            vals[nm] = src.coefficient(mono[0], mono[1]) or S.zero()
    return vals


def _solve_step_param(shape, build, s_val, S: CoeffAlgebra):
    """Value of the dependent nesting parameter making the outer level flat.

    ``build(u)`` produces the outer generator pair; its coefficients are
    affine-linear in ``u`` (the parameter multiplies the fixed inner
    generator), and every closed-form relation has at most one coefficient of
    each generator per term, so the relations are linear in ``u``.  Solve for
    ``u`` in the maximal ideal of S, or return None if no value works.
    """
    rels = list(closed_form_relations(shape))
    unknowns = [b for b in S.monomial_basis() if b]  # maximal-ideal monomials

    def residuals(u):
        fn, gn = build(u)
        asg = _read_coeffs(shape, fn, gn, S)
        asg[BASE_NAME] = s_val
        return [eq.evaluate(asg, S) for eq in rels]

    base = residuals(S.zero())
    diffs = []
    for b in unknowns:
        col = residuals({b: Fraction(1)})
        diffs.append([S.cadd(c, S.cneg(r0)) for c, r0 in zip(col, base)])
    rows, rhs = [], []
    for r, r0 in enumerate(base):
        for beta in S.monomial_basis():
            row = {k: diffs[k][r].get(beta, 0) for k in range(len(unknowns))}
            row = {k: v for k, v in row.items() if v}
            b0 = r0.get(beta, 0)
            if row or b0:
                rows.append(row)
                rhs.append(-b0)
    sol = solve_linear(rows, rhs, len(unknowns))
    if sol is None:
        return None
    u = {b: q for b, q in zip(unknowns, sol) if q}
    if any(not S.is_zero(r) for r in residuals(u)):
        return None
    return u


def _backward_chain(pattern: FlagPattern, rng, pool, S: CoeffAlgebra,
                    step_attempts: int = 8, chain_attempts: int = 10):
    """Build a nested flat chain multiplicatively and read off coefficients.

    The innermost ideal is sampled from its relation variety; each outer
    level is (x+t)f', g'+wf' on an equal-index step and f'+tg', (y+w)g' on a
    dropping step.  One step parameter is sampled freely; the companion is
    solved from the outer level's flatness relations (it is constrained: the
    nesting projection adds exactly one modulus per level).  The chain is
    oracle-checked and rejected on failure.  Not every inner sample extends
    to a full chain (extendability constrains the inner point), so a few
    fresh starts are attempted before giving up.
    """
    for _ in range(chain_attempts):
        assignment = _backward_chain_once(pattern, rng, pool, S, step_attempts)
        if assignment is not None:
            return assignment
    return None


def _backward_chain_once(pattern: FlagPattern, rng, pool, S: CoeffAlgebra,
                         step_attempts: int):
    shapes = pattern.shapes()
    inner = shapes[-1]
    free = {nm: dict(rng.choice(pool)) for nm in free_coordinate_names(inner)}
    inner_vals = solve_relations(inner, free, S)
    s_val = inner_vals[BASE_NAME]
    ring = chain_ring(pattern)
    f, g = generic_pair(inner, ring)
    sub = dict(inner_vals)
    for nm in ring.coeff.names:
        sub.setdefault(nm, S.zero())
    fS = substitute(f, sub, S)
    target = fS.ring
    gS = substitute(g, sub, S, target_ring=target)
    assignment = dict(inner_vals)
    pairs = [(fS, gS)]
    for level in range(pattern.length - 2, -1, -1):
        fp, gp = pairs[-1]
        shape = shapes[level]
        equal_step = pattern.indices[level] == pattern.indices[level + 1]
        step = None
        for _ in range(step_attempts):
            t = rng.choice(pool)
            if equal_step:
                # f gains the factor (x+t); the g-side correction w is solved
                build = lambda u, t=t: (
                    (target.x() + target.one().scale(t)) * fp,
                    gp + fp.scale(u))
            else:
                # g gains the factor (y+t); the f-side correction w is solved
                build = lambda u, t=t: (
                    fp + gp.scale(u),
                    (target.y() + target.one().scale(t)) * gp)
            w = _solve_step_param(shape, build, s_val, S)
            if w is not None:
                step = build(w)
                break
        if step is None:
            return None
        fn, gn = step
        pairs.append((fn, gn))
        assignment.update(_read_coeffs(shape, fn, gn, S))
    ideals = [IdealGens(target, [fk, gk]) for fk, gk in reversed(pairs)]
    for shape, I in zip(shapes, ideals):
        if not oracle.s_free_rank(I, shape.basis()):
            return None
    assignment[BASE_NAME] = s_val
    return assignment


# -- strata enumeration -------------------------------------------------------

def enumerate_strata(m: int, depth: int) -> list:
    """All admissible index chains of the given depth, as patterns."""
    if depth > m:
        raise ValueError("depth cannot exceed m")
    # the top level must lie on a one-parameter component, so i_0 < m
    chains = [[i] for i in range(1, m)] if depth >= 1 else [[]]
    for level in range(1, depth):
        nxt = []
        for ch in chains:
            for i in (ch[-1], ch[-1] - 1):
                if 1 <= i <= m - level:
                    nxt.append(ch + [i])
        chains = nxt
    return [FlagPattern(m, ch) for ch in sorted(chains)]
