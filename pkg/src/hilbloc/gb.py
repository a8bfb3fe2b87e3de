"""Small exact Groebner engine over the rationals on named variables.

Buchberger with the normal (degree) pair-selection strategy and both
classical criteria; reduced bases, normal forms, Krull dimension via the
leading-term ideal, ideal quotients via elimination, regular-sequence tests,
and syzygies via cofactor tracking.  Default order is graded reverse
lexicographic; elimination uses a block order.

The expensive algorithms enforce a configurable variable cap (default 16) so
callers cannot accidentally trigger runaway computations; plain arithmetic on
polynomials is uncapped.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

DEFAULT_MAX_VARS = 16

GREVLEX = "grevlex"
LEX = "lex"


class VariableCapError(Exception):
    pass


class EmptyVarietyError(Exception):
    """Raised when an operation needs a proper ideal but got the unit ideal."""


@lru_cache(maxsize=None)
def _grevlex_key(mono: tuple) -> tuple:
    return (sum(mono), tuple(-e for e in reversed(mono)))


def _lex_key(mono: tuple) -> tuple:
    return mono


class PolyRing:
    """Polynomial ring on named variables with a fixed monomial order.

    ``elim`` marks how many leading variables form the elimination block; a
    monomial is compared first by its block part (grevlex), then the rest.
    """

    def __init__(self, names, order: str = GREVLEX, elim: int = 0):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        self.names = names
        self.n = len(names)
        self.order = order
        self.elim = elim
        self._index = {v: i for i, v in enumerate(names)}
        base = _grevlex_key if order == GREVLEX else _lex_key
        if elim:
            self.key = lambda m: (base(m[:elim]), base(m[elim:]))
        else:
            self.key = base

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.order == other.order and self.elim == other.elim)

    def __hash__(self):
        return hash((self.names, self.order, self.elim))

    def __repr__(self):
        return f"Q[{','.join(self.names)}]<{self.order}{'/elim%d' % self.elim if self.elim else ''}>"

    # -- constructors --------------------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.n: Fraction(1)})

    def const(self, q) -> "Poly":
        q = Fraction(q)
        return Poly(self, {(0,) * self.n: q} if q else {})

    def var(self, name: str) -> "Poly":
        mono = [0] * self.n
        mono[self._index[name]] = 1
        return Poly(self, {tuple(mono): Fraction(1)})

    def from_terms(self, terms: dict) -> "Poly":
        out = {}
        for m, q in terms.items():
            q = Fraction(q)
            if q:
                out[tuple(m)] = out.get(tuple(m), Fraction(0)) + q
                if not out[tuple(m)]:
                    del out[tuple(m)]
        return Poly(self, out)

    def monomial_str(self, mono: tuple) -> str:
        parts = [
            f"{self.names[i]}^{e}" if e > 1 else self.names[i]
            for i, e in enumerate(mono) if e
        ]
        return "*".join(parts) if parts else "1"


class Poly:
    """Sparse polynomial with exact rational coefficients.  Immutable."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def lt(self) -> tuple:
        """Leading (monomial, coefficient)."""
        m = self.lm()
        return m, self.terms[m]

    def lm(self) -> tuple:
        if self._lm is None:
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(self.ring.names[i])
        return out

    def __add__(self, other):
        out = dict(self.terms)
        for m, q in other.terms.items():
            v = out.get(m, Fraction(0)) + q
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    def __neg__(self):
        return Poly(self.ring, {m: -q for m, q in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.terms or not other.terms:
            return Poly(self.ring, {})
        out: dict = {}
        for ma, qa in self.terms.items():
            for mb, qb in other.terms.items():
                m = tuple(a + b for a, b in zip(ma, mb))
                v = out.get(m, Fraction(0)) + qa * qb
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly(self.ring, out)

    def scale(self, q) -> "Poly":
        q = Fraction(q)
        if not q:
            return Poly(self.ring, {})
        return Poly(self.ring, {m: c * q for m, c in self.terms.items()})

    def mul_term(self, mono: tuple, q) -> "Poly":
        q = Fraction(q)
        if not q:
            return Poly(self.ring, {})
        return Poly(self.ring, {tuple(a + b for a, b in zip(m, mono)): c * q
                                for m, c in self.terms.items()})

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        _, c = self.lt()
        return self.scale(1 / c)

    def coefficient_of_var(self, name: str):
        """Split p = q*v + rest when v occurs only linearly and alone.

        Returns (q, rest) with q a rational, or None if v appears in any
        nonlinear or mixed term.  Used by the model-elimination engine.
        """
        i = self.ring._index[name]
        q = Fraction(0)
        rest = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                rest[m] = c
            elif m[i] == 1 and sum(m) == 1:
                q += c
            else:
                return None
        if not q:
            return None
        return q, Poly(self.ring, rest)

    def substitute(self, name: str, value: "Poly") -> "Poly":
        """Substitute a polynomial for a variable (exact)."""
        i = self.ring._index[name]
        out = self.ring.zero()
        powers = {0: self.ring.one()}

        def power(e):
            if e not in powers:
                powers[e] = power(e - 1) * value
            return powers[e]

        for m, c in self.terms.items():
            base = list(m)
            e = base[i]
            base[i] = 0
            out = out + power(e).mul_term(tuple(base), c)
        return out

    def evaluate(self, assignment: dict, algebra):
        """Evaluate in a coefficient algebra; assignment maps names to
        algebra elements (coefficient polynomials)."""
        acc = algebra.zero()
        for m, c in self.terms.items():
            term = algebra.from_rational(c)
            for i, e in enumerate(m):
                if e:
                    v = assignment[self.ring.names[i]]
                    v = v if isinstance(v, dict) else algebra.from_rational(v)
                    for _ in range(e):
                        term = algebra.cmul(term, v)
            acc = algebra.cadd(acc, term)
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=self.ring.key, reverse=True):
            c = self.terms[m]
            body = self.ring.monomial_str(m)
            if body == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(p: Poly, gens) -> Poly:
    """Fully reduced remainder of p modulo the polynomial list."""
    gens = [g for g in (gens.polys if isinstance(gens, GroebnerBasis) else gens)
            if not g.is_zero()]
    ring = p.ring
    lts = [g.lt() for g in gens]
    work = dict(p.terms)
    rem: dict = {}
    while work:
        m = max(work, key=ring.key)
        c = work.pop(m)
        for (lm, lc), g in zip(lts, gens):
            if _divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                factor = c / lc
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    tm = tuple(a + b for a, b in zip(gm, shift))
                    v = work.get(tm, Fraction(0)) - factor * gc
                    if v:
                        work[tm] = v
                    else:
                        work.pop(tm, None)
                break
        else:
            rem[m] = c
    return Poly(ring, rem)


def _reduce_with_quotients(p: Poly, gens):
    """Division algorithm returning (remainder, quotients)."""
    ring = p.ring
    lts = [g.lt() for g in gens]
    work = dict(p.terms)
    rem: dict = {}
    quots = [dict() for _ in gens]
    while work:
        m = max(work, key=ring.key)
        c = work.pop(m)
        for k, ((lm, lc), g) in enumerate(zip(lts, gens)):
            if _divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                factor = c / lc
                quots[k][shift] = quots[k].get(shift, Fraction(0)) + factor
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    tm = tuple(a + b for a, b in zip(gm, shift))
                    v = work.get(tm, Fraction(0)) - factor * gc
                    if v:
                        work[tm] = v
                    else:
                        work.pop(tm, None)
                break
        else:
            rem[m] = c
    return Poly(ring, rem), [Poly(ring, q) for q in quots]


class GroebnerBasis:
    """Reduced Groebner basis; unique for the ideal and order."""

    def __init__(self, ring: PolyRing, polys):
        self.ring = ring
        self.polys = list(polys)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.polys == other.polys)

    def is_unit_ideal(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].degree() == 0

    def __repr__(self):
        return "GB{" + ", ".join(repr(g) for g in self.polys) + "}"


def _check_cap(ring: PolyRing, max_vars: int):
    if ring.n > max_vars:
        raise VariableCapError(
            f"{ring.n} variables exceeds the cap of {max_vars}; "
            "raise max_vars explicitly if this size is intended")


def buchberger(gens, max_vars: int = DEFAULT_MAX_VARS) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("buchberger needs at least one nonzero generator")
    ring = gens[0].ring
    _check_cap(ring, max_vars)
    G = [g.monic() for g in gens]
    pairs = {(i, j) for i in range(len(G)) for j in range(i)}
    done = set()
    while pairs:
        # normal strategy: smallest lcm degree first, then index order
        j, i = min(pairs, key=lambda ij: (sum(_lcm(G[ij[0]].lm(), G[ij[1]].lm())),
                                          ij[0], ij[1]))
        pairs.discard((j, i))
        done.add((j, i))
        mi, mj = G[i].lm(), G[j].lm()
        lcm = _lcm(mi, mj)
        if tuple(a + b for a, b in zip(mi, mj)) == lcm:
            continue  # coprime leading terms
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not _divides(G[k].lm(), lcm):
                continue
            a = tuple(sorted((min(i, k), max(i, k))))
            b = tuple(sorted((min(j, k), max(j, k))))
            if a in done and b in done:
                skip = True
                break
        if skip:
            continue
        si = tuple(a - b for a, b in zip(lcm, mi))
        sj = tuple(a - b for a, b in zip(lcm, mj))
        s = G[i].mul_term(si, 1) - G[j].mul_term(sj, 1)
        r = normal_form(s, G)
        if not r.is_zero():
            G.append(r.monic())
            k = len(G) - 1
            pairs.update((min(t, k), max(t, k)) for t in range(k))
    return GroebnerBasis(ring, _autoreduce(G))


def _autoreduce(G):
    # minimalize: drop members whose LT is divisible by another LT
    G = sorted(G, key=lambda g: g.ring.key(g.lm()))
    minimal = []
    for g in G:
        if not any(_divides(h.lm(), g.lm()) for h in minimal):
            minimal.append(g)
    # tail-reduce each member against the others
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g, others) if others else g
        if not r.is_zero():
            out.append(r.monic())
    return sorted(out, key=lambda g: g.ring.key(g.lm()))


def ideal_dim(G: GroebnerBasis, max_vars: int = DEFAULT_MAX_VARS) -> int:
    """Krull dimension: maximum number of variables independent modulo the
    leading-term ideal."""
    _check_cap(G.ring, max_vars)
    if G.is_unit_ideal():
        raise EmptyVarietyError("unit ideal has empty variety")
    n = G.ring.n
    supports = [frozenset(i for i, e in enumerate(g.lm()) if e) for g in G.polys]
    best = 0

    def rec(i: int, chosen: frozenset):
        nonlocal best
        if len(chosen) + (n - i) <= best:
            return
        if i == n:
            best = max(best, len(chosen))
            return
        cand = chosen | {i}
        if not any(s <= cand for s in supports):
            rec(i + 1, cand)
        rec(i + 1, chosen)

    rec(0, frozenset())
    return best


def exact_divide(f: Poly, p: Poly) -> Poly:
    """Quotient f/p when p divides f exactly; error otherwise."""
    rem, quots = _reduce_with_quotients(f, [p])
    if not rem.is_zero():
        raise ValueError("division is not exact")
    return quots[0]


def ideal_quotient(I, p: Poly, max_vars: int = DEFAULT_MAX_VARS) -> GroebnerBasis:
    """GB of (I : p) via intersection with the principal ideal (p)."""
    if p.is_zero():
        raise ValueError("cannot form a quotient by zero")
    gens = list(I.polys if isinstance(I, GroebnerBasis) else I)
    ring = gens[0].ring if gens else p.ring
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        # (0 : p) = 0 in a domain
        return GroebnerBasis(ring, [])
    _check_cap(ring, max_vars - 1)
    ext = PolyRing(("@t",) + ring.names, order=GREVLEX, elim=1)

    def lift(q: Poly, t_deg: int) -> Poly:
        return Poly(ext, {(t_deg,) + m: c for m, c in q.terms.items()})

    J = [lift(g, 1) for g in gens]  # t*g
    J.append(lift(p, 1) - lift(p, 0))  # (t-1)*p, same ideal as (1-t)*p
    Gext = buchberger(J, max_vars=max_vars + 1)
    inter = []
    for g in Gext:
        if all(m[0] == 0 for m in g.terms):
            inter.append(Poly(ring, {m[1:]: c for m, c in g.terms.items()}))
    if not inter:
        return GroebnerBasis(ring, [])
    divided = [exact_divide(g, p) for g in inter]
    return buchberger(divided, max_vars=max_vars)


def is_regular_sequence(polys, max_vars: int = DEFAULT_MAX_VARS) -> bool:
    """True iff each p_k is a nonzerodivisor modulo (p_1..p_{k-1}) and the
    full ideal is proper."""
    polys = list(polys)
    if any(p.is_zero() for p in polys):
        return False
    prefix: list[Poly] = []
    for p in polys:
        if not prefix:
            pass  # (0 : p) = 0 for p != 0 in a domain
        else:
            G = buchberger(prefix, max_vars=max_vars)
            if G.is_unit_ideal():
                return False
            Q = ideal_quotient(G, p, max_vars=max_vars)
            if Q.polys != G.polys:
                return False
        prefix.append(p)
    return not buchberger(prefix, max_vars=max_vars).is_unit_ideal()


def syzygies(gens, max_vars: int = DEFAULT_MAX_VARS) -> list:
    """Generating set of the first syzygy module of ``gens``.

    Buchberger with cofactor tracking: every S-pair that reduces to zero
    yields a syzygy of the intermediate basis G (Schreyer), and the change
    of basis back to the input generators is tracked explicitly.  Each
    returned vector is verified by substitution.
    """
    gens = list(gens)
    if any(g.is_zero() for g in gens):
        raise ValueError("syzygies needs nonzero generators")
    ring = gens[0].ring
    _check_cap(ring, max_vars)
    n = len(gens)
    zero = ring.zero()

    def unit_vec(k, scale=None):
        v = [zero] * n
        v[k] = ring.one() if scale is None else scale
        return v

    # G[i] = sum_j U[i][j] * gens[j]
    G = []
    U = []
    for k, g in enumerate(gens):
        _, c = g.lt()
        G.append(g.monic())
        U.append(unit_vec(k, ring.const(1 / c)))
    syz_G = []  # syzygies of G
    pairs = {(i, j) for i in range(n) for j in range(i)}
    while pairs:
        j, i = min(pairs, key=lambda ij: (sum(_lcm(G[ij[0]].lm(), G[ij[1]].lm())),
                                          ij[0], ij[1]))
        pairs.discard((j, i))
        mi, mj = G[i].lm(), G[j].lm()
        lcm = _lcm(mi, mj)
        si = tuple(a - b for a, b in zip(lcm, mi))
        sj = tuple(a - b for a, b in zip(lcm, mj))
        s = G[i].mul_term(si, 1) - G[j].mul_term(sj, 1)
        r, quots = _reduce_with_quotients(s, G)
        # s - sum quots[k] G[k] = r
        if r.is_zero():
            vec = [zero] * len(G)
            vec[i] = vec[i] + Poly(ring, {si: Fraction(1)})
            vec[j] = vec[j] - Poly(ring, {sj: Fraction(1)})
            for k, q in enumerate(quots):
                vec[k] = vec[k] - q
            syz_G.append(vec)
        else:
            _, c = r.lt()
            # cofactors: r = s - sum q_k G_k, so in terms of gens:
            acc = [Poly(ring, {si: Fraction(1)}) * U[i][t] -
                   Poly(ring, {sj: Fraction(1)}) * U[j][t] for t in range(n)]
            for k, q in enumerate(quots):
                if not q.is_zero():
                    acc = [a - q * U[k][t] for t, a in enumerate(acc)]
            inv = ring.const(1 / c)
            G.append(r.monic())
            U.append([inv * a for a in acc])
            k = len(G) - 1
            pairs.update((min(t, k), max(t, k)) for t in range(k))
    # gens[j] = sum_k V[j][k] G[k]
    V = []
    for g in gens:
        r, quots = _reduce_with_quotients(g, G)
        if not r.is_zero():
            raise AssertionError("generator does not reduce to zero modulo its own GB")
        V.append(quots)
    result = []

    def push(vec):
        if all(q.is_zero() for q in vec):
            return
        # verify by substitution
        acc = zero
        for q, g in zip(vec, gens):
            acc = acc + q * g
        if not acc.is_zero():
            raise AssertionError("syzygy verification failed")
        # normalize sign/scale by leading coefficient of first nonzero entry
        for q in vec:
            if not q.is_zero():
                _, c = q.lt()
                vec = [t.scale(1 / c) for t in vec]
                break
        if vec not in result:
            result.append(vec)

    # rows of (Id - V U)
    for j in range(n):
        row = []
        for t in range(n):
            acc = ring.one() if t == j else zero
            for k in range(len(G)):
                acc = acc - V[j][k] * U[k][t]
            row.append(acc)
        push(row)
    # images of Syz(G) under U
    for z in syz_G:
        row = []
        for t in range(n):
            acc = zero
            for k in range(len(z)):  # z was recorded before G finished growing
                acc = acc + z[k] * U[k][t]
            row.append(acc)
        push(row)
    return result
