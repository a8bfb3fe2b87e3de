"""Tangent spaces of the cusp Hilbert scheme: dim Hom_R(I, R/I).

A homomorphism I -> R/I is determined by the images of the generators, and a
tuple of images defines one exactly when every syzygy of the generators
annihilates it.  Syzygies come from two routes:

* the explicit 2x2 matrix factorizations of x^2 - y^3 attached to the two
  monomial families (x*y^m, y^(m+2)) and (x*y^(m+1), y^(m+2)), whose columns
  generate the whole syzygy module by 2-periodicity; and
* generically, polynomial syzygies of (generators, x^2 - y^3) in the free
  ring with the curve-equation coordinate dropped.

The annihilation conditions become an exact linear system over the quotient
monomial basis, solved by rational kernel computation.  Principal ideals have
Hom isomorphic to R/I (the cusp ring is a domain), and the tangent dimension
scan along the colength-2 and colength-3 punctual loci locates the unique
singular point on each.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import gb
from .cusp import CuspCanonicalIdeal, cusp_ring, default_cusp_ring
from .linalg import RowSpace, kernel_basis
from .oracle import _initial_trunc, colength, member, row_space
from .rings import CUSP, IdealGens, RingElement

@dataclass
class HomSpace:
    ideal: IdealGens
    dimension: int
    basis: list  # tuples of RingElements (images of the generators)
    syzygies: list  # tuples of RingElements (coefficient vectors)


def _mf_syzygies(I: IdealGens):
    """Syzygy pairs (q1, q2) with q1*g1 + q2*g2 = 0, from the factorization
    matched to monomial generators (x*y^m, y^(m+k))."""
    if len(I.gens) != 2:
        return None
    monos = []
    for g in I.gens:
        if len(g.terms) != 1:
            return None
        (mono, c), = g.terms.items()
        if Fraction(next(iter(c.values()))) != 1:
            return None
        monos.append(mono)
    (ax, ay), (bx, by) = monos
    if ax != 1 or bx != 0:
        return None
    m, n = ay, by
    ring = I.ring
    if n == m + 2:
        # (x*y^m, y^(m+2)): columns of [[y^2, x], [x, y]]
        cols = [((0, 2), (1, 0)), ((1, 0), (0, 1))]
    elif n == m + 1 and m >= 1:
        # (x*y^(m'+1), y^(m'+2)) with m' = m - 1: columns of [[x, y], [y^2, x]]
        cols = [((1, 0), (0, 2)), ((0, 1), (1, 0))]
    else:
        return None
    # verify the factorization property: q1*g1 - q2*g2 = 0 in the ring
    syz = []
    for c1, c2 in cols:
        q = (ring.monomial(*c1), ring.monomial(*c2).scale(-1))
        check = q[0] * I.gens[0] + q[1] * I.gens[1]
        if not check.is_zero():
            return None
        syz.append(q)
    return syz


def _generic_syzygies(I: IdealGens, max_vars: int = 16):
    """Syzygies of the generators modulo x^2 - y^3, via the free polynomial
    ring with the curve equation appended and its coordinate dropped."""
    ring = I.ring
    P = gb.PolyRing(("x", "y"))
    free_gens = []
    for g in I.gens:
        terms = {}
        for (ex, ey), c in g.terms.items():
            terms[(ex, ey)] = Fraction(next(iter(c.values())))
        free_gens.append(P.from_terms(terms))
    curve = P.from_terms({(2, 0): Fraction(1), (0, 3): Fraction(-1)})
    rows = gb.syzygies(free_gens + [curve], max_vars=max_vars)
    out = []
    seen = set()
    for row in rows:
        pair = []
        for q in row[:len(I.gens)]:
            e = ring.element({mono: coeff for mono, coeff in q.terms.items()})
            pair.append(e)
        pair = tuple(pair)
        if all(e.is_zero() for e in pair):
            continue
        total = ring.zero()
        for q, g in zip(pair, I.gens):
            total = total + q * g
        if not total.is_zero():
            raise AssertionError("projected syzygy fails in the quotient ring")
        key = tuple(e._sorted_key() for e in pair)
        if key not in seen:
            seen.add(key)
            out.append(pair)
    return out


def hom_dim(I: IdealGens, path: str = "auto") -> HomSpace:
    """dim Hom_R(I, R/I) with an explicit basis of generator-image tuples.

    ``path`` selects the syzygy source: "factorization" (the hardcoded 2x2
    matrix factorizations; only for the two monomial families), "generic"
    (polynomial syzygies), or "auto" (factorization when it applies).
    """
    if I.ring.kind != CUSP:
        raise ValueError("tangent computations are for cusp ideals")
    c = colength(I)
    syz = None
    if path in ("auto", "factorization"):
        syz = _mf_syzygies(I)
        if syz is None and path == "factorization":
            raise ValueError("no matrix factorization matches these generators")
    if syz is None:
        syz = _generic_syzygies(I)
    max_syz_deg = max((q.degree() for pair in syz for q in pair
                       if not q.is_zero()), default=0)
    D = _initial_trunc(I) + max_syz_deg

    def solve(trunc: int):
        space, flat = row_space(I, trunc)
        ring_d = I.at_truncation(trunc).ring
        pivots = set(space.pivots)
        qbasis = [flat.column_label(j) for j in range(flat.ncols)
                  if j not in pivots]
        if len(qbasis) != c:
            return None
        ncols = len(I.gens) * c
        rows = []
        for pair in syz:
            # constraint: sum_j q_j * h_j = 0 in R/I, h_j over quotient basis
            contribs: dict = {}
            for j, q in enumerate(pair):
                q_d = RingElement(ring_d, ring_d.reduce_terms(
                    {mono: dict(cc) for mono, cc in q.terms.items()}))
                for b, mono in enumerate(qbasis):
                    prod = q_d * ring_d.monomial(*mono)
                    if prod.is_zero():
                        continue
                    res = space.reduce_fraction_row(flat.row_of(prod))
                    for colidx, v in res.items():
                        contribs.setdefault(colidx, {})[j * c + b] = \
                            contribs.get(colidx, {}).get(j * c + b, 0) + v
            rows.extend(contribs.values())
        basis_vecs = kernel_basis(rows, ncols)
        return qbasis, ring_d, basis_vecs

    first = solve(D)
    second = solve(D + 1)
    if first is None or second is None or len(first[2]) != len(second[2]):
        raise AssertionError("Hom dimension did not stabilize across truncations")
    qbasis, ring_d, vecs = first
    basis = []
    for vec in vecs:
        images = []
        for j in range(len(I.gens)):
            images.append(ring_d.element(
                {qbasis[b]: vec[j * c + b] for b in range(c) if vec[j * c + b]}))
        basis.append(tuple(images))
    return HomSpace(ideal=I, dimension=len(basis), basis=basis, syzygies=syz)


def principal_hom_dim(I: IdealGens, verify: bool = False) -> int:
    """For principal I = (g) in the cusp ring (a domain), Hom_R(I, R/I) is
    R/I itself, so the tangent dimension equals the colength."""
    if len(I.gens) != 1:
        raise ValueError("expected a principal ideal")
    c = colength(I)
    if verify and hom_dim(I, path="generic").dimension != c:
        raise AssertionError("generic Hom computation disagrees with the colength")
    return c


# -- tangent vectors of the pencil families ----------------------------------


def family_tangent(m: int, k: int, chart: str, at) -> tuple:
    """Derivative of the pencil at one parameter value, as a Hom element.

    ``chart`` "a" is the family x*y^m + a*y^(m+k) (image of the generator:
    y^(m+k)); chart "b" is b*x*y^m + y^(m+k) around infinity (image: x*y^m).
    Returns (image reduced mod I, nonzero-in-R/I flag).
    """
    if k not in (1, 2) or m < 0:
        raise ValueError("pencil needs m >= 0, k in {1, 2}")
    at = Fraction(at)
    ring = default_cusp_ring(m + k + 2)
    if chart == "a":
        if not at:
            raise ValueError("a = 0 leaves the pencil; use the boundary ideal")
        gen = ring.monomial(1, m) + ring.y(m + k).scale(at)
        image = ring.y(m + k)
    elif chart == "b":
        gen = ring.monomial(1, m).scale(at) + ring.y(m + k)
        image = ring.monomial(1, m)
    else:
        raise ValueError(f"unknown chart {chart!r}")
    I = IdealGens(ring, [gen])
    return image, not member(image, I)


# -- singularity scan along the punctual locus -------------------------------


def p1_scan(colength_target: int, sample_params=(1, 2, 3, -1, Fraction(1, 2))):
    """Tangent dimensions along the punctual P^1 of colength 2 or 3.

    Colength 2: the pencil (x + a*y) with boundaries (x, y^2) at a -> 0 and
    (y) at a -> infinity.  Colength 3: the pencil (x + a*y^2) with boundaries
    (x) at a -> 0 and (x*y, y^2) at a -> infinity.  Returns sorted rows of
    (point label, tangent dimension).
    """
    if colength_target not in (2, 3):
        raise ValueError("scan supports colength 2 or 3")
    if not sample_params:
        raise ValueError("need at least one sample parameter")
    ring = cusp_ring(12)
    rows = []
    if colength_target == 2:
        for a in sample_params:
            I = IdealGens(ring, [ring.x() + ring.y().scale(Fraction(a))])
            rows.append((f"a={Fraction(a)}", principal_hom_dim(I)))
        rows.append(("(x, y^2)",
                     hom_dim(IdealGens(ring, [ring.x(), ring.y(2)])).dimension))
        rows.append(("(y)", principal_hom_dim(IdealGens(ring, [ring.y()]))))
    else:
        for a in sample_params:
            I = IdealGens(ring, [ring.x() + ring.y(2).scale(Fraction(a))])
            rows.append((f"a={Fraction(a)}", principal_hom_dim(I)))
        rows.append(("(x)", principal_hom_dim(IdealGens(ring, [ring.x()]))))
        rows.append(("(x*y, y^2)",
                     hom_dim(IdealGens(ring, [ring.monomial(1, 1),
                                              ring.y(2)])).dimension))
    return sorted(rows)


def scan_singular_points(table, generic_dim: int) -> list:
    """Rows of the scan whose tangent dimension exceeds the generic one."""
    return [row for row in table if row[1] > generic_dim]


# -- the explicit kernel bases of the two monomial families ------------------


def explicit_kernel_pairs(family: str, m: int) -> list:
    """The listed kernel basis of { (h1, h2) : h1*x + h2*y = 0 and
    h1*y^2 + h2*x = 0 in R/I } for I = (x*y^m, y^(m+2)) (family "low",
    dimension 2m+3) or I = (x*y^(m+1), y^(m+2)) (family "high", 2m+4).
    Entries with negative exponents are filtered out for small m.
    """
    if m < 0:
        raise ValueError("need m >= 0")

    def mono(ex, ey):
        return (ex, ey) if ey >= 0 else None

    pairs = []
    if family == "low":
        fixed = [((0, 0), mono(0, m + 1)), ((0, 0), mono(1, m - 1)),
                 (mono(0, m + 1), (0, 0)), (mono(0, m), (0, 0)),
                 (mono(1, m - 1), (0, 0))]
        mixed = [((1, j), (0, j + 2)) for j in range(m - 1)] \
            + [((0, j), (1, j - 1)) for j in range(1, m)]
    elif family == "high":
        fixed = [((0, 0), mono(0, m + 1)), ((0, 0), mono(1, m)),
                 (mono(0, m + 1), (0, 0)), (mono(1, m), (0, 0)),
                 (mono(1, m - 1), (0, 0))]
        mixed = [((1, j), (0, j + 2)) for j in range(m - 1)] \
            + [((0, j), (1, j - 1)) for j in range(1, m + 1)]
    else:
        raise ValueError(f"unknown family {family!r}")
    # fixed pairs have one zero slot: encode (mono-or-None for each slot)
    out = []
    for pos, (h1, h2) in enumerate(fixed):
        if h1 is None or h2 is None:
            continue
        if pos < 2:
            out.append((None, h2))  # (0, *)
        else:
            out.append((h1, None))  # (*, 0)
    for h1, h2 in mixed:
        out.append((h1, ("-", h2)))  # second slot negated
    return out


def kernel_pairs_check(family: str, m: int):
    """Verify the printed kernel basis: each pair satisfies both annihilation
    conditions mod I, and the collection is linearly independent in (R/I)^2.
    Returns (count, expected dimension)."""
    ring = cusp_ring(2 * m + 12)
    if family == "low":
        I = IdealGens(ring, [ring.monomial(1, m), ring.y(m + 2)])
        expected = 2 * m + 3
    else:
        I = IdealGens(ring, [ring.monomial(1, m + 1), ring.y(m + 2)])
        expected = 2 * m + 4
    pairs = explicit_kernel_pairs(family, m)
    D = _initial_trunc(I)
    space, flat = row_space(I, D)
    ring_d = I.at_truncation(D).ring
    x, y = ring_d.x(), ring_d.y()
    indep = RowSpace()
    count = 0
    for slot1, slot2 in pairs:
        h1 = ring_d.zero() if slot1 is None else ring_d.monomial(*slot1)
        if slot2 is None:
            h2 = ring_d.zero()
        elif isinstance(slot2, tuple) and slot2 and slot2[0] == "-":
            h2 = ring_d.monomial(*slot2[1]).scale(-1)
        else:
            h2 = ring_d.monomial(*slot2)
        for cond in (h1 * x + h2 * y, h1 * ring_d.y(2) + h2 * x):
            if not member(cond, I):
                raise AssertionError(
                    f"kernel pair {(slot1, slot2)} violates an annihilation condition")
        r1 = space.reduce_fraction_row(flat.row_of(h1)) if not h1.is_zero() else {}
        r2 = space.reduce_fraction_row(flat.row_of(h2)) if not h2.is_zero() else {}
        row = dict(r1)
        for colidx, v in r2.items():
            row[colidx + flat.ncols] = v
        if not indep.add_row(row):
            raise AssertionError(f"kernel pair {(slot1, slot2)} is dependent")
        count += 1
    if count != expected:
        raise AssertionError(f"listed basis has {count} entries, expected {expected}")
    return count, expected


def hom_contains_pairs(family: str, m: int) -> bool:
    """Does the computed Hom space contain the printed kernel basis?

    The printed pairs (h1, h2) satisfy h1*x + h2*y = 0 and h1*y^2 + h2*x = 0.
    Dualizing acts through the columns of the factorization matrix, so the
    pairs embed as generator images (h1, -h2) for (x*y^m, y^(m+2)) and with
    the slots swapped, (h2, -h1), for (x*y^(m+1), y^(m+2))."""
    ring = cusp_ring(2 * m + 12)
    if family == "low":
        I = IdealGens(ring, [ring.monomial(1, m), ring.y(m + 2)])
    else:
        I = IdealGens(ring, [ring.monomial(1, m + 1), ring.y(m + 2)])
    hs = hom_dim(I)
    c = colength(I)
    D = _initial_trunc(I)
    space, flat = row_space(I, D)
    ring_d = I.at_truncation(D).ring
    pivots = set(space.pivots)
    qcols = [j for j in range(flat.ncols) if j not in pivots]
    qindex = {flat.column_label(j): b for b, j in enumerate(qcols)}

    def coords(e: RingElement):
        res = space.reduce_fraction_row(flat.row_of(RingElement(
            ring_d, ring_d.reduce_terms({mo: dict(cc) for mo, cc in e.terms.items()}))))
        vec = {}
        for colidx, v in res.items():
            vec[qindex[flat.column_label(colidx)]] = v
        return vec

    span = RowSpace()
    for images in hs.basis:
        row = {}
        for j, e in enumerate(images):
            for b, v in coords(e).items():
                row[j * c + b] = v
        span.add_row(row)
    for slot1, slot2 in explicit_kernel_pairs(family, m):
        h1 = ring_d.zero() if slot1 is None else ring_d.monomial(*slot1)
        if slot2 is None:
            h2 = ring_d.zero()
        elif isinstance(slot2, tuple) and slot2 and slot2[0] == "-":
            h2 = ring_d.monomial(*slot2[1]).scale(-1)
        else:
            h2 = ring_d.monomial(*slot2)
        im1, im2 = (h1, h2.scale(-1)) if family == "low" else (h2, h1.scale(-1))
        row = {}
        for b, v in coords(im1).items():
            row[b] = v
        for b, v in coords(im2).items():
            row[c + b] = v
        if not span.contains(row):
            return False
    return True
