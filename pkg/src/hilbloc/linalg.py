"""Exact sparse linear algebra over the rationals.

The workhorse is :class:`RowSpace`, an incremental fraction-free row
reduction: rows are kept as sparse integer vectors, eliminated Bareiss-style
(cross-multiplication with content removal after every combination) so that
all arithmetic stays in arbitrary-precision integers.  Columns are plain
integers; their order (natural `<`) is the caller's fixed basis enumeration.

A small dense rational kernel/solve routine is provided for the final
homogeneous systems (Hom spaces, unit-witness solves), where the matrices are
tiny but a full reduced echelon form is wanted.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _to_int_row(row: dict) -> dict:
    """Clear denominators and remove content; empty dict for the zero row."""
    ints = {}
    denom = 1
    for c, v in row.items():
        v = Fraction(v)
        if v:
            ints[c] = v
            denom = denom * v.denominator // gcd(denom, v.denominator)
    if not ints:
        return {}
    scaled = {c: int(v * denom) for c, v in ints.items()}
    g = 0
    for v in scaled.values():
        g = gcd(g, v)
    lead = scaled[min(scaled)]
    sign = -1 if lead < 0 else 1
    return {c: sign * v // g for c, v in scaled.items()}


class RowSpace:
    """Incrementally built row space with membership and rank queries."""

    def __init__(self):
        self.pivots: dict[int, dict] = {}  # lead column -> normalized integer row

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce_int(self, row: dict) -> dict:
        while row:
            c = min(row)
            p = self.pivots.get(c)
            if p is None:
                return row
            a, b = row[c], p[c]
            new = {col: v * b for col, v in row.items()}
            for col, v in p.items():
                nv = new.get(col, 0) - v * a
                if nv:
                    new[col] = nv
                else:
                    new.pop(col, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
            row = {col: v // g for col, v in new.items()} if g > 1 else new
        return row

    def add_row(self, row: dict) -> bool:
        """Add a row (rational entries allowed); True if the rank grew."""
        row = self._reduce_int(_to_int_row(row))
        if not row:
            return False
        lead = row[min(row)]
        if lead < 0:
            row = {c: -v for c, v in row.items()}
        self.pivots[min(row)] = row
        return True

    def contains(self, row: dict) -> bool:
        return not self._reduce_int(_to_int_row(row))

    def reduce_fraction_row(self, row: dict) -> dict:
        """Residual of a rational row; linear in the input (no rescaling).

        Firing a pivot clears its column and only introduces larger columns,
        so the smallest pivoted column present strictly increases.
        """
        row = {c: Fraction(v) for c, v in row.items() if v}
        while True:
            hit = min((c for c in row if c in self.pivots), default=None)
            if hit is None:
                return row
            p = self.pivots[hit]
            factor = row[hit] / p[hit]
            for col, v in p.items():
                nv = row.get(col, 0) - factor * v
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)

    def pivot_columns(self) -> list[int]:
        return sorted(self.pivots)


def kernel_basis(rows: list[dict], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel of the matrix given by sparse rational rows."""
    # dense RREF over Fraction; fine at the sizes used here
    mat = []
    for r in rows:
        dense = [Fraction(0)] * ncols
        for c, v in r.items():
            dense[c] = Fraction(v)
        if any(dense):
            mat.append(dense)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis


def solve_linear(rows: list[dict], rhs: list, ncols: int):
    """One solution of A u = b (free variables set to 0), or None if
    inconsistent.  The right-hand side is appended as an extra column so the
    system reduces like a homogeneous one."""
    echelon: list[tuple[dict, int]] = []  # (row, pivot column), pivots increasing
    for r, b in zip(rows, rhs):
        res = {c: Fraction(v) for c, v in r.items() if v}
        if Fraction(b):
            res[ncols] = -Fraction(b)
        for prow, pc in echelon:
            if pc in res:
                f = res[pc] / prow[pc]
                for col, v in prow.items():
                    nv = res.get(col, 0) - f * v
                    if nv:
                        res[col] = nv
                    else:
                        res.pop(col, None)
        if res:
            lead = min(res)
            if lead == ncols:
                return None  # reduces to 0 = nonzero
            echelon.append((res, lead))
            echelon.sort(key=lambda t: t[1])
    sol = [Fraction(0)] * ncols
    for prow, pc in sorted(echelon, key=lambda t: -t[1]):
        # row reads: prow[pc]*u_pc + sum_{c>pc} prow[c]*u_c = -prow[ncols]
        s = Fraction(0)
        for col, v in prow.items():
            if col != pc and col != ncols:
                s += v * sol[col]
        sol[pc] = (-prow.get(ncols, Fraction(0)) - s) / prow[pc]
    return sol
