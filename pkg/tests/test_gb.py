"""Groebner engine and exact linear algebra."""

from fractions import Fraction

import pytest

from hilbloc import gb
from hilbloc.linalg import RowSpace, kernel_basis, solve_linear


def ring2():
    return gb.PolyRing(("x", "y"))


def test_rowspace_rank_and_membership():
    rs = RowSpace()
    assert rs.add_row({0: Fraction(1), 1: Fraction(2)})
    assert rs.add_row({1: Fraction(1)})
    assert not rs.add_row({0: Fraction(3), 1: Fraction(-1)})  # dependent
    assert rs.rank == 2
    assert rs.contains({0: Fraction(5)})
    assert not rs.contains({2: Fraction(1)})
    assert rs.pivot_columns() == [0, 1]


def test_kernel_basis_exact():
    # x + y + z = 0, x - y = 0  ->  kernel spanned by (1, 1, -2)
    rows = [
        {0: Fraction(1), 1: Fraction(1), 2: Fraction(1)},
        {0: Fraction(1), 1: Fraction(-1)},
    ]
    ker = kernel_basis(rows, 3)
    assert len(ker) == 1
    v = ker[0]
    assert v[0] == v[1]
    assert v[2] == -2 * v[0]


def test_solve_linear_consistent_and_inconsistent():
    rows = [{0: Fraction(2), 1: Fraction(1)}, {1: Fraction(1)}]
    sol = solve_linear(rows, [Fraction(5), Fraction(1)], 2)
    assert sol == [Fraction(2), Fraction(1)]
    assert solve_linear([{0: Fraction(1)}, {0: Fraction(1)}],
                        [Fraction(1), Fraction(2)], 1) is None


def test_poly_arithmetic_and_order():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    # grevlex: x^2 beats y^2? same degree, grevlex compares reversed exponents
    assert p.lm() == (2, 0)
    assert p.degree() == 2


def test_normal_form_reduces_to_zero_iff_member():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    G = gb.buchberger([x * x - y, y * y - x])
    assert gb.normal_form(x * x * x * x - x, G).is_zero()
    assert not gb.normal_form(x - y, G).is_zero()


def test_buchberger_matches_known_basis():
    # Standard example: <x^2+y^2-1, x*y-1> is zero-dimensional.
    R = ring2()
    x, y = R.var("x"), R.var("y")
    G = gb.buchberger([x * x + y * y - R.one(), x * y - R.one()])
    assert gb.ideal_dim(G) == 0
    assert not G.is_unit_ideal()
    assert gb.buchberger([x, x + R.one()]).is_unit_ideal()


def test_groebner_basis_canonical_across_presentations():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    G1 = gb.buchberger([x * x, y])
    G2 = gb.buchberger([x * x + y, y, x * x * y])
    assert G1 == G2


def test_ideal_dim():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    assert gb.ideal_dim(gb.buchberger([x])) == 1
    assert gb.ideal_dim(gb.buchberger([x, y])) == 0
    assert gb.ideal_dim(gb.buchberger([x * y])) == 1


def test_ideal_quotient():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    # (x*y, y^2) : y = (x, y)
    Q = gb.ideal_quotient(gb.buchberger([x * y, y * y]), y)
    assert gb.normal_form(x, Q).is_zero()
    assert gb.normal_form(y, Q).is_zero()
    assert not Q.is_unit_ideal()


def test_is_regular_sequence():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    assert gb.is_regular_sequence([x, y])
    assert gb.is_regular_sequence([x * x - y, y * y])
    assert not gb.is_regular_sequence([x, x * y])


def test_syzygies_verified_by_substitution():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    gens = [x * y, x * x, y * y]
    Z = R.zero()
    sy = gb.syzygies(gens)
    assert sy  # the Koszul-type relations exist
    for row in sy:
        acc = Z
        for c, g in zip(row, gens):
            acc = acc + c * g
        assert acc.is_zero()
    # y*g0 - x*g2 = 0 must be in the row span: check a known combination
    # reduces to zero against the module they generate (sanity: at least the
    # trivial Koszul pair count).
    assert all(len(row) == len(gens) for row in sy)


def test_variable_cap():
    names = tuple(f"t{i}" for i in range(20))
    R = gb.PolyRing(names)
    with pytest.raises(gb.VariableCapError):
        gb.buchberger([R.var("t0")])
    G = gb.buchberger([R.var("t0")], max_vars=25)
    assert len(G) == 1


def test_elimination_order_projects():
    # Eliminate t from (x - t^2, y - t^3): the projection contains x^3 - y^2.
    R = gb.PolyRing(("t", "x", "y"), order=gb.LEX, elim=1)
    t, x, y = R.var("t"), R.var("x"), R.var("y")
    G = gb.buchberger([x - t * t, y - t * t * t])
    target = x * x * x - y * y
    assert gb.normal_form(target, G).is_zero()
    eliminated = [g for g in G if "t" not in g.variables()]
    assert eliminated
    assert gb.normal_form(target, gb.buchberger(eliminated)).is_zero()
