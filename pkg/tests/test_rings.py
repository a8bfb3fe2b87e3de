"""Coefficient algebras and truncated curve rings."""

from fractions import Fraction

import pytest

from hilbloc.coeffs import CoeffAlgebra
from hilbloc.rings import CurveRing, IdealGens, substitute


Q = CoeffAlgebra.rationals()


def test_rational_algebra_arithmetic():
    a = Q.from_rational(Fraction(2, 3))
    b = Q.from_rational(Fraction(-1, 6))
    assert Q.as_rational(Q.cadd(a, b)) == Fraction(1, 2)
    assert Q.as_rational(Q.cmul(a, b)) == Fraction(-1, 9)
    assert Q.is_zero(Q.csub(a, a))
    assert Q.cscale(a, Fraction(3)) == Q.from_rational(Fraction(2))


def test_truncated_artin_nilpotency():
    S = CoeffAlgebra.truncated_artin(("u", "v"), 3)
    u, v = S.var("u"), S.var("v")
    uv = S.cmul(u, v)
    assert not S.is_zero(uv)
    assert S.is_zero(S.cmul(uv, u))  # degree 3 dies
    assert S.dim() == 6  # 1, u, v, u^2, uv, v^2
    assert len(S.monomial_basis()) == 6
    assert S.in_maximal_ideal(u)
    assert not S.in_maximal_ideal(S.one())


def test_free_poly_no_truncation():
    P = CoeffAlgebra.free_poly(("a",))
    a = P.var("a")
    cube = P.cmul(P.cmul(a, a), a)
    assert not P.is_zero(cube)
    with pytest.raises(ValueError):
        P.dim()


def test_node_absolute_kills_xy():
    R = CurveRing.node_absolute(Q, 8)
    assert (R.x() * R.y()).is_zero()
    e = (R.x() + R.y()) * (R.x() - R.y())
    assert e == R.x(2) - R.y(2)


def test_node_relative_rewrites_xy_to_s():
    S = CoeffAlgebra.free_poly(("s",))
    R = CurveRing.node_relative(S, 8, "s")
    e = R.x() * R.y()
    assert e.coefficient(0, 0) == S.var("s")


def test_cusp_rewrites_x_squared():
    R = CurveRing.cusp(Q, 12)
    assert R.x() * R.x() == R.y(3)
    assert R.x(2) == R.y(3)
    # canonical monomials are x^eps * y^j
    assert all(ex <= 1 for ex, _ in R.canonical_monomials())


def test_truncation_drops_high_degree():
    R = CurveRing.cusp(Q, 5)
    assert R.y(5).is_zero()
    assert not R.y(4).is_zero()
    # x*y^4 has total degree 5
    assert (R.x() * R.y(4)).is_zero()


def test_at_truncation_roundtrip():
    R = CurveRing.cusp(Q, 6)
    e = R.x() + R.y(2)
    up = R.at_truncation(10)
    f = up.element(dict(e.terms))
    assert f.coefficient(1, 0) == Q.one()
    assert f.coefficient(0, 2) == Q.one()


def test_element_order_and_degree():
    R = CurveRing.cusp(Q, 12)
    e = R.x() * R.y(2) + R.y(7)
    assert e.order() == 3  # x*y^2
    assert e.degree() == 7


def test_substitute_into_artin_point():
    S = CoeffAlgebra.free_poly(("b",))
    R = CurveRing.node_absolute(S, 8)
    e = R.x() + R.y().scale(S.var("b"))
    A = CoeffAlgebra.truncated_artin(("u",), 2)
    f = substitute(e, {"b": A.var("u")}, A)
    assert f.coefficient(0, 1) == A.var("u")
    assert f.ring.coeff is A


def test_ideal_gens_truncation_and_degree():
    R = CurveRing.cusp(Q, 10)
    I = IdealGens(R, [R.x() * R.y(), R.y(4)])
    assert I.max_degree() == 4
    J = I.at_truncation(14)
    assert J.ring.trunc == 14
    assert len(J.gens) == 2
