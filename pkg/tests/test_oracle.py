"""Flattening oracle: colength, membership, ideal equality, free-rank."""

from fractions import Fraction

import pytest

from hilbloc.coeffs import CoeffAlgebra
from hilbloc.oracle import (
    InfiniteColengthError,
    colength,
    ideal_equal,
    member,
    quotient_basis,
    s_free_rank,
)
from hilbloc.rings import CurveRing, IdealGens


Q = CoeffAlgebra.rationals()


def node(trunc=16):
    return CurveRing.node_absolute(Q, trunc)


def cusp(trunc=24):
    return CurveRing.cusp(Q, trunc)


def test_colength_monomial_ideal_on_node():
    R = node()
    # (x^2, y^2) on the node leaves 1, x, y  -> colength 3
    I = IdealGens(R, [R.x(2), R.y(2)])
    assert colength(I) == 3


def test_colength_principal_cusp_powers():
    R = cusp(30)
    # quotient by (y^n) has basis 1, y, ..., y^{n-1}, x, xy, ..., xy^{n-1}
    for n in range(1, 5):
        I = IdealGens(R, [R.y(n)])
        assert colength(I) == 2 * n


def test_colength_infinite_raises():
    R = node()
    I = IdealGens(R, [R.x()])
    with pytest.raises(InfiniteColengthError):
        colength(I)


def test_member_basic():
    R = node()
    I = IdealGens(R, [R.x(2), R.y(2)])
    assert member(R.x(3) + R.y(2), I)
    assert not member(R.x(), I)
    assert member(R.zero(), I)


def test_member_uses_rewriting():
    R = cusp(30)
    I = IdealGens(R, [R.y(3)])
    # x^2 rewrites to y^3
    assert member(R.x() * R.x(), I)
    assert not member(R.x(), I)


def test_ideal_equal_generator_presentation_independent():
    R = node()
    I = IdealGens(R, [R.x(2), R.y(2)])
    J = IdealGens(R, [R.x(2) + R.y(2), R.y(2), R.x(3)])
    K = IdealGens(R, [R.x(2), R.y(3)])
    assert ideal_equal(I, J)
    assert not ideal_equal(I, K)


def test_quotient_basis_matches_colength():
    R = cusp(30)
    I = IdealGens(R, [R.x() * R.y(), R.y(2)])
    c = colength(I)
    D = 12
    qb = quotient_basis(I, D)
    assert len(qb.monomials) == c


def test_s_free_rank_flat_family():
    # A point moving along the x-branch: I = (y, x - a) is free of rank 1.
    S = CoeffAlgebra.truncated_artin(("a",), 2)
    R = CurveRing.node_absolute(S, 12)
    I = IdealGens(R, [R.y(), R.x() - R.one().scale(S.var("a"))])
    assert s_free_rank(I, [(0, 0)])


def test_s_free_rank_detects_jump():
    # I = (x^2, xy, y^2, a*x) jumps: at a=0 the colength is 3, away it is 2.
    S = CoeffAlgebra.truncated_artin(("a",), 2)
    R = CurveRing.node_absolute(S, 12)
    I = IdealGens(R, [R.x(2), R.y(2), R.x().scale(S.var("a"))])
    assert not s_free_rank(I, [(0, 0), (1, 0), (0, 1)])
