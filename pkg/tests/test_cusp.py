"""Cusp-curve punctual ideals: normal forms, classification, flat limits."""

from fractions import Fraction

import pytest

from hilbloc.cusp import (
    TO_INFINITY,
    TO_ZERO,
    CuspCanonicalIdeal,
    TheoremViolationError,
    associate_normal_form,
    classify_cusp_ideal,
    colength_formula,
    cusp_ring,
    default_cusp_ring,
    distinctness,
    expected_limit,
    flat_limit_certify,
    pair_chain_length,
    pair_is_successor,
    pair_successors,
    principal_ideal_normalize,
)
from hilbloc.oracle import colength, ideal_equal
from hilbloc.rings import IdealGens


def test_colength_formula_against_oracle():
    R = cusp_ring(40)
    cases = ([CuspCanonicalIdeal.pow_y(n) for n in range(1, 6)]
             + [CuspCanonicalIdeal.x_only()]
             + [CuspCanonicalIdeal.x_pow_y(m) for m in range(1, 6)]
             + [CuspCanonicalIdeal.two_gen(m, k)
                for m in range(0, 5) for k in (1, 2)]
             + [CuspCanonicalIdeal.binom(m, k, Fraction(3))
                for m in range(0, 5) for k in (1, 2)])
    for c in cases:
        assert colength(c.generators(R)) == colength_formula(c), c.label()


def test_associate_normal_form_units():
    R = cusp_ring(30)
    # x*y^2 times a unit normalizes back to x*y^2
    unit = R.one() + R.y() + R.x().scale(Fraction(2))
    e = R.monomial(1, 2) * unit
    form = associate_normal_form(e)
    assert str(form.canonical) == str(R.monomial(1, 2))
    assert form.verify(e)


def test_principal_ideal_normalize():
    R = cusp_ring(30)
    unit = R.one() - R.y().scale(Fraction(1, 3))
    c = principal_ideal_normalize(R.y(3) * unit)
    assert c.label() == "(y^3)"


def test_classify_recognizes_each_family():
    R = cusp_ring(30)
    for c in [CuspCanonicalIdeal.pow_y(2), CuspCanonicalIdeal.x_only(),
              CuspCanonicalIdeal.x_pow_y(2), CuspCanonicalIdeal.two_gen(1, 2),
              CuspCanonicalIdeal.binom(2, 1, Fraction(-5, 2))]:
        got = classify_cusp_ideal(c.generators(R))
        assert got.label() == c.label()


def test_classify_faithful_under_unit_scaling():
    R = cusp_ring(30)
    unit = R.one() + R.y().scale(Fraction(7))
    target = CuspCanonicalIdeal.binom(1, 1, Fraction(2))
    I = IdealGens(R, [g * unit for g in target.generators(R).gens])
    got = classify_cusp_ideal(I)
    assert got.label() == target.label()
    assert ideal_equal(I, got.generators(R))


def test_pencil_distinctness():
    for m in range(0, 4):
        for k in (1, 2):
            assert distinctness(m, k, Fraction(1), Fraction(2))
            assert not distinctness(m, k, Fraction(3), Fraction(3))


def test_pair_poset():
    assert pair_chain_length(2, 3) == 4
    assert pair_is_successor((2, 3), (1, 3))
    assert not pair_is_successor((2, 3), (2, 2))  # (2, 2) is not a valid pair
    assert not pair_is_successor((2, 3), (2, 3))
    assert not pair_is_successor((2, 3), (0, 4))
    assert pair_successors((2, 3)) == [(1, 3)]
    for succ in pair_successors((3, 4)):
        assert pair_is_successor((3, 4), succ)


def test_flat_limits_match_table():
    for m in (0, 1, 2, 3):
        for k in (1, 2):
            for direction in (TO_ZERO, TO_INFINITY):
                lim = flat_limit_certify(m, k, direction)
                assert lim.label() == expected_limit(m, k, direction).label()


def test_flat_limit_rejects_wrong_claim():
    wrong = CuspCanonicalIdeal.pow_y(5)
    with pytest.raises(TheoremViolationError):
        flat_limit_certify(1, 1, TO_ZERO, claimed=wrong)


def test_default_ring_large_enough():
    R = default_cusp_ring(6)
    c = CuspCanonicalIdeal.two_gen(4, 2)
    assert colength(c.generators(R)) == colength_formula(c)
