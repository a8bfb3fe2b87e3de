"""Node deformations: flatness relations, classification, punctual chain."""

from fractions import Fraction

import pytest

from hilbloc.coeffs import CoeffAlgebra
from hilbloc.node import (
    DeformShape,
    c_ideal,
    classify_node_ideal,
    closed_form_relations,
    default_node_ring,
    derive_flat_relations,
    flat_point,
    free_coordinate_names,
    punctual_chain,
    q_ideal,
    sample_pool,
    solve_relations,
    verify_flat_iff,
)
from hilbloc.oracle import colength, ideal_equal
from hilbloc.rings import CurveRing


def artin():
    return CoeffAlgebra.truncated_artin(("u", "v"), 3)


def test_q_and_c_ideal_colengths():
    for m in range(2, 6):
        for i in range(1, m + 1):
            assert colength(q_ideal(m, i)) == m
        for i in range(1, m):
            assert colength(c_ideal(m, i, Fraction(2))) == m


def test_derived_relations_match_closed_form():
    for m, i in [(3, 1), (3, 2), (4, 2), (5, 3)]:
        for rel in (False, True):
            shape = DeformShape(m, i, relative=rel)
            derived = derive_flat_relations(shape)
            closed = closed_form_relations(shape)
            assert derived.same_ideal(closed), (m, i, rel)


def test_solved_points_are_flat():
    S = artin()
    shape = DeformShape(4, 2, relative=False)
    pool = sample_pool(S)
    free = {n: pool[k % len(pool)] for k, n in
            enumerate(free_coordinate_names(shape))}
    assignment = solve_relations(shape, free, S, zero_side="b")
    assert assignment is not None
    assert flat_point(shape, assignment, S)


def test_flat_iff_relations_hold():
    S = artin()
    for m, i in [(3, 2), (4, 2)]:
        for rel in (False, True):
            report = verify_flat_iff(DeformShape(m, i, relative=rel), S,
                                     trials=10, seed=7)
            assert report["ok"], report


def test_classify_q_type():
    m, i = 5, 3
    cls = classify_node_ideal(q_ideal(m, i))
    assert (cls.kind, cls.m, cls.i) == ("type-q", m, i)


def test_classify_c_type_recovers_parameter():
    m, i, a = 5, 2, Fraction(-3, 4)
    cls = classify_node_ideal(c_ideal(m, i, a))
    assert (cls.kind, cls.m, cls.i, cls.a) == ("type-c", m, i, a)


def test_classify_round_trip_on_presentation_change():
    R = default_node_ring(4)
    I = c_ideal(4, 2, Fraction(5), R)
    # add a redundant generator; classification must not change
    from hilbloc.rings import IdealGens
    J = IdealGens(R, list(I.gens) + [I.gens[0] * R.y()])
    cls = classify_node_ideal(J)
    assert (cls.kind, cls.m, cls.i, cls.a) == ("type-c", 4, 2, Fraction(5))
    assert ideal_equal(I, c_ideal(cls.m, cls.i, cls.a, R))


def test_classify_rejects_non_punctual():
    R = default_node_ring(3)
    from hilbloc.rings import IdealGens
    I = IdealGens(R, [R.y() - R.one()])  # unit coefficient: not punctual
    assert classify_node_ideal(I).kind == "not-punctual"


def test_punctual_chain_structure():
    for m in (3, 4, 5):
        chain = punctual_chain(m)
        assert chain.m == m
        assert len(chain.components) == m - 1
        labels = [c.label for c in chain.components]
        assert labels == [f"C_{i}^{m}" for i in range(1, m)]
        # gluing points Q_i^m for i = 2..m-1
        assert len(chain.gluing_points) == max(0, m - 2)
        for name, I in chain.gluing_points:
            assert name.startswith("Q_")
            assert colength(I) == m
        # every component parameterizes colength-m ideals
        for comp in chain.components:
            assert colength(comp.ideal_at(Fraction(1))) == m


def test_punctual_chain_rejects_small_m():
    with pytest.raises(ValueError):
        punctual_chain(1)
