"""Flag strata: patterns, local models, catalog comparison, smoothness."""

import pytest

from hilbloc import gb
from hilbloc.flags import (
    FlagPattern,
    check_lci,
    enumerate_strata,
    expected_model,
    local_model,
    models_equivalent,
    retained_params,
    validate_model_points,
)


def test_pattern_validation():
    FlagPattern(4, (2, 2, 1, 1))
    FlagPattern(5, (3, 2))
    with pytest.raises(ValueError):
        FlagPattern(3, (2, 2, 2))  # level 2 only admits index 1
    with pytest.raises(ValueError):
        FlagPattern(5, (3, 1))  # step of 2 not allowed
    with pytest.raises(ValueError):
        FlagPattern(5, (2, 3))  # indices may not increase


def test_block_word():
    assert FlagPattern(6, (3, 3, 2, 2)).block_word() == [("A", 2), ("A", 2)]
    assert FlagPattern(5, (3, 3, 2)).block_word() == [("A", 2), ("B", 1)]
    assert FlagPattern(5, (3, 2, 2)).block_word() == [("B", 1), ("A", 2)]


def test_label_is_descending_chain():
    p = FlagPattern(4, (2, 2, 1))
    assert p.label() == "(Q_2^4, Q_2^3, Q_1^2)"


def test_two_level_model_is_smooth():
    for m, i in [(3, 2), (4, 2), (5, 3)]:
        model = local_model(FlagPattern(m, (i, i)))
        assert model.equations == []
        model = local_model(FlagPattern(m, (i, i - 1)))
        assert model.equations == []


def test_three_level_equation_counts():
    # one equation for the single-repeat words, none for strictly moving ones
    assert len(local_model(FlagPattern(5, (3, 3, 2))).equations) == 1
    assert len(local_model(FlagPattern(5, (3, 2, 2))).equations) == 1
    assert len(local_model(FlagPattern(5, (3, 3, 3))).equations) == 0
    assert len(local_model(FlagPattern(5, (3, 2, 1))).equations) == 0


def test_derived_matches_catalog():
    for m, chain in [(6, (3, 3, 2, 2)), (5, (3, 3, 2)), (5, (3, 2, 2))]:
        pattern = FlagPattern(m, chain)
        derived = local_model(pattern)
        expected = expected_model(pattern)
        assert models_equivalent(derived, expected), pattern.label()


def test_pure_a_word_parameter_count():
    # h two-step blocks retain m + 1 + 2(h-1) coordinates
    for m, chain, h in [(4, (2, 2), 1), (6, (3, 3, 2, 2), 2),
                        (8, (4, 4, 3, 3, 2, 2), 3)]:
        model = local_model(FlagPattern(m, chain))
        assert len(model.params) == m + 1 + 2 * (h - 1)


def test_expected_model_outside_catalog():
    with pytest.raises(ValueError):
        expected_model(FlagPattern(4, (2, 2, 1)))


def test_check_lci():
    model = local_model(FlagPattern(6, (3, 3, 2, 2)))
    assert check_lci(model) is True


def test_equations_cut_complete_intersection():
    model = local_model(FlagPattern(5, (3, 3, 2)))
    assert gb.is_regular_sequence(model.equations)


def test_validate_model_points():
    from hilbloc.coeffs import CoeffAlgebra
    pattern = FlagPattern(4, (2, 2))
    model = local_model(pattern)
    S = CoeffAlgebra.truncated_artin(("u", "v"), 3)
    report = validate_model_points(pattern, model, S, trials=6, seed=3)
    assert report["ok"], report
    assert report["forward"]["points"] >= 1
    assert report["backward"]["points"] >= 1
    assert report["perturbation"]["rejections"] == report["perturbation"]["points"]


def test_enumerate_strata_counts():
    # depth 1: one stratum per top index 1..m-1
    assert [p.indices for p in enumerate_strata(3, 1)] == [(1,), (2,)]
    s2 = enumerate_strata(4, 2)
    labels = {p.label() for p in s2}
    assert "(Q_2^4, Q_2^3)" in labels
    assert "(Q_2^4, Q_1^3)" in labels
    # all chains respect index bounds at every level
    for p in enumerate_strata(5, 3):
        for j, idx in enumerate(p.indices):
            assert 1 <= idx <= p.m - j - (0 if j == 0 else 0)


def test_retained_params_subset_of_model_params():
    pattern = FlagPattern(5, (3, 3, 2))
    model = local_model(pattern)
    assert set(model.params) <= set(retained_params(pattern))
