"""Full acceptance battery: one pass/fail line per criterion.

The eleven criteria run once at module scope (criterion 11 reruns the whole
battery with cleared caches and compares serialized results byte-for-byte,
so the underlying computations execute twice).  Each test function then
asserts its criterion's verdict, giving `pytest -v` exactly one line per
criterion.  Expect a total runtime on the order of fifteen minutes.
"""

import json

import pytest

from hilbloc import acceptance
from hilbloc.reports import jsonable

_RESULTS = {}


def _results():
    if not _RESULTS:
        _RESULTS.update(acceptance.run_criteria(seed=0))
    return _RESULTS


def _check(criterion: int):
    r = _results()[criterion]
    if not r.get("pass"):
        pytest.fail(f"criterion {criterion} failed:\n"
                    + json.dumps(jsonable(r), indent=2, sort_keys=True))


def test_criterion_01_node_punctual_ideals_and_classification():
    _check(1)


def test_criterion_02_flatness_relations_iff():
    _check(2)


def test_criterion_03_flag_models_match_catalog():
    _check(3)


def test_criterion_04_models_are_local_complete_intersections():
    _check(4)


def test_criterion_05_model_point_oracle_cross_validation():
    _check(5)


def test_criterion_06_stratum_enumeration_vs_brute_force():
    _check(6)


def test_criterion_07_cusp_colengths_and_pencil_distinctness():
    _check(7)


def test_criterion_08_random_cusp_ideal_classification():
    _check(8)


def test_criterion_09_pencil_flat_limits():
    _check(9)


def test_criterion_10_tangent_dimensions_and_kernel_pairs():
    _check(10)


def test_criterion_11_byte_identical_determinism():
    _check(11)
