"""Tangent spaces: Hom dimensions, kernel pairs, pencil-family scans."""

from fractions import Fraction

from hilbloc.cusp import CuspCanonicalIdeal, cusp_ring
from hilbloc.rings import IdealGens
from hilbloc.tangent import (
    explicit_kernel_pairs,
    hom_contains_pairs,
    hom_dim,
    kernel_pairs_check,
    p1_scan,
    principal_hom_dim,
    scan_singular_points,
)


def test_hom_dim_principal_ideal():
    R = cusp_ring(30)
    I = IdealGens(R, [R.y(3)])
    # R/(y^n) has colength 2n; Hom(I, R/I) for a principal punctual ideal
    # matches the direct endomorphism computation
    assert hom_dim(I).dimension == principal_hom_dim(I)


def test_hom_dim_paths_agree():
    R = cusp_ring(36)
    for c in [CuspCanonicalIdeal.two_gen(1, 1), CuspCanonicalIdeal.two_gen(2, 2),
              CuspCanonicalIdeal.two_gen(2, 1)]:
        I = c.generators(R)
        d1 = hom_dim(I, path="factorization").dimension
        d2 = hom_dim(I, path="generic").dimension
        assert d1 == d2, c.label()


def test_two_gen_dimension_formulas():
    # (x*y^m, y^(m+2)) -> 2m+3 and (x*y^(m+1), y^(m+2)) -> 2m+4
    for m in range(0, 4):
        R = cusp_ring(4 * m + 24)
        low = hom_dim(CuspCanonicalIdeal.two_gen(m, 2).generators(R)).dimension
        high = hom_dim(CuspCanonicalIdeal.two_gen(m + 1, 1).generators(R)).dimension
        assert low == 2 * m + 3
        assert high == 2 * m + 4


def test_explicit_kernel_pairs_land_in_hom():
    for family in ("low", "high"):
        for m in (1, 2, 3):
            assert explicit_kernel_pairs(family, m)
            assert kernel_pairs_check(family, m)
            assert hom_contains_pairs(family, m)


def test_p1_scan_colength_2():
    table = p1_scan(2)
    dims = dict(table)
    generic = 2
    jumps = scan_singular_points(table, generic)
    assert len(jumps) == 1
    assert set(dims.values()) == {2, 3}


def test_p1_scan_colength_3():
    table = p1_scan(3)
    dims = dict(table)
    generic = 3
    jumps = scan_singular_points(table, generic)
    assert len(jumps) == 1
    assert set(dims.values()) == {3, 4}
