from math import pi, sin

import numpy as np
import pytest

from asymdouble.alcove import enumerate_fields
from asymdouble.fusion import build_ring
from asymdouble.modular import (
    TOLERANCE_ENV,
    DegeneracyMismatch,
    ModularDataError,
    NonIntegralError,
    ModularData,
    default_tolerance,
    degenerate_set,
    s_matrix,
    sigma_row_check,
    simple_currents,
    trivially_braided_set,
    verlinde_coeff,
    verlinde_integers,
    verlinde_tensor,
    weyl_sum_s,
)


@pytest.mark.parametrize("k", range(1, 11))
def test_weyl_sum_matches_sine_formula(k):
    general = weyl_sum_s(enumerate_fields(2, k))
    assert np.abs(general - s_matrix(2, k).s).max() < 1e-12


def su3_qdim(l1, l2, k):
    K = k + 3
    q = lambda x: sin(pi * x / K) / sin(pi / K)
    return q(l1 + 1) * q(l2 + 1) * q(l1 + l2 + 2) / q(2)


@pytest.mark.parametrize("k", range(1, 8))
def test_su3_qdims_match_product_formula(k):
    md = s_matrix(3, k)
    for i, f in enumerate(md.table):
        assert md.qdims[i] == pytest.approx(su3_qdim(*f.labels, k), abs=1e-12)


def test_su3_level_three_qdims():
    md = s_matrix(3, 3)
    assert sorted(np.round(md.qdims, 9)) == [1, 1, 1, 2, 2, 2, 2, 2, 2, 3]


@pytest.mark.parametrize("n,k", [(2, 7), (3, 4), (3, 6)])
def test_qdim_is_perron_frobenius_eigenvalue(n, k):
    md = s_matrix(n, k)
    ring = build_ring(n, k)
    for x in range(len(md.table)):
        top = max(abs(np.linalg.eigvals(ring.fusion_matrix(x).astype(float))))
        assert top == pytest.approx(md.qdims[x], abs=1e-9)


@pytest.mark.parametrize("n,k", [(2, 6), (3, 5)])
def test_columns_of_s_diagonalize_fusion_matrices(n, k):
    md = s_matrix(n, k)
    ring = build_ring(n, k)
    s = md.s
    for x in range(len(md.table)):
        nx = ring.fusion_matrix(x).astype(float)  # rows a, columns b: N_{ax}^b
        for y in range(len(md.table)):
            assert np.allclose(nx @ s[:, y], s[x, y] / s[0, y] * s[:, y], atol=1e-10)


@pytest.mark.parametrize("n,k", [(2, 12), (3, 8)])
def test_verlinde_agrees_with_kac_walton(n, k):
    rounded, dev = verlinde_integers(s_matrix(n, k))
    assert dev < 1e-9
    assert (rounded == build_ring(n, k).mult).all()


def test_verlinde_coeff_and_nonintegral_guard():
    md = s_matrix(3, 3)
    assert verlinde_coeff(md, (1, 1), (1, 1), (1, 1)) == 2
    broken = ModularData(md.table, md.s + 0.01 * np.eye(len(md.table)), md.tolerance)
    with pytest.raises(NonIntegralError):
        verlinde_integers(broken)


def test_broken_matrix_fails_check():
    md = s_matrix(2, 3)
    bad = ModularData(md.table, md.s * 1.01, md.tolerance)
    with pytest.raises(ModularDataError):
        bad.check()


@pytest.mark.parametrize("k", [4, 6, 8, 10, 12])
def test_su2_even_level_degenerate_set(k):
    md = s_matrix(2, k)
    grade0 = md.table.grade_indices(0)
    assert degenerate_set(md, grade0) == (0, k)
    assert simple_currents(md, grade0) == (0, k)


@pytest.mark.parametrize("k", [3, 5, 7, 9])
def test_su2_odd_level_has_no_degeneracy(k):
    md = s_matrix(2, k)
    assert degenerate_set(md, md.table.grade_indices(0)) == (0,)


@pytest.mark.parametrize("k", [3, 6])
def test_su3_degenerate_set(k):
    md = s_matrix(3, k)
    found = {md.table[x].labels for x in degenerate_set(md, md.table.grade_indices(0))}
    assert found == {(0, 0), (k, 0), (0, k)}
    assert sigma_row_check(md)


def test_full_system_is_non_degenerate():
    md = s_matrix(3, 3)
    assert degenerate_set(md, range(len(md.table))) == (0,)


def test_trivially_braided_is_contained_in_degenerate():
    for n, k in [(2, 4), (3, 3), (3, 6)]:
        md = s_matrix(n, k)
        g0 = md.table.grade_indices(0)
        assert set(trivially_braided_set(md, g0)) <= set(degenerate_set(md, g0))


def test_degeneracy_mismatch_raised_with_loose_tolerance():
    md = s_matrix(2, 4, tolerance=10.0)
    with pytest.raises((DegeneracyMismatch, ModularDataError)):
        degenerate_set(md, md.table.grade_indices(0))


def test_sigma_row_check_needs_divisibility():
    with pytest.raises(ModularDataError):
        sigma_row_check(s_matrix(3, 4))


def test_tolerance_environment(monkeypatch):
    monkeypatch.setenv(TOLERANCE_ENV, "1e-8")
    assert default_tolerance() == 1e-8
    assert s_matrix(2, 3).tolerance == 1e-8
    monkeypatch.setenv(TOLERANCE_ENV, "-1")
    with pytest.raises(ValueError):
        default_tolerance()
