import json
from math import comb

import pytest
import sympy
from hypothesis import given

from preproj import errors
from preproj import linalg as la
from preproj.cartan import ValuedQuiver, build_cartan, standard_quiver
from preproj.catalog import DYNKIN_TYPES
from preproj.hilbert import (
    GradedDimTable,
    graded_dim_table,
    hilbert_polynomial_dynkin,
    hilbert_product,
    recursion_residual,
    sincerity_check,
    socle_matrix,
    socle_placement,
    vieta_matrix,
)
from preproj.weyl import coxeter_element, nakayama_permutation

from quivergen import valued_quivers


def explicit_vieta(X, r):
    """V_r(X) = sum_k (-1)^k C(r-k, k) X^(r-2k), no recursion involved."""
    n = len(X)
    total = la.zeros(n)
    for k in range(r // 2 + 1):
        total = la.add(total, la.scale(la.matpow(X, r - 2 * k), (-1) ** k * comb(r - k, k)))
    return total


def quiver(n, arrows, d=None):
    return build_cartan(ValuedQuiver.create(d or (1,) * n, arrows))


KRONECKER = quiver(2, [(0, 1, 2)])
KRONECKER3 = quiver(2, [(0, 1, 3)])
AFFINE_A2 = quiver(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
JORDAN = quiver(1, [(0, 0, 1)])


def test_vieta_scalar():
    assert [vieta_matrix(((1,),), r)[0][0] for r in range(7)] == [1, 1, 0, -1, -1, 0, 1]
    assert [vieta_matrix(((2,),), r)[0][0] for r in range(6)] == [1, 2, 3, 4, 5, 6]
    with pytest.raises(ValueError):
        vieta_matrix(((1,),), -1)


def test_kronecker_values():
    B = KRONECKER.Bbar
    assert vieta_matrix(B, 2) == ((3, 0), (0, 3))
    assert vieta_matrix(B, 3) == ((0, 4), (4, 0))
    assert vieta_matrix(B, 4) == ((5, 0), (0, 5))


def test_three_kronecker_values():
    assert vieta_matrix(KRONECKER3.Bbar, 2) == ((8, 0), (0, 8))
    assert vieta_matrix(KRONECKER3.Bbar, 3) == ((0, 21), (21, 0))


def test_affine_a2_values():
    J = ((1, 1, 1),) * 3
    assert vieta_matrix(AFFINE_A2.Bbar, 2) == J
    assert vieta_matrix(AFFINE_A2.Bbar, 3) == la.add(J, la.identity(3))


@given(valued_quivers(max_n=4))
def test_recursion_matches_explicit_sum(q):
    Bbar = build_cartan(q).Bbar
    for r in range(7):
        assert vieta_matrix(Bbar, r) == explicit_vieta(Bbar, r)


@pytest.mark.parametrize("cd", [KRONECKER, AFFINE_A2, JORDAN, quiver(2, [(0, 1, 4)], d=(2, 1))])
def test_table_is_series_inverse(cd):
    # D (I - Bbar t + t^2)^-1 expanded as a power series, via sympy
    t = sympy.symbols("t")
    n = cd.n
    M = sympy.eye(n) - sympy.Matrix(cd.Bbar) * t + sympy.eye(n) * t**2
    inv_det = sympy.series(1 / M.det(), t, 0, 7).removeO()
    series = (M.adjugate() * inv_det).applyfunc(sympy.expand)
    table = graded_dim_table(cd, max_degree=6)
    for r in range(7):
        coeff = series.applyfunc(lambda e: e.coeff(t, r))
        assert table.matrices[r] == la.freeze((sympy.Matrix(cd.D) * coeff).tolist())


def test_g2_table():
    table = graded_dim_table(build_cartan(standard_quiver("G2")))
    assert table.dynkin_top == 4
    assert table.matrices == (
        ((3, 0), (0, 1)),
        ((0, 3), (3, 0)),
        ((6, 0), (0, 2)),
        ((0, 3), (3, 0)),
        ((3, 0), (0, 1)),
    )
    assert table.total_dimension() == 28


@pytest.mark.parametrize("n", range(1, 9))
def test_type_a_total_dimension(n):
    cd = build_cartan(standard_quiver(f"A{n}"))
    assert graded_dim_table(cd).total_dimension() == n * (n + 1) * (n + 2) // 6


def test_dynkin_padding():
    table = graded_dim_table(build_cartan(standard_quiver("A2")), max_degree=4)
    assert table.matrices[1] == ((0, 1), (1, 0))
    assert all(la.is_zero(m) for m in table.matrices[2:])


def test_non_dynkin_needs_degree():
    with pytest.raises(errors.NonDynkinNeedsMaxDegree):
        graded_dim_table(KRONECKER)
    assert graded_dim_table(JORDAN, max_degree=4).matrices[4] == ((5,),)


def _dynkin(name):
    cd = build_cartan(standard_quiver(name))
    cox = coxeter_element(cd)
    return cd, cox.order, nakayama_permutation(cd, None, cox).rho


@pytest.mark.parametrize("name", DYNKIN_TYPES)
def test_truncation_and_socle(name):
    cd, h, rho = _dynkin(name)
    assert la.is_zero(vieta_matrix(cd.Bbar, h - 1))
    assert not la.is_zero(vieta_matrix(cd.Bbar, h - 2))
    assert socle_matrix(cd, h, rho) == socle_placement(cd, rho)


def test_socle_examples():
    cd, h, rho = _dynkin("A3")
    assert socle_matrix(cd, h, rho) == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    cd, h, rho = _dynkin("G2")
    assert socle_matrix(cd, h, rho) == ((3, 0), (0, 1))


def test_socle_mismatch():
    cd, h, rho = _dynkin("A3")
    with pytest.raises(errors.SocleMismatch):
        socle_matrix(cd, h, (0, 1, 2))


@pytest.mark.parametrize("name", DYNKIN_TYPES)
def test_hilbert_identity(name):
    cd, h, rho = _dynkin(name)
    rep = hilbert_polynomial_dynkin(cd, socle_placement(cd, rho), h)
    assert rep.passed, rep.failure


@pytest.mark.parametrize("name", DYNKIN_TYPES)
def test_hilbert_identity_sign_of_top_term(name):
    # the top coefficient is +socle, so "- socle t^h" can never hold
    cd, h, rho = _dynkin(name)
    coeffs = hilbert_product(cd, h)
    assert coeffs[h] == socle_placement(cd, rho)
    assert coeffs[h] != la.scale(socle_placement(cd, rho), -1)
    rep = hilbert_polynomial_dynkin(cd, la.scale(socle_placement(cd, rho), -1), h)
    assert not rep.passed and rep.failure["degree"] == h


def test_hilbert_identity_a1():
    cd, h, rho = _dynkin("A1")
    assert h == 2
    assert hilbert_product(cd, h) == [((1,),), ((0,),), ((1,),)]


def test_hilbert_identity_reports_failure():
    cd, h, rho = _dynkin("A2")
    bad = ((0, 2), (1, 0))
    rep = hilbert_polynomial_dynkin(cd, socle_placement(cd, rho), h, bad)
    assert not rep.passed
    assert rep.failure["degree"] == 2


def test_hilbert_identity_refuses_non_dynkin():
    with pytest.raises(errors.NonDynkinInput):
        hilbert_polynomial_dynkin(KRONECKER, la.zeros(2), 4)


@pytest.mark.parametrize("name", DYNKIN_TYPES)
def test_dynkin_tables_sincere_and_symmetric(name):
    cd = build_cartan(standard_quiver(name))
    table = graded_dim_table(cd)
    assert sincerity_check(table, cd.classification).passed
    assert all(la.is_symmetric(m) for m in table.matrices)
    assert all(x >= 0 for m in table.matrices for row in m for x in row)


def test_sincerity_reports():
    zero_row = ((0, 0), (1, 1))
    table = GradedDimTable((la.identity(2), zero_row, zero_row))
    rep = sincerity_check(table, KRONECKER.classification)
    assert not rep.passed
    assert rep.warnings == [(1, 1)]
    assert rep.violations == [(2, 1)]
    dyn = build_cartan(standard_quiver("A2")).classification
    assert sincerity_check(GradedDimTable((la.identity(2), zero_row), 0), dyn).passed


@given(valued_quivers())
def test_closed_form_symmetric(q):
    cd = build_cartan(q)
    for r in range(7):
        assert la.is_symmetric(la.matmul(cd.D, vieta_matrix(cd.Bbar, r)))


def test_recursion_residual():
    table = graded_dim_table(KRONECKER, max_degree=6)
    assert recursion_residual(table.matrices, KRONECKER.Bbar) == []
    mats = list(table.matrices)
    mats[3] = ((0, 4), (5, 0))
    assert (2, 2, 1) in recursion_residual(mats, KRONECKER.Bbar)


def test_json_and_csv():
    table = graded_dim_table(KRONECKER, max_degree=2)
    doc = json.loads(json.dumps(table.to_json()))
    assert GradedDimTable.from_json(doc) == table
    assert GradedDimTable.from_json(json.dumps(doc)) == table
    lines = table.to_csv().splitlines()
    assert lines[0] == "degree,i,j,dim"
    assert lines[1] == "0,1,1,1"
    assert "2,2,2,3" in lines
    assert len(lines) == 1 + 3 * 4
