import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import complex_coeff, poly_coeffs
from entireops.catalog import CATALOG, phi_small_exp
from entireops.errors import DegreeCapError
from entireops.expr import Const, Exp, N, Z, geometric, poly_expr
from entireops.operators import (
    TRUNCATION_NOTE, OperatorSequence, apply_operator, commutation_check, operator_power_expr, translation,
)
from entireops.taylor import DEGREE_CAP, TaylorPoly

SAMPLES = np.array([0, 1, -1j, 0.5 + 0.5j, -1.5, 2j])
OPERATOR_NAMES = ["derivative", "translation", "five_nine", "phi_log", "phi_power"]


def test_translation_shifts_argument():
    g = apply_operator(translation(1.0), 1, [0, 0, 1])
    assert g.allclose(TaylorPoly([1, 2, 1]))


def test_index_zero_is_identity():
    f = TaylorPoly([-1j, 0, 0, 1])
    assert apply_operator(CATALOG["five_nine"].seq, 0, f).allclose(f)


def test_small_exp_operator_on_z():
    g = apply_operator(phi_small_exp(), 1, [0, 1])
    assert g.allclose(TaylorPoly([1 + 1 / 9, 1 / 9]))


def test_third_derivative_power():
    g = apply_operator(operator_power_expr(Z(), 3), 1, TaylorPoly.monomial(5))
    assert g.allclose(TaylorPoly.monomial(2, 60).padded(5))


def test_translation_power():
    g = apply_operator(operator_power_expr(Exp(Const(1.0)), 2), 1, [0, 1])
    assert g.allclose(TaylorPoly([2, 1]))


def test_scaled_derivative_power():
    seq = OperatorSequence.power_family(Z(), geometric(2.0))
    assert apply_operator(seq, 2, [0, 0, 1]).allclose(TaylorPoly([8, 0, 0]))


def test_degree_cap_enforced():
    with pytest.raises(DegreeCapError):
        apply_operator(CATALOG["derivative"].seq, 1, np.ones(DEGREE_CAP + 2))


def test_truncated_input_is_annotated():
    f = TaylorPoly([1, 1, 0.5], is_exact=False)
    g = apply_operator(CATALOG["derivative"].seq, 1, f)
    assert not g.is_exact and TRUNCATION_NOTE in g.notes
    assert g.order == f.order


def test_exact_input_stays_exact():
    g = apply_operator(CATALOG["translation"].seq, 3, [1, 2, 3])
    assert g.is_exact and not g.notes


@given(poly_coeffs(10), st.integers(0, 10))
def test_monomial_symbol_is_repeated_derivative(c, k):
    f = TaylorPoly(c)
    g = apply_operator(poly_expr([0] * k + [1]), 1, f)
    d = f
    for _ in range(k):
        d = d.derive()
    assert np.array_equal(g.coeffs, d.padded(f.order).coeffs)


@pytest.mark.parametrize("name", OPERATOR_NAMES)
@given(p=poly_coeffs(6), q=poly_coeffs(6), a=complex_coeff, b=complex_coeff)
def test_linearity(name, p, q, a, b):
    seq = CATALOG[name].seq
    P, Q = TaylorPoly(p), TaylorPoly(q)
    lhs = apply_operator(seq, 3, P * a + Q * b)(SAMPLES)
    rhs = a * apply_operator(seq, 3, P)(SAMPLES) + b * apply_operator(seq, 3, Q)(SAMPLES)
    scale = 1 + np.max(np.abs(a * apply_operator(seq, 3, P)(SAMPLES))) + np.max(np.abs(b * apply_operator(seq, 3, Q)(SAMPLES)))
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


@pytest.mark.parametrize("base", [Z(), Exp(Const(1.0)), phi_small_exp(), poly_expr([1, 0.5, 2])])
@pytest.mark.parametrize("n", range(1, 7))
def test_power_is_iterated_application(base, n):
    f = TaylorPoly([1, -2, 0.5, 3, 1j, 0.25, 2])
    once = OperatorSequence(base)
    g = f
    for _ in range(n):
        g = apply_operator(once, 1, g)
    h = apply_operator(operator_power_expr(base, n), 1, f)
    assert np.max(np.abs(g.coeffs - h.coeffs)) <= 1e-10 * (1 + np.max(np.abs(g.coeffs)))


def test_power_expr_free_index_matches_frozen():
    fam = OperatorSequence.power_family(phi_small_exp())
    frozen = operator_power_expr(phi_small_exp(), 4)
    f = TaylorPoly([1, 2, 3, 4, 5])
    assert apply_operator(fam, 4, f).allclose(apply_operator(frozen, 1, f))


def test_commutation_derivative():
    assert commutation_check(CATALOG["derivative"].seq, 1, 1.0, [0, 0, 1], SAMPLES) <= 1e-13


def test_commutation_small_exp():
    seq = OperatorSequence(phi_small_exp())
    assert commutation_check(seq, 1, 1j, [0, 0, 0, 1], SAMPLES) <= 1e-9


@pytest.mark.parametrize("name", OPERATOR_NAMES)
@pytest.mark.parametrize("a", [1.0, -0.5j, 0.3 + 0.7j])
def test_commutation_catalog(name, a):
    f = TaylorPoly([1, -1, 2, 0.5j, 1])
    seq = CATALOG[name].seq
    scale = np.max(np.abs(apply_operator(seq, 3, f)(SAMPLES + a)))
    assert commutation_check(seq, 3, a, f, SAMPLES) <= 1e-9 * (1 + scale)


def test_commutation_index_zero():
    assert commutation_check(CATALOG["phi_log"].seq, 0, 2 - 1j, [3, 1, 4, 1, 5], SAMPLES) == 0.0


def test_index_expr_exponent():
    # Exp(N) is e^{nz}: the n-th power of the unit translation
    g = apply_operator(OperatorSequence(Exp(N)), 3, [0, 1])
    assert g.allclose(TaylorPoly([3, 1]))
