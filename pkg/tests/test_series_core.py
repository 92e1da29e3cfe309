import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import complex_coeff, poly_coeffs
from entireops.catalog import CATALOG, phi_small_exp
from entireops.circle import circle_extrema, growth_metrics
from entireops.errors import DegreeCapError
from entireops.expr import (
    Const, Exp, N, Z, evaluate, explicit, from_json, geometric, log_evaluate, poly_expr, taylor_coeffs, to_json,
)
from entireops.taylor import DEGREE_CAP, TaylorPoly


# -- TaylorPoly ----------------------------------------------------------------------


@given(poly_coeffs())
def test_value_at_origin_is_constant_term(c):
    p = TaylorPoly(c)
    assert p(0) == p.coeffs[0]


@given(poly_coeffs())
def test_derive_shifts_coefficients(c):
    p = TaylorPoly(c)
    d = p.derive()
    for k in range(p.order):
        assert d.coeffs[k] == (k + 1) * p.coeffs[k + 1]


@given(poly_coeffs(), st.integers(1, 5), complex_coeff)
def test_trailing_zeros_do_not_change_values(c, extra, z):
    p = TaylorPoly(c)
    q = TaylorPoly(list(c) + [0] * extra)
    assert p(z) == q(z)


@given(poly_coeffs(6), st.floats(-1.4, 1.4), st.floats(-1.4, 1.4))
def test_derivative_matches_central_difference(c, x, y):
    p = TaylorPoly(c)
    z, h = complex(x, y), 1e-6
    fd = (p(z + h) - p(z - h)) / (2 * h)
    assert abs(p.derive()(z) - fd) <= 1e-4 * (1 + abs(p.derive().derive()(z)))


def test_translate_matches_shifted_evaluation():
    p = TaylorPoly([1, 2, 3])
    assert p.translate(1).allclose(TaylorPoly([6, 8, 3]))


@given(poly_coeffs(6), complex_coeff, complex_coeff)
def test_translate_is_evaluation_at_shifted_point(c, a, z):
    p = TaylorPoly(c)
    assert abs(p.translate(a)(z) - p(z + a)) <= 1e-9 * (1 + np.abs(p.coeffs).sum() * (1 + abs(a) + abs(z)) ** p.order)


def test_degree_cap():
    with pytest.raises(DegreeCapError):
        TaylorPoly(np.ones(DEGREE_CAP + 2)).check_cap()
    TaylorPoly(np.ones(DEGREE_CAP + 1)).check_cap()


# -- evaluate ------------------------------------------------------------------------


def test_evaluate_small_exp_at_origin():
    assert evaluate(phi_small_exp(), 1, 0) == pytest.approx(1 / 9)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_index_zero_is_one(name):
    assert evaluate(CATALOG[name].seq.expr, 0, 17 - 3j) == 1


def test_five_nine_at_origin():
    assert evaluate(CATALOG["five_nine"].seq.expr, 2, 0) == pytest.approx(1 / 81, rel=1e-15)


def test_list_sequence_exhausted():
    with pytest.raises(IndexError):
        evaluate(explicit([1, 2, 3]) * Z(), 5, 1.0)


def test_exp_never_zero():
    e = Exp(Const(3.0) * N)
    z = np.array([-200, -700, 5j, -50 + 2j])
    assert np.all(np.isfinite(np.asarray(log_evaluate(e, 2, z)).real))


def test_overflowing_intermediate_falls_back_to_logs():
    # (e^z)^n e^{-nz} = 1, though e^{400 n} alone overflows
    expr = Exp(Const(1.0)) ** N * Exp(Const(-1.0) * N)
    assert evaluate(expr, 3, 400.0) == pytest.approx(1.0)


def test_result_overflow_raises():
    with pytest.raises(OverflowError):
        evaluate(Exp(N), 10, 100.0)


# -- taylor_coeffs -------------------------------------------------------------------


def test_taylor_exp2z():
    t = taylor_coeffs(Exp(Const(2.0)), 1, 3)
    np.testing.assert_allclose(t.coeffs, [1, 2, 2, 4 / 3], rtol=1e-15)
    assert not t.is_exact


def test_taylor_small_exp():
    t = taylor_coeffs(phi_small_exp(), 1, 2)
    np.testing.assert_allclose(t.coeffs, [1 / 9, 1 + 1 / 9, 1 / 18], rtol=1e-15)


def test_taylor_five_nine():
    t = taylor_coeffs(CATALOG["five_nine"].seq.expr, 1, 1)
    np.testing.assert_allclose(t.coeffs, [1 / 9, 5 + 1 / 9], rtol=1e-15)


def test_taylor_of_polynomial_is_exact():
    t = taylor_coeffs(poly_expr([1, 2, 3]) ** N, 2, 6)
    assert t.is_exact and t.tail_bound == 0
    np.testing.assert_allclose(t.coeffs, [1, 4, 10, 12, 9, 0, 0], atol=1e-13)


@pytest.mark.parametrize("name", sorted(CATALOG))
@pytest.mark.parametrize("n", [1, 2, 5, 20])
def test_taylor_matches_evaluate_within_tail(name, n):
    expr = CATALOG[name].seq.expr
    t = taylor_coeffs(expr, n, 60)
    z = 0.9 * np.exp(2j * np.pi * np.arange(16) / 16)
    z = np.concatenate([z, 0.5 * z, [0.0]])
    exact = np.asarray(evaluate(expr, n, z))
    err = np.max(np.abs(t(z) - exact))
    assert err <= t.tail_bound + 1e-12 * (1 + np.max(np.abs(exact)))


# -- circle sampling and growth -------------------------------------------------------


def test_circle_extrema_exp():
    ex = circle_extrema(Exp(Const(1.0)), 1, 1.0)
    assert ex.min_mod == pytest.approx(math.exp(-1), rel=1e-12)
    assert ex.max_mod == pytest.approx(math.e, rel=1e-12)
    assert ex.nodes == 4096


@pytest.mark.parametrize("k", range(1, 9))
def test_circle_extrema_monomial(k):
    ex = circle_extrema(Z() ** N, k, 2.0)
    assert abs(ex.min_mod - 2.0**k) <= 1e-12 * 2.0**k
    assert abs(ex.max_mod - 2.0**k) <= 1e-12 * 2.0**k


def test_circle_min_small_exp_exceeds_rouche_bound():
    assert circle_extrema(phi_small_exp(), 1, 2.0).min_mod >= 2 - 8 / 9


def test_circle_extrema_rejects_bad_nodes():
    with pytest.raises(ValueError):
        circle_extrema(Z(), 1, 1.0, nodes=100)


def test_growth_type_of_exp3z():
    g = growth_metrics(Exp(Const(3.0)), 1, [10.0])[0]
    assert g.type_estimate == pytest.approx(3.0, abs=0.01)


def test_growth_type_of_square():
    # oracle: log(r^2)/r at r = 100
    g = growth_metrics(Z() ** Const(2), 1, [100.0])[0]
    assert g.type_estimate == pytest.approx(math.log(100.0**2) / 100.0, rel=1e-9)
    assert g.order_estimate == pytest.approx(math.log(math.log(1e4)) / math.log(100), rel=1e-9)


def test_growth_type_of_small_exp():
    # oracle: max modulus at t = r on the positive axis
    r = 20.0
    g = growth_metrics(phi_small_exp(), 1, [r])[0]
    assert g.type_estimate == pytest.approx(math.log(r + math.exp(r) / 9) / r, rel=1e-9)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_max_modulus_nondecreasing(name):
    g = growth_metrics(CATALOG[name].seq.expr, 3, [0.1, 0.3, 1.0, 2.0, 4.0])
    m = [x.max_modulus for x in g]
    assert all(b >= a * (1 - 1e-12) for a, b in zip(m, m[1:]))


def test_growth_rejects_decreasing_radii():
    with pytest.raises(ValueError):
        growth_metrics(Z(), 1, [2.0, 1.0])


# -- JSON ----------------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_json_round_trip(name):
    expr = CATALOG[name].seq.expr
    doc = to_json(expr)
    assert from_json(doc) == expr
    assert to_json(from_json(doc)) == doc


def test_json_error_names_path():
    with pytest.raises(ValueError, match=r"expr\.left"):
        from_json({"kind": "add", "left": {"kind": "bogus"}, "right": {"kind": "z"}})


def test_json_complex_constant():
    doc = {"kind": "const", "value": [1.0, -2.0]}
    assert from_json(doc).value == 1 - 2j
    assert to_json(from_json(doc)) == doc


def test_geometric_ratio_exact():
    assert geometric(0.5).ratio(37) == 0.5
