"""End-to-end smoke tests for the python bindings: profile evaluation, the
direct transform, phase geometry, the scalar-factor admissibility test, the
two asymptotic routes, the collocation oracle at t = 0, and rejection of
synthetic data with an inadmissible winding."""

import cmath
import math

import pytest

import nlhirota as nlh


@pytest.fixture(scope="module")
def gaussian_data():
    q0 = nlh.gaussian_profile(0.3, 1.0)
    grid = [i * 0.05 - 6.0 for i in range(241)]
    sdata = nlh.reflection_coefficients(q0, grid)
    sdata.alpha, sdata.beta = 0.0, 1.0
    return q0, sdata


def test_profile_evaluation():
    q0 = nlh.gaussian_profile(0.3, 1.0)
    assert q0.kind == "gaussian"
    assert q0(0.0) == pytest.approx(0.3)
    assert abs(q0(1.0) - 0.3 * math.exp(-1.0)) < 1e-15
    assert q0.effective_halfwidth() > 1.0
    sech = nlh.sech_profile(0.5, 2.0)
    assert abs(sech(2.0) - 0.5 / math.cosh(1.0)) < 1e-15


def test_scattering_matrix_defects():
    q0 = nlh.gaussian_profile(0.3, 1.0)
    sm = nlh.scattering_matrix(q0, 0.7)
    assert sm.det_defect < 1e-10
    assert sm.sym_defect < 1e-10
    assert abs(sm.s11) > 0.5


def test_geometry_and_admissibility(gaussian_data):
    _, sdata = gaussian_data
    geom = nlh.make_geometry(0.0, 1.0, -3.0)
    assert geom.lambda0 == pytest.approx(-0.5)
    assert geom.lambda1 == pytest.approx(0.5)
    with pytest.raises(ValueError):
        nlh.make_geometry(0.0, 1.0, 3.0)  # coalescing stationary points

    ok, diag = nlh.winding_check(sdata, geom)
    assert ok, diag
    dd = nlh.delta_data(sdata, geom)
    assert dd.im_vartheta_bound_ok
    assert abs(dd.vartheta0) < 1.0

    ev = nlh.DeltaEvaluator(sdata, geom)
    lam = complex(0.1, 0.4)
    assert ev.delta(lam) == ev.delta_via(lam, nlh.Point.lambda0)
    # off the cut the two anchored representations agree
    gap = abs(ev.delta_via(lam, nlh.Point.lambda0) -
              ev.delta_via(lam, nlh.Point.lambda1))
    assert gap < 1e-8


def test_leading_routes_agree(gaussian_data):
    _, sdata = gaussian_data
    geom = nlh.make_geometry(0.0, 1.0, -3.0)
    a = nlh.leading_q(sdata, geom, 50.0)
    b = nlh.leading_q_closed_form(sdata, geom, 50.0)
    assert abs(a.q) > 0.0
    assert abs(a.q - b.q) < 1e-8 * abs(a.q)
    assert a.error_exponent == pytest.approx(
        nlh.error_exponent(a.vartheta0, a.vartheta1))
    assert not a.extrapolated


def test_oracle_round_trip_at_t0(gaussian_data):
    q0, sdata = gaussian_data
    res = nlh.oracle_q(q0, sdata, 0.5, 0.0)
    assert res.mode_used == "direct"
    assert res.residual < 1e-8
    assert abs(res.q - q0(0.5)) < 1e-3


def test_synthetic_winding_rejected():
    def sigma(s):
        return 0.5 * (1.0 + math.tanh(s))

    sdata = nlh.ScatteringData()
    sdata.alpha, sdata.beta = 0.0, 1.0
    grid, r1, r2 = [], [], []
    n = 4001
    for i in range(n):
        s = -4.0 + 8.0 * i / (n - 1)
        p = sigma((s + 2.0) / 0.05) * sigma((2.0 - s) / 0.05)
        grid.append(s)
        r1.append(0.5 * p)
        if p > 1e-300:
            r2.append((1.0 - cmath.exp(1.5j * math.pi * p)) / (0.5 * p))
        else:
            r2.append(0.0)
    sdata.lambda_grid, sdata.r1, sdata.r2 = grid, r1, r2

    geom = nlh.make_geometry(0.0, 1.0, -3.0)
    ok, diag = nlh.winding_check(sdata, geom)
    assert not ok
    assert "accumulated arg" in diag
    with pytest.raises(ValueError):
        nlh.leading_q(sdata, geom, 100.0)


def test_residue_coefficient_product():
    vt = 0.1 + 0.0j
    r1 = 0.4 + 0.0j
    r2 = (1.0 - cmath.exp(-2.0 * math.pi * vt)) / r1
    for conv in (nlh.M1Convention.normalized, nlh.M1Convention.display):
        for o in (nlh.Orientation.left, nlh.Orientation.right):
            prod = (nlh.model_m1_12(o, vt, r1, r2, conv) *
                    nlh.model_m1_21(o, vt, r1, r2, conv))
            assert abs(prod - vt) < 1e-14
