from __future__ import annotations

import numpy as np
import pytest

from su2pfaff import nurowski as nw
from su2pfaff.errors import BranchRestriction, DegenerateParams, UnsupportedCase
from su2pfaff.pfaffian import SystemParams, omega_coframe


def test_constants():
    assert nw.q_constant(1, 0) == pytest.approx(-0.7)
    assert nw.scale_lambda(1, 1) == pytest.approx(2 ** (-1 / 3))
    with pytest.raises(BranchRestriction):
        nw.adapted_coframe(SystemParams(a2=1j, c2=2))
    with pytest.raises(BranchRestriction):
        nw.scale_lambda(-1, 0)


def test_theta3_scaling(pts):
    P = SystemParams(a2=1, c2=1)
    th = nw.adapted_coframe(P).at(pts)
    assert np.abs(th[:, 2] - 2 ** (-1 / 3) * omega_coframe(P, pts)[:, 2]).max() < 1e-14


def test_connection_forms(pts):
    ac = nw.adapted_coframe(SystemParams(a2=1, c2=1))
    assert max(s.residual for s in nw.solve_connection_forms(ac, pts)) < 1e-9
    assert nw.solve_connection_forms(ac, pts[0]).residual < 1e-9
    bad = nw.replace_constants(ac, Q=0.0)
    assert nw.solve_connection_forms(bad, pts[0]).residual > 1e-3


def test_cartan_system_shape():
    assert nw.cartan_system_matrix().shape == (50, 35)


def test_gtilde_coefficients():
    assert np.allclose(nw.gtilde_coefficients(1, 1j / 3), (1.5, 1.5))
    assert np.allclose(nw.gtilde_coefficients(1, 3j), (-1 / 6, 0.5))
    assert np.allclose(nw.gtilde_coefficients(1, 0), (4 / 3, 7 / 5))
    with pytest.raises(DegenerateParams):
        nw.gtilde_coefficients(1, 1j)


def test_g_and_gtilde(pts):
    P = SystemParams(a2=1, c2=1)
    g = nw.nurowski_metric_g(P).at(pts)
    gt = nw.nurowski_metric_gtilde(P).at(pts)
    assert np.abs(g - gt / nw.scale_lambda(1, 1)).max() < 1e-10
    assert np.array_equal(g, np.swapaxes(g, -1, -2))
    assert np.abs(np.linalg.det(g)).min() > 1e-6


def test_w2424_closed_form_values():
    assert nw.w2424_closed_form(1, 0) == pytest.approx(-0.03)
    assert nw.w2424_closed_form(1, 3).real == pytest.approx(-18 * 82 / (300 * 10 ** (2 / 3)))


def test_case_coframe_displays():
    s = np.sqrt(2)
    p = np.array([0.2, 1.0, 0.5, 0.0, 0.1])
    w = nw.case_coframe(nw.CaseSpec("A", "minus", "complex", "D"), p)
    sig = nw.case_coframe(nw.CaseSpec("A", "minus", "real", "D"), p)
    assert np.isclose(w[2, 4], 1j / (2 * s))
    assert np.isclose(sig[0, 4], 3 / (2 * s))
    bar = nw.case_coframe(nw.CaseSpec("A", "minus", "complex", "Dtilde"), p)
    assert np.array_equal(bar[2], w[2])


def test_case_params_and_validation():
    assert nw.CaseSpec("A", "minus").params().c2 == 1j / 3
    assert nw.CaseSpec("B", "plus").params().c2 == -3j
    with pytest.raises(UnsupportedCase):
        nw.CaseSpec("C")
    with pytest.raises(UnsupportedCase):
        nw.CaseSpec("A", variant="real").params()


@pytest.mark.parametrize("spec", list(nw.THEOREM_SPECS.values()), ids=list(nw.THEOREM_SPECS))
def test_diagonal_forms_agree(spec, pts):
    th = nw.case_metric(spec).at(pts)
    for form in ("gm", "polarised"):
        assert np.abs(th - nw.case_metric(spec, form).at(pts)).max() < 1e-10


def test_system_swap_exchanges_roles(pts):
    a = nw.case_metric(nw.CaseSpec("A", "minus", "complex", "D"), "gm").at(pts)
    b = nw.case_metric(nw.CaseSpec("A", "minus", "complex", "Dtilde"), "gm").at(pts)
    assert np.abs(a - b).max() > 1e-3
