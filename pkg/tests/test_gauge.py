from __future__ import annotations

import numpy as np
import pytest

from su2pfaff import gauge as G
from su2pfaff.checks import gauge_cases
from su2pfaff.errors import UnsupportedCase

S = np.sqrt(2)
R_SAMPLES = np.linspace(-1.3, 1.3, 50)


def test_pauli_algebra():
    E1, E2, E3 = (G.pauli_rep(a) for a in (1, 2, 3))
    assert np.array_equal(E3, np.diag([0.5j, -0.5j]))
    assert np.allclose(G.commutator(E1, E2), -E3)
    assert np.allclose(G.commutator(E2, E3), -E1)
    assert np.allclose(G.commutator(E3, E1), -E2)
    for e in (E1, E2, E3):
        assert np.trace(e) == 0 and np.allclose(e.conj().T, -e)


def test_components_roundtrip(rng):
    c = rng.normal(size=(4, 3)) + 1j * rng.normal(size=(4, 3))
    assert np.allclose(G.components(G.from_components(c)), c)


def test_potentials():
    pa = G.gauge_potential(G.GaugeCase("A", "minus"))
    assert np.allclose(pa.components_at(0, [0.0, 1.0])[:, 1], -1)
    assert pa.components_at(1, 0.0)[0] == pytest.approx(-3 / (2 * S))
    for sign, expect in (("minus", -3 / (2 * S)), ("plus", 3 / (2 * S))):
        pb = G.gauge_potential(G.GaugeCase("B", sign))
        assert pb.components_at(1, 0.0)[2] == pytest.approx(expect)


def test_covariant_derivative():
    gc = G.GaugeCase("A", "minus")
    assert np.allclose(G.covariant_derivative(gc, 0, G.Spinor.constant(1, 0), (0.0, 0.0)), [0, 0.5])
    assert not G.covariant_derivative(gc, 1, G.Spinor.constant(0, 0), (0.3, 0.1)).any()
    f = -3 / (2 * S)
    assert np.allclose(G.covariant_derivative(gc, 1, G.Spinor.constant(0, 1), (0.0, 0.0)), f * np.array([0.5j, 1 / 6]))
    # derivative part through dual numbers: psi = (r^2 + u, 2 r u)
    sp = G.Spinor(lambda r, u: r * r + u, lambda r, u: 2 * u * r)
    d0 = G.covariant_derivative(gc, 0, sp, (0.5, 0.2))
    assert np.allclose(d0, [1.0 - 0.5 * 0.2, 0.4 + 0.5 * 0.45])


def test_field_strength_values():
    assert np.allclose(G.field_strength(G.GaugeCase("A", "minus"), 0.0), 2 * S / 3 * G.PAULI[2])
    assert np.allclose(G.field_strength(G.GaugeCase("B", "minus"), 0.0), 2 * S * 1j * G.PAULI[2])
    assert np.abs(G.field_strength(G.GaugeCase("B", "minus", "real"), np.pi / 6)).max() < 1e-15


@pytest.mark.parametrize("gc", gauge_cases(), ids=lambda g: g.label)
def test_bracket_tables(gc):
    t = G.bracket_table(gc, R_SAMPLES)
    assert t.max_residual < 1e-10
    assert G.jacobi_residual(gc, R_SAMPLES) < 1e-9


@pytest.mark.parametrize("gc", gauge_cases(), ids=lambda g: g.label)
def test_field_strength_two_ways(gc, pts):
    F5, leak = G.field_strength_lie(gc, pts)
    Fm = G.field_strength(gc, pts[:, 3].real)
    assert leak < 1e-12 and np.abs(F5 - Fm).max() < 1e-9
    assert np.abs(G.field_strength_jet(gc, pts[:, 3].real) - Fm).max() < 1e-9


def test_displayed_values_at_zero():
    a = G.bracket_table(G.GaugeCase("A", "minus"), [0.0]).computed
    assert np.allclose(a["[D1,F]"][0], -G.PAULI[1])
    real = G.bracket_table(G.GaugeCase("A", "minus", "real"), [0.0]).computed
    assert np.allclose(real["[D0,F]"][0], 2 * S / 3 * G.PAULI[0])
    for sign, s in (("minus", -1), ("plus", 1)):
        rev = G.bracket_table(G.GaugeCase("A", sign, "sign-reversed"), [0.0]).computed
        assert np.allclose(rev["[D0,F]"][0], -2 * S / 3 * G.PAULI[0] + s * 2 * S / 9 * 1j * G.PAULI[2])


@pytest.mark.parametrize("sign", G.SIGNS)
def test_rescaled(sign):
    t = G.rescaled_brackets(G.GaugeCase("A", sign), R_SAMPLES)
    assert t.max_residual < 1e-10
    at0 = G.rescaled_brackets(G.GaugeCase("A", sign), [0.0]).computed
    assert np.allclose(at0["[D0~,F~]"][0], 3 * S / 4 * G.PAULI[0])
    assert np.allclose(at0["[D1~,F~]"][0], -3 * S / 4 * G.PAULI[1])


def test_unsupported():
    with pytest.raises(UnsupportedCase):
        G.GaugeCase("B", "minus", "sign-reversed")
    with pytest.raises(UnsupportedCase):
        G.rescaled_brackets(G.GaugeCase("B", "minus"), [0.0])
    with pytest.raises(UnsupportedCase):
        G.GaugeCase("A", "sideways")


def test_series_algebra():
    c = G.Series.cos(2.0, 3.0)
    s = G.Series.sin(2.0, 3.0)
    r = np.linspace(-1, 1, 7)
    assert np.allclose(c(r), 2 * np.cos(3 * r)) and np.allclose(s(r), 2 * np.sin(3 * r))
    assert np.allclose(c.deriv()(r), -6 * np.sin(3 * r))
    assert np.allclose((c * c + s * s)(r), 4)
