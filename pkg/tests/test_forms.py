from __future__ import annotations

import numpy as np
import pytest

from su2pfaff.errors import SingularCoframe
from su2pfaff.forms import (d_field, d_two_form, decompose_two_form, exterior_derivative, from_pairs,
                            pair_coeffs, reconstruct_two_form, wedge)
from su2pfaff.jet import jexp
from su2pfaff.manifold import R, U, coordinate_covector, covector, sigma, su2_coframe
from su2pfaff.pfaffian import SystemParams, omega_coframe, omega_rows, structure_coefficients


def test_wedge_basics(rng):
    dr = np.eye(5)[R]
    assert not wedge(dr, dr).any()
    a, b = rng.normal(size=5), rng.normal(size=5)
    assert np.array_equal(wedge(a, b), -wedge(b, a))
    s = su2_coframe([0, np.pi / 2, 0, 0, 0])
    assert wedge(s[1], s[2])[0, 1] == 1


def test_d_sigma3_and_profile(pts):
    s = su2_coframe(pts)
    d3 = exterior_derivative(sigma(3), pts)
    assert np.abs(d3 - wedge(s[:, 0], s[:, 1])).max() < 1e-9
    assert not exterior_derivative(coordinate_covector(R), pts).any()
    d = exterior_derivative(lambda x: covector(x, u=jexp(x[:, R] * -1.0)), pts)
    assert np.allclose(d[:, R, U], -np.exp(-pts[:, R]))


def test_d_of_d_vanishes(pts):
    for a in (1, 2, 3):
        assert np.abs(d_two_form(d_field(sigma(a)).fn, pts)).max() < 1e-8
    for i in range(5):
        dw = d_field(lambda x, i=i: omega_rows(SystemParams(), x)[:, i])
        assert np.abs(d_two_form(dw.fn, pts)).max() < 1e-8


def test_d_two_form_structural_zeros(pts):
    def const(x):
        from su2pfaff.jet import const_like
        c = np.zeros((len(pts), 5, 5))
        c[:, R, U], c[:, U, R] = 1, -1
        return const_like(c, x)

    def erdrdu(x):
        e = jexp(x[:, R] * -1.0)
        return const(x) * type(e)(e.val[:, None, None], e.grad[:, None, None], e.hess[:, None, None])

    assert np.abs(d_two_form(const, pts)).max() == 0
    assert np.abs(d_two_form(erdrdu, pts)).max() < 1e-14


def test_decompose_examples(pts):
    P = SystemParams(a2=1, c2=1)
    c = structure_coefficients(P, pts)
    assert np.abs(c[:, 3]).max() < 1e-12
    expected = np.zeros((5, 5))
    expected[3, 4], expected[4, 3] = -1, 1
    assert np.abs(c[:, 4] - expected).max() < 1e-12
    fr = omega_coframe(P, pts)
    basis = decompose_two_form(fr, wedge(fr[:, 1], fr[:, 2]))
    assert abs(basis[:, 1, 2] - 1).max() < 1e-12
    basis[:, 1, 2] = basis[:, 2, 1] = 0
    assert np.abs(basis).max() < 1e-12


def test_roundtrip_and_singular(rng, pts):
    fr = omega_coframe(SystemParams(), pts)
    v = rng.normal(size=(len(pts), 10))
    assert np.abs(pair_coeffs(decompose_two_form(fr, reconstruct_two_form(fr, from_pairs(v)))) - v).max() < 1e-10
    with pytest.raises(SingularCoframe):
        decompose_two_form(np.zeros((5, 5)), np.zeros((5, 5)))
