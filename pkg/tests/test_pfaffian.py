from __future__ import annotations

import numpy as np
import pytest

from su2pfaff.errors import InvalidParams
from su2pfaff.jet import jexp, seed
from su2pfaff.manifold import R, U, E, covector, evaluate
from su2pfaff.pfaffian import (SystemParams, check_structure_equations, distribution_fields, growth_vector,
                               growth_vector_of, gsplit_metric, omega_coframe, profile_ode_residual)

VALID = SystemParams(b1=1, a2=1, c2=1, k=1)


def test_param_validation():
    with pytest.raises(InvalidParams):
        SystemParams(k=0)
    with pytest.raises(InvalidParams):
        SystemParams(a2=0, b2=0, c2=0)
    assert VALID.sign == 1 and SystemParams(b1=-1).sign == -1


def test_gsplit(pts):
    g = gsplit_metric(VALID, pts)
    e1 = evaluate(E(1), pts)
    assert np.allclose(np.einsum("ni,nij,nj->n", e1, g, e1), 1)
    assert np.allclose(g[:, R, R], -1)
    eig = np.linalg.eigvalsh(g.real)
    assert np.all((eig > 0).sum(axis=1) == 3) and np.all((eig < 0).sum(axis=1) == 2)


def test_omega_rows_at_r0():
    p = np.array([0.4, 1.0, 0.3, 0.0, 0.2])
    w = omega_coframe(VALID, p)
    s = np.sqrt(2)
    assert np.allclose(w[3], [0, 0, 0, 1, 0])
    assert np.allclose(w[4], [0, 0, 0, 0, -1 / s])
    assert np.allclose(w[0, U], 1 / s) and np.allclose(w[1, R], 1)


def test_null_and_annihilated(pts):
    X1, X2 = distribution_fields(VALID, pts)
    g = gsplit_metric(VALID, pts)
    w = omega_coframe(VALID, pts)
    for X in (X1, X2):
        assert np.abs(np.einsum("ni,nij,nj->n", X, g, X)).max() < 1e-10
        assert np.abs(np.einsum("nij,nj->ni", w[:, :3], X)).max() < 1e-10
    e2 = evaluate(E(2), pts)
    assert np.allclose(X1, e2 - np.eye(5)[R])


def test_structure_pass_and_failures(pts):
    rep = check_structure_equations(VALID, points=pts)
    assert rep.passed and abs(rep.H - 2) < 1e-9
    for bad in (VALID.with_(a1=0.5), VALID.with_(c1=0.5), VALID.with_(b2=0.5),
                VALID.with_(f=lambda r: jexp(r))):
        assert not check_structure_equations(bad, points=pts).passed


def test_profile_ode():
    r = np.linspace(-1, 1, 50)
    assert profile_ode_residual(VALID, r) < 1e-10
    assert profile_ode_residual(SystemParams(a2=2, c2=0.5j, b1=-1), r) < 1e-10


def test_growth_vectors(pts):
    assert set(growth_vector(VALID, pts)) == {(2, 3, 5)}
    assert set(growth_vector(SystemParams(a2=1, c2=1j / 3), pts)) == {(2, 3, 5)}
    assert set(growth_vector_of(lambda x: covector(x, r=1.0), lambda x: covector(x, u=1.0), pts)) == {(2, 2, 2)}
