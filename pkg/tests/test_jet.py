from __future__ import annotations

import cmath

import numpy as np
from hypothesis import given, settings, strategies as st

from su2pfaff.jet import (Dual, Jet, bilinear, const_like, dual_derivative, dual_second_derivative,
                          jcos, jexp, jsin, jstack, linear, seed)


def _f_jet(x):
    r, u = x[:, 0], x[:, 1]
    return jexp(r * 0.5j) * jsin(u) / (r * r + 2.0) + jcos(r * u)


def _f_scalar(r, u, mod):
    return mod.exp(r * 0.5j) * mod.sin(u) / (r * r + 2.0) + mod.cos(r * u)


class _DualMod:
    exp = staticmethod(lambda z: z.exp() if isinstance(z, Dual) else cmath.exp(z))
    sin = staticmethod(lambda z: z.sin() if isinstance(z, Dual) else cmath.sin(z))
    cos = staticmethod(lambda z: z.cos() if isinstance(z, Dual) else cmath.cos(z))


@settings(max_examples=30, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2))
def test_jet_matches_nested_duals(r, u):
    j = _f_jet(seed(np.array([[r, u]])))
    d_r = dual_derivative(lambda t: _f_scalar(t, u, _DualMod), r)
    d_uu = dual_second_derivative(lambda t: _f_scalar(r, t, _DualMod), u)
    d_rr = dual_second_derivative(lambda t: _f_scalar(t, u, _DualMod), r)
    assert abs(j.grad[0, 0] - d_r) < 1e-12
    assert abs(j.hess[0, 1, 1] - d_uu) < 1e-12
    assert abs(j.hess[0, 0, 0] - d_rr) < 1e-12


def test_hessian_symmetric_and_mixed_partial():
    x = seed(np.array([[0.3, -0.7], [1.1, 0.4]]))
    j = (x[:, 0] * x[:, 0]) * x[:, 1]            # r^2 u
    assert np.allclose(j.hess[:, 0, 1], 2 * x.val[:, 0])
    assert np.allclose(j.hess, np.swapaxes(j.hess, -1, -2))


def test_exp_second_derivative():
    # d^2/dr^2 exp(-i r / 3) = -(1/9) exp(-i r / 3)
    r = 0.37
    assert abs(dual_second_derivative(lambda t: (t * (-1j / 3)).exp(), r) + cmath.exp(-1j * r / 3) / 9) < 1e-15


def test_reciprocal_and_division():
    x = seed(np.array([[0.5]]))[:, 0]
    j = 1.0 / (x * x + 1.0)
    t = 0.5
    assert abs(j.grad[0, 0] - (-2 * t / (t * t + 1) ** 2)) < 1e-14
    assert abs(j.hess[0, 0, 0] - (6 * t * t - 2) / (t * t + 1) ** 3) < 1e-14


def test_power_and_truncate():
    x = seed(np.array([[2.0]]))[:, 0]
    c = x ** 3
    assert c.val[0] == 8 and c.grad[0, 0] == 12 and c.hess[0, 0, 0] == 12
    assert c.truncate().order == 1


def test_linear_bilinear_and_stack():
    x = seed(np.array([[0.2, 0.9]]))
    v = jstack([x[:, 0], x[:, 1] * 2.0], axis=-1)
    m = np.array([[1.0, 2.0], [3.0, 4.0]])
    lv = linear("ij,nj->ni", m, v)
    assert np.allclose(lv.val, v.val @ m.T)
    outer = bilinear("ni,nj->nij", v, v)
    assert np.allclose(outer.grad[0, 0, 0], 2 * v.val[0, 0] * v.grad[0, 0])
    c = const_like(np.ones(3), x)
    assert c.grad.shape == (3, 2) and not c.grad.any()
