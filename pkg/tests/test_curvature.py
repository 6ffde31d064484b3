from __future__ import annotations

import numpy as np
import pytest

from su2pfaff import nurowski as nw
from su2pfaff.curvature import (MetricField, curvature_at, gauss_curvature, ricci_flat_check, riemann_batch,
                                scale_of, symmetry_residuals, weyl_flat)
from su2pfaff.errors import SingularMetric
from su2pfaff.jet import const_like, jexp, jsin, jstack
from su2pfaff.pfaffian import SystemParams


def _metric2(guu):
    def fn(x):
        g = guu(x[:, 0])
        one, zero = g * 0.0 + 1.0, g * 0.0
        return jstack([jstack([one, zero]), jstack([zero, g])], axis=-2)
    return MetricField(2, fn)


def test_flat_metric_has_no_curvature(backend):
    gf = MetricField(5, lambda x: const_like(np.broadcast_to(np.eye(5), (x.shape[0], 5, 5)).copy(), x))
    ct = curvature_at(gf, np.random.default_rng(0).normal(size=(4, 5)), backend)
    assert not np.abs(ct.riem).any() and not np.abs(ct.weyl).any()


def test_polar_coordinates(backend):
    ct = curvature_at(_metric2(lambda r: r * r), np.array([[0.7, 0.1]]), backend)
    assert ct.gamma[0, 0, 1, 1] == pytest.approx(-0.7)
    assert ct.gamma[0, 1, 0, 1] == pytest.approx(1 / 0.7)
    assert np.abs(ct.riem).max() < 1e-14


def test_exponential_christoffels(backend):
    # diag(1, e^{2r}): Gamma^r_uu = -e^{2r}, Gamma^u_ru = 1, K = -1
    r = np.array([[0.3, 0.0], [-0.4, 1.0]])
    gf = _metric2(lambda t: jexp(t * 2.0))
    ct = curvature_at(gf, r, backend)
    assert np.abs(ct.gamma[:, 0, 1, 1] + np.exp(2 * r[:, 0])).max() < 1e-10
    assert np.abs(ct.gamma[:, 1, 0, 1] - 1).max() < 1e-10
    assert np.abs(gauss_curvature(gf, r, backend) + 1).max() < 1e-10


def test_round_sphere_has_positive_curvature(backend):
    gf = _metric2(lambda t: jsin(t) * jsin(t))
    assert np.abs(gauss_curvature(gf, np.array([[0.9, 0.0]]), backend) - 1).max() < 1e-12


def test_backends_agree(pts):
    gf = nw.nurowski_metric_gtilde(SystemParams(a2=1, c2=1))
    j = gf.jet(pts)
    out = [riemann_batch(j.val, j.grad, j.hess, b) for b in ("python",)]
    from su2pfaff.curvature import available_backends
    if "cython" in available_backends():
        out.append(riemann_batch(j.val, j.grad, j.hess, "cython"))
    for a, b in zip(out[0], out[-1]):
        assert np.abs(a - b).max() < 1e-12


def test_symmetries_on_generic_metric(pts, backend):
    ct = curvature_at(nw.nurowski_metric_g(SystemParams(a2=1, c2=1)), pts, backend)
    assert max(symmetry_residuals(ct).values()) / scale_of(ct) < 1e-8


def test_weyl_flat_verdicts(pts):
    assert weyl_flat(nw.nurowski_metric_gtilde(SystemParams(a2=1, c2=1j / 3)), pts)[0]
    assert weyl_flat(nw.nurowski_metric_gtilde(SystemParams(a2=1, c2=3j)), pts)[0]
    ok, m = weyl_flat(nw.nurowski_metric_gtilde(SystemParams(a2=1, c2=1)), pts)
    assert not ok and m > 1e-3


def test_ricci_flat_phase(pts):
    gt = nw.nurowski_metric_gtilde(nw.CaseSpec("A", "minus").params())
    assert ricci_flat_check(gt, nw.phase_factor(1j / 3), pts) < 1e-7
    assert ricci_flat_check(gt, nw.phase_factor(1j / 3, 2.0), pts) < 1e-7
    assert ricci_flat_check(gt, nw.phase_factor(0.0), pts) > 1e-3
    with pytest.raises(SingularMetric):
        ricci_flat_check(gt, nw.phase_factor(0.0, 0.0), pts)


def test_conformal_invariance_of_weyl(pts):
    gt = nw.nurowski_metric_gtilde(SystemParams(a2=1, c2=1))
    w = curvature_at(gt, pts).weyl_up()
    assert np.abs(curvature_at(gt.rescaled(nw.phase_factor(0.0, 3.0)), pts).weyl_up() - w).max() < 1e-8
    assert np.abs(curvature_at(gt.rescaled(nw.phase_factor(1j / 3)), pts).weyl_up() - w).max() < 1e-7


@pytest.mark.parametrize("case,K", [("A", 1 / 9), ("B", 9.0)])
def test_surface_gauss(case, K):
    r = np.linspace(-1, 1, 51)
    rate = 1 / 3 if case == "A" else 3.0
    r = r[np.abs(np.cos(rate * r)) > 1e-3]
    k = gauss_curvature(nw.surface_metric(case), np.stack([r, 0 * r], axis=1))
    assert np.abs(k - K).max() < 1e-9


def test_flat_2d_plane():
    assert np.abs(gauss_curvature(_metric2(lambda t: t * 0.0 + 1.0), np.array([[0.2, 0.3]]))).max() == 0


def test_singular_metric_raises():
    gf = MetricField(2, lambda x: const_like(np.zeros((x.shape[0], 2, 2)), x))
    with pytest.raises(SingularMetric):
        curvature_at(gf, np.zeros((1, 2)))
