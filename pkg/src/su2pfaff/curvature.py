"""Metric -> Levi-Civita -> Riemann -> Ricci -> Schouten -> Weyl, over the complex field.

Conventions:

* Gamma^r_{mv} = 1/2 g^{rl} (d_m g_lv + d_v g_lm - d_l g_mv)
* R^r_{smv} = d_m Gamma^r_{vs} - d_v Gamma^r_{ms} + Gamma^r_{ml} Gamma^l_{vs} - Gamma^r_{vl} Gamma^l_{ms}
* Ric_{sv} = R^m_{smv}; the unit round 2-sphere has K = +1
* P = (Ric - s g / (2(n-1))) / (n-2),  C = Riem - g (KN) P

Complex metrics are handled by holomorphic extension: nothing is conjugated.
The heavy part (Christoffels and Riemann from g, dg, ddg) runs in the
compiled extension when it is importable, otherwise in numpy.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernel_py
from .errors import SingularMetric
from .jet import Jet, seed
from .linalg import DET_FLOOR, det, inv

try:  # pragma: no cover - depends on the build
    from . import _kernel_ext
except ImportError:  # pragma: no cover
    _kernel_ext = None


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _kernel_ext is not None else [])


def default_backend() -> str:
    forced = os.environ.get("SU2PFAFF_BACKEND", "").strip().lower()
    if forced in ("python", "cython"):
        if forced == "cython" and _kernel_ext is None:
            raise ImportError("SU2PFAFF_BACKEND=cython but the extension is not built")
        return forced
    return "cython" if _kernel_ext is not None else "python"


BACKEND = default_backend()


def riemann_batch(g, dg, ddg, backend: str | None = None):
    """(ginv, gamma, riem) for a batch; see ``_kernel_py`` for layouts."""
    backend = backend or BACKEND
    if backend == "cython":
        if _kernel_ext is None:
            raise ImportError("compiled curvature kernel is not available")
        return _kernel_ext.riemann_batch(np.ascontiguousarray(g, dtype=complex),
                                         np.ascontiguousarray(dg, dtype=complex),
                                         np.ascontiguousarray(ddg, dtype=complex))
    return _kernel_py.riemann_batch(g, dg, ddg)


@dataclass(frozen=True)
class MetricField:
    """A metric as a jet-valued function of coordinates; ``fn`` maps a (N, dim)
    coordinate jet to a symmetric (N, dim, dim) jet of second order."""

    dim: int
    fn: Callable[[Jet], Jet]
    name: str = ""

    def __call__(self, x: Jet) -> Jet:
        return self.fn(x)

    def jet(self, points) -> Jet:
        pts = np.asarray(points, dtype=complex)
        if pts.ndim == 1:
            pts = pts[None]
        return self.fn(seed(pts, order=2))

    def at(self, points) -> np.ndarray:
        return self.jet(points).val

    def rescaled(self, factor: Callable[[Jet], Jet], name: str = "") -> "MetricField":
        """The metric factor(x)**2 * g."""
        def fn(x: Jet) -> Jet:
            om = factor(x)
            om2 = om * om
            g = self.fn(x)
            return g * Jet(om2.val[:, None, None], om2.grad[:, None, None, :],
                           None if om2.hess is None else om2.hess[:, None, None, :, :])
        return MetricField(self.dim, fn, name or f"{self.name}*Omega^2")


@dataclass
class CurvatureTensors:
    g: np.ndarray
    ginv: np.ndarray
    gamma: np.ndarray
    riem: np.ndarray
    ric: np.ndarray
    scalar: np.ndarray
    schouten: np.ndarray | None
    weyl: np.ndarray | None

    @property
    def dim(self) -> int:
        return self.g.shape[-1]

    def weyl_up(self) -> np.ndarray:
        """(1,3) Weyl tensor C^a_{bcd}."""
        return np.einsum("nae,nebcd->nabcd", self.ginv, self.weyl)


def kulkarni_nomizu(h, k) -> np.ndarray:
    return (np.einsum("nac,nbd->nabcd", h, k) + np.einsum("nbd,nac->nabcd", h, k)
            - np.einsum("nad,nbc->nabcd", h, k) - np.einsum("nbc,nad->nabcd", h, k))


def tensors_from_derivatives(g, dg, ddg, backend: str | None = None) -> CurvatureTensors:
    g = np.asarray(g, dtype=complex)
    d = det(g)
    if np.any(np.abs(d) < DET_FLOOR):
        raise SingularMetric(f"metric determinant {np.min(np.abs(d)):.3e} below {DET_FLOOR:g}")
    ginv, gamma, riem = riemann_batch(g, dg, ddg, backend)
    ric = np.einsum("nrm,nrsmv->nsv", ginv, riem)
    scalar = np.einsum("nsv,nsv->n", ginv, ric)
    n = g.shape[-1]
    schouten = weyl = None
    if n >= 3:
        schouten = (ric - (scalar / (2 * (n - 1)))[:, None, None] * g) / (n - 2)
        weyl = riem - kulkarni_nomizu(g, schouten)
    return CurvatureTensors(g, ginv, gamma, riem, ric, scalar, schouten, weyl)


def curvature_at(gf: MetricField, points, backend: str | None = None) -> CurvatureTensors:
    j = gf.jet(points)
    if j.hess is None:
        raise ValueError("metric field must be evaluated to second order")
    return tensors_from_derivatives(j.val, j.grad, j.hess, backend)


def weyl_frame_component(gf: MetricField, frame: Callable[[Jet], Jet], idx, points,
                         backend: str | None = None) -> np.ndarray:
    """C(e_i, e_j, e_k, e_l) for the frame dual to the coframe rows ``frame(x)``.

    ``idx`` is 1-based, matching how coframe members are numbered.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=complex))
    ct = curvature_at(gf, pts, backend)
    rows = frame(seed(pts, order=1)).val
    e = inv(rows)                       # e[n, coord, b]: b-th dual vector
    i, j, k, l = (int(t) - 1 for t in idx)
    return np.einsum("nabcd,na,nb,nc,nd->n", ct.weyl, e[:, :, i], e[:, :, j], e[:, :, k], e[:, :, l])


def max_weyl(gf: MetricField, points, backend: str | None = None) -> float:
    ct = curvature_at(gf, points, backend)
    return float(np.max(np.abs(ct.weyl)))


def weyl_flat(gf: MetricField, points, tol: float = 1e-7, backend: str | None = None) -> tuple[bool, float]:
    m = max_weyl(gf, points, backend)
    return m < tol, m


def ricci_flat_check(gf: MetricField, conformal_factor: Callable[[Jet], Jet], points,
                     backend: str | None = None) -> float:
    """max |Ric| of conformal_factor**2 * g over the sample points."""
    x = seed(np.atleast_2d(np.asarray(points, dtype=complex)), order=1)
    if np.any(np.abs(conformal_factor(x).val) < 1e-12):
        raise SingularMetric("conformal factor vanishes at a sample point")
    ct = curvature_at(gf.rescaled(conformal_factor), points, backend)
    return float(np.max(np.abs(ct.ric)))


def gauss_curvature(gf: MetricField, points, backend: str | None = None) -> np.ndarray:
    if gf.dim != 2:
        raise ValueError("Gauss curvature needs a 2-dimensional metric")
    return curvature_at(gf, points, backend).scalar / 2


# --------------------------------------------------------------------------
# property residuals


def symmetry_residuals(ct: CurvatureTensors) -> dict[str, float]:
    R = ct.riem
    out = {
        "gamma_lower_symmetry": np.abs(ct.gamma - np.swapaxes(ct.gamma, -1, -2)).max(),
        "riem_antisym_12": np.abs(R + np.swapaxes(R, 1, 2)).max(),
        "riem_antisym_34": np.abs(R + np.swapaxes(R, 3, 4)).max(),
        "riem_pair_symmetry": np.abs(R - np.einsum("nabcd->ncdab", R)).max(),
        "first_bianchi": np.abs(R + np.einsum("nabcd->nacdb", R) + np.einsum("nabcd->nadbc", R)).max(),
    }
    if ct.weyl is not None:
        C = ct.weyl
        out["weyl_trace_13"] = np.abs(np.einsum("nac,nabcd->nbd", ct.ginv, C)).max()
        out["weyl_trace_12"] = np.abs(np.einsum("nab,nabcd->ncd", ct.ginv, C)).max()
        out["weyl_trace_14"] = np.abs(np.einsum("nad,nabcd->nbc", ct.ginv, C)).max()
    return {k: float(v) for k, v in out.items()}


def scale_of(ct: CurvatureTensors) -> float:
    """Magnitude used to make symmetry residuals relative."""
    return float(max(1.0, np.abs(ct.riem).max()))
