"""Coordinates on S^3 x Sigma^2, the left-invariant SU(2) (co)frame, Lie brackets.

Coordinates are ordered (psi, theta, phi, r, u) everywhere.  Fields are plain
callables taking a coordinate :class:`~su2pfaff.jet.Jet` of shape (N, 5) and
returning a jet of coefficients, so that every derivative needed downstream
comes out of the same forward-mode pass.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ChartDegenerate
from .jet import Jet, const_like, jcos, jsin, jstack, seed

PSI, THETA, PHI, R, U = range(5)
DIM = 5
SIN_THETA_FLOOR = 1e-6
THETA_BAND = (0.3, np.pi - 0.3)


@dataclass(frozen=True)
class Point5:
    psi: complex
    theta: complex
    phi: complex
    r: complex
    u: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.psi, self.theta, self.phi, self.r, self.u], dtype=complex)


def as_points(p) -> np.ndarray:
    """Normalise a Point5, a 5-vector or an (N, 5) array to shape (N, 5)."""
    if isinstance(p, Point5):
        p = p.as_array()
    arr = np.asarray(p, dtype=complex)
    if arr.ndim == 1:
        arr = arr[None, :]
    return arr


def evaluate(field: Callable[[Jet], Jet], p) -> np.ndarray:
    """Numeric values of a jet-valued field at one point or a batch."""
    single = not isinstance(p, Jet) and np.ndim(p if not isinstance(p, Point5) else p.as_array()) == 1
    x = p if isinstance(p, Jet) else seed(as_points(p), order=1)
    out = field(x).val
    return out[0] if single else out


def sample_points(rng: np.random.Generator, n: int, r_range=(-1.0, 1.0), u_range=(-1.0, 1.0)) -> np.ndarray:
    """Random points with theta kept inside the nondegenerate sampling band."""
    pts = np.empty((n, DIM))
    pts[:, PSI] = rng.uniform(0.0, 2 * np.pi, n)
    pts[:, THETA] = rng.uniform(*THETA_BAND, n)
    pts[:, PHI] = rng.uniform(0.0, 2 * np.pi, n)
    pts[:, R] = rng.uniform(*r_range, n)
    pts[:, U] = rng.uniform(*u_range, n)
    return pts.astype(complex)


def coordinate_covector(i: int) -> Callable[[Jet], Jet]:
    def field(x: Jet) -> Jet:
        row = np.zeros(DIM)
        row[i] = 1.0
        return const_like(np.broadcast_to(row, x.shape), x)
    return field


coordinate_vector = coordinate_covector


def covector(x: Jet, psi=0.0, theta=0.0, phi=0.0, r=0.0, u=0.0) -> Jet:
    """Assemble a (N, 5) coefficient jet from per-coordinate pieces (jets or constants)."""
    comps = [psi, theta, phi, r, u]
    zero = const_like(np.zeros(x.shape[:-1]), x)
    return jstack([c if isinstance(c, Jet) else zero + c for c in comps])


# --------------------------------------------------------------------------
# SU(2) coframe and frame


def sigma_rows(x: Jet) -> Jet:
    """sigma_1, sigma_2, sigma_3 as a jet of shape (N, 3, 5)."""
    psi, th = x[:, PSI], x[:, THETA]
    sp, cp = jsin(psi), jcos(psi)
    st, ct = jsin(th), jcos(th)
    zero = const_like(np.zeros(psi.shape), psi)
    one = zero + 1.0
    s1 = jstack([zero, sp, -(cp * st), zero, zero])
    s2 = jstack([zero, cp, sp * st, zero, zero])
    s3 = jstack([-one, zero, -ct, zero, zero])
    return jstack([s1, s2, s3], axis=-2)


def su2_coframe(p) -> np.ndarray:
    """Coefficient rows of sigma_1..sigma_3 in the basis (dpsi, dtheta, dphi, dr, du)."""
    return evaluate(sigma_rows, p)


def _check_chart(x: Jet) -> None:
    st = np.abs(np.sin(x.val[:, THETA]))
    if np.any(st < SIN_THETA_FLOOR):
        raise ChartDegenerate(f"sin(theta) = {st.min():.2e} below {SIN_THETA_FLOOR:g}")


def frame_rows(x: Jet) -> Jet:
    """Left-invariant fields E^1, E^2, E^3 dual to the sigmas, shape (N, 3, 5).

    Closed form of the inverse of the angular block; cot and csc of theta are
    the only singular pieces.
    """
    _check_chart(x)
    psi, th = x[:, PSI], x[:, THETA]
    sp, cp = jsin(psi), jcos(psi)
    csc = jsin(th).reciprocal()
    cot = jcos(th) * csc
    zero = const_like(np.zeros(psi.shape), psi)
    one = zero + 1.0
    e1 = jstack([cot * cp, sp, -(cp * csc), zero, zero])
    e2 = jstack([-(cot * sp), cp, sp * csc, zero, zero])
    e3 = jstack([-one, zero, zero, zero, zero])
    return jstack([e1, e2, e3], axis=-2)


def su2_frame(p) -> np.ndarray:
    return evaluate(frame_rows, p)


def E(a: int) -> Callable[[Jet], Jet]:
    """The left-invariant vector field E^a, a in {1, 2, 3}."""
    def field(x: Jet) -> Jet:
        return frame_rows(x)[:, a - 1]
    return field


def sigma(a: int) -> Callable[[Jet], Jet]:
    def field(x: Jet) -> Jet:
        return sigma_rows(x)[:, a - 1]
    return field


# --------------------------------------------------------------------------
# Lie brackets


def bracket_jet(X: Jet, Y: Jet) -> Jet:
    """[X, Y]^a = X^b d_b Y^a - Y^b d_b X^a on jets of shape (N, 5).

    Needs first derivatives of both arguments; the result is exact to first
    order if the arguments carry second derivatives and to zeroth otherwise.
    """
    val = (np.einsum("nb,nab->na", X.val, Y.grad) - np.einsum("nb,nab->na", Y.val, X.grad))
    if X.hess is not None and Y.hess is not None:
        grad = (np.einsum("nbc,nab->nac", X.grad, Y.grad)
                + np.einsum("nb,nabc->nac", X.val, Y.hess)
                - np.einsum("nbc,nab->nac", Y.grad, X.grad)
                - np.einsum("nb,nabc->nac", Y.val, X.hess))
    else:
        grad = np.full(val.shape + (X.nvar,), np.nan, dtype=complex)
    return Jet(val, grad, None)


def lie_bracket(X: Callable[[Jet], Jet], Y: Callable[[Jet], Jet], p) -> np.ndarray:
    """Coefficients of [X, Y] at p (single point or batch)."""
    single = np.ndim(p.as_array() if isinstance(p, Point5) else p) == 1
    x = seed(as_points(p), order=2)
    out = bracket_jet(X(x), Y(x)).val
    return out[0] if single else out


def bracket_field(X: Callable[[Jet], Jet], Y: Callable[[Jet], Jet]) -> Callable[[Jet], Jet]:
    """[X, Y] as a field; accurate to first order when X, Y are second order."""
    def field(x: Jet) -> Jet:
        return bracket_jet(X(x), Y(x))
    return field
