"""Pointwise exterior algebra on M and the field-level exterior derivative.

Two-forms are stored as full antisymmetric (..., 5, 5) arrays: ``c[a, b]``
with a < b is the coefficient of ``dx^a ^ dx^b`` and the lower triangle is
its negative.  Three-forms are fully antisymmetric (..., 5, 5, 5) arrays.
Derivatives come from forward-mode jets, never from finite differences.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np

from .errors import SingularCoframe
from .jet import Jet, seed
from .linalg import DET_FLOOR, det, inv
from .manifold import DIM, as_points

PAIRS = tuple(combinations(range(DIM), 2))
TRIPLES = tuple(combinations(range(DIM), 3))


@dataclass(frozen=True)
class FormField:
    degree: int
    fn: Callable[[Jet], Jet]

    def __call__(self, x: Jet) -> Jet:
        return self.fn(x)

    def at(self, p) -> np.ndarray:
        single = np.ndim(p) == 1
        out = self.fn(seed(as_points(p), order=1)).val
        return out[0] if single else out


def wedge(alpha, beta) -> np.ndarray:
    """alpha ^ beta for one-form rows (batched along leading axes)."""
    a = np.asarray(alpha, dtype=complex)
    b = np.asarray(beta, dtype=complex)
    outer = a[..., :, None] * b[..., None, :]
    return outer - np.swapaxes(outer, -1, -2)


def wedge_jet(alpha: Jet, beta: Jet) -> Jet:
    from .jet import bilinear
    outer = bilinear("...i,...j->...ij", alpha, beta)
    hess = None if outer.hess is None else outer.hess - np.swapaxes(outer.hess, -3, -4)
    return Jet(outer.val - np.swapaxes(outer.val, -1, -2),
               outer.grad - np.swapaxes(outer.grad, -2, -3), hess)


def d_jet(alpha: Jet) -> Jet:
    """(d alpha)_{ab} = d_a alpha_b - d_b alpha_a for a one-form jet (N, 5).

    With second-order input the result carries its own first derivatives,
    which is what ``d_two_form_jet`` needs.
    """
    g = alpha.grad                      # g[n, b, a] = d_a alpha_b
    val = np.swapaxes(g, -1, -2) - g
    grad = None
    if alpha.hess is not None:
        h = alpha.hess                  # h[n, b, a, c] = d_c d_a alpha_b
        grad = np.swapaxes(h, -2, -3) - h
    else:
        grad = np.full(val.shape + (g.shape[-1],), np.nan, dtype=complex)
    return Jet(val, grad, None)


def d_two_form_jet(beta: Jet) -> np.ndarray:
    """(d beta)_{abc} = d_a b_bc + d_b b_ca + d_c b_ab, fully antisymmetric."""
    g = beta.grad                       # g[n, b, c, a] = d_a beta_bc
    t = np.einsum("nbca->nabc", g)
    return t + np.einsum("nabc->nbca", t) + np.einsum("nabc->ncab", t)


def exterior_derivative(alpha: Callable[[Jet], Jet], p) -> np.ndarray:
    """d of a one-form field at p; returns the antisymmetric coefficient array."""
    single = np.ndim(p) == 1
    out = d_jet(alpha(seed(as_points(p), order=1))).val
    return out[0] if single else out


def d_field(alpha: Callable[[Jet], Jet]) -> FormField:
    """d alpha as a two-form field (exact to first order)."""
    return FormField(2, lambda x: d_jet(alpha(x)))


def d_two_form(beta: Callable[[Jet], Jet], p) -> np.ndarray:
    single = np.ndim(p) == 1
    out = d_two_form_jet(beta(seed(as_points(p), order=2)))
    return out[0] if single else out


def pair_coeffs(c: np.ndarray) -> np.ndarray:
    """Strict upper-triangle entries in PAIRS order, shape (..., 10)."""
    return np.stack([c[..., a, b] for a, b in PAIRS], axis=-1)


def from_pairs(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    c = np.zeros(v.shape[:-1] + (DIM, DIM), dtype=complex)
    for k, (a, b) in enumerate(PAIRS):
        c[..., a, b] = v[..., k]
        c[..., b, a] = -v[..., k]
    return c


def decompose_two_form(frame, omega2) -> np.ndarray:
    """Coefficients c_ab with omega2 = sum_{a<b} c_ab e_a ^ e_b.

    ``frame`` holds the coframe rows (..., 5, 5).  Returned as a full
    antisymmetric array in the frame index; use :func:`pair_coeffs` for the
    10 independent entries.
    """
    th = np.asarray(frame, dtype=complex)
    w = np.asarray(omega2, dtype=complex)
    batch = th.ndim == 3
    th3 = th if batch else th[None]
    d = det(th3)
    if np.any(np.abs(d) < DET_FLOOR):
        raise SingularCoframe(f"coframe determinant {np.min(np.abs(d)):.3e} below {DET_FLOOR:g}")
    ti = inv(th3)
    w3 = w if w.ndim == 3 else np.broadcast_to(w, th3.shape)
    c = np.einsum("nia,nij,njb->nab", ti, w3, ti)
    return c if batch else c[0]


def reconstruct_two_form(frame, coeffs) -> np.ndarray:
    th = np.asarray(frame, dtype=complex)
    return np.einsum("...ai,...ab,...bj->...ij", th, coeffs, th)
