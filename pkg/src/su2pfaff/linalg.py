"""Small dense complex linear algebra, batched over a leading axis.

Matrices here are at most 5x5 but come in batches of a few hundred, so the
elimination loops run over the (tiny) column index while every step is
vectorised over the batch.
"""
from __future__ import annotations

import numpy as np

from .errors import SingularCoframe

DET_FLOOR = 1e-12


def lu_factor(a):
    """Partial-pivot LU with pivots chosen by complex modulus.

    Returns (lu, perm, sign) with ``a[perm] = L @ U`` for each batch entry;
    ``lu`` stores the unit-lower L below the diagonal and U on and above it.
    """
    lu = np.array(a, dtype=complex, copy=True)
    squeeze = lu.ndim == 2
    if squeeze:
        lu = lu[None]
    nb, n, _ = lu.shape
    perm = np.broadcast_to(np.arange(n), (nb, n)).copy()
    sign = np.ones(nb)
    rows = np.arange(nb)
    for k in range(n):
        piv = k + np.argmax(np.abs(lu[:, k:, k]), axis=1)
        swap = piv != k
        if swap.any():
            idx = rows[swap]
            pk = piv[swap]
            tmp = lu[idx, k, :].copy()
            lu[idx, k, :] = lu[idx, pk, :]
            lu[idx, pk, :] = tmp
            tp = perm[idx, k].copy()
            perm[idx, k] = perm[idx, pk]
            perm[idx, pk] = tp
            sign[swap] *= -1.0
        d = lu[:, k, k]
        safe = np.where(d == 0, 1.0, d)
        lu[:, k + 1:, k] /= safe[:, None]
        lu[:, k + 1:, k + 1:] -= lu[:, k + 1:, k, None] * lu[:, k, None, k + 1:]
    if squeeze:
        return lu[0], perm[0], sign[0]
    return lu, perm, sign


def det(a):
    lu, _, sign = lu_factor(a)
    return sign * np.prod(np.diagonal(lu, axis1=-2, axis2=-1), axis=-1)


def solve(a, b):
    """Solve a x = b for a batch of square systems; b is (..., n) or (..., n, m)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    vec = b.ndim == a.ndim - 1
    lu, perm, _ = lu_factor(a if a.ndim == 3 else a[None])
    bb = b if a.ndim == 3 else b[None]
    if vec:
        bb = bb[..., None]
    x = np.take_along_axis(bb, perm[:, :, None], axis=1).copy()
    n = lu.shape[-1]
    for i in range(n):
        x[:, i] -= np.einsum("bj,bjm->bm", lu[:, i, :i], x[:, :i])
    for i in reversed(range(n)):
        x[:, i] -= np.einsum("bj,bjm->bm", lu[:, i, i + 1:], x[:, i + 1:])
        x[:, i] /= lu[:, i, i, None]
    if vec:
        x = x[..., 0]
    return x if a.ndim == 3 else x[0]


def inv(a):
    a = np.asarray(a, dtype=complex)
    n = a.shape[-1]
    eye = np.broadcast_to(np.eye(n, dtype=complex), a.shape)
    return solve(a, eye)


def checked_inv(a, floor: float = DET_FLOOR, exc=SingularCoframe):
    """Inverse that raises ``exc`` when any |det| falls below ``floor``."""
    d = det(a)
    if np.any(np.abs(d) < floor):
        raise exc(f"matrix is singular (min |det| = {np.min(np.abs(d)):.3e})")
    return inv(a)


def lstsq(a, b):
    """Least-squares solution and max-abs residual for one complex system."""
    x, *_ = np.linalg.lstsq(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex), rcond=None)
    res = np.max(np.abs(a @ x - b)) if np.size(b) else 0.0
    return x, float(res)


def numerical_rank(vectors, tol: float = 1e-7) -> int:
    """Rank of the row set by singular values relative to the largest."""
    m = np.asarray(vectors, dtype=complex)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s / s[0] > tol))
