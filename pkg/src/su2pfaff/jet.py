"""Forward-mode automatic differentiation.

Two flavours live here:

``Jet``
    Truncated multivariate Taylor arithmetic to second order, vectorised over
    numpy arrays.  A jet carries a value, the gradient and the Hessian with
    respect to ``n`` seed variables; derivative axes are always trailing.
    Arithmetic is exactly that of depth-2 nested dual numbers, just done for
    all directions at once.  A jet whose ``hess`` is ``None`` is first order
    (e.g. the result of a Lie bracket) and propagates as such.

``Dual``
    A plain scalar dual number a + b*eps whose parts may themselves be duals.
    Nesting twice gives exact second derivatives along coordinate directions.
    It is slow and only used to cross-check ``Jet``.
"""
from __future__ import annotations

import cmath
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "Jet",
    "seed",
    "const_like",
    "jexp",
    "jsin",
    "jcos",
    "jstack",
    "bilinear",
    "linear",
    "Dual",
    "dual_derivative",
    "dual_second_derivative",
]


def _asarray(x):
    return np.asarray(x, dtype=complex)


class Jet:
    __slots__ = ("val", "grad", "hess")
    __array_priority__ = 100.0

    def __init__(self, val, grad, hess=None):
        self.val = _asarray(val)
        self.grad = _asarray(grad)
        self.hess = None if hess is None else _asarray(hess)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.val.shape

    @property
    def nvar(self) -> int:
        return self.grad.shape[-1]

    @property
    def order(self) -> int:
        return 1 if self.hess is None else 2

    def __repr__(self) -> str:
        return f"Jet(shape={self.shape}, nvar={self.nvar}, order={self.order})"

    def __getitem__(self, key) -> "Jet":
        if not isinstance(key, tuple):
            key = (key,)
        if any(k is Ellipsis for k in key):
            raise IndexError("Jet indexing does not support Ellipsis")
        hess = None if self.hess is None else self.hess[key]
        return Jet(self.val[key], self.grad[key], hess)

    def truncate(self) -> "Jet":
        """Drop second-order information."""
        return Jet(self.val, self.grad, None)

    # arithmetic ----------------------------------------------------------

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return const_like(other, self)

    def __neg__(self) -> "Jet":
        return Jet(-self.val, -self.grad, None if self.hess is None else -self.hess)

    def __add__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            c = _asarray(other)
            return Jet(self.val + c, self.grad + np.zeros_like(c)[..., None],
                       None if self.hess is None else self.hess + np.zeros_like(c)[..., None, None])
        hess = None
        if self.hess is not None and other.hess is not None:
            hess = self.hess + other.hess
        return Jet(self.val + other.val, self.grad + other.grad, hess)

    __radd__ = __add__

    def __sub__(self, other) -> "Jet":
        return self + (-other)

    def __rsub__(self, other) -> "Jet":
        return (-self) + other

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            c = _asarray(other)
            return Jet(self.val * c, self.grad * c[..., None],
                       None if self.hess is None else self.hess * c[..., None, None])
        u, v = self, other
        val = u.val * v.val
        grad = u.grad * v.val[..., None] + u.val[..., None] * v.grad
        hess = None
        if u.hess is not None and v.hess is not None:
            cross = u.grad[..., :, None] * v.grad[..., None, :]
            hess = (u.hess * v.val[..., None, None] + cross + np.swapaxes(cross, -1, -2)
                    + u.val[..., None, None] * v.hess)
        return Jet(val, grad, hess)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        inv = 1.0 / self.val
        return _chain(self, inv, -inv * inv, 2.0 * inv * inv * inv)

    def __truediv__(self, other) -> "Jet":
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1.0 / _asarray(other))

    def __rtruediv__(self, other) -> "Jet":
        return self.reciprocal() * other

    def __pow__(self, k: int) -> "Jet":
        if not isinstance(k, (int, np.integer)) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = const_like(np.ones(self.shape), self)
        for _ in range(int(k)):
            out = out * self
        return out


def _chain(u: Jet, f0, f1, f2) -> Jet:
    """Apply a scalar function given its value and first two derivatives at u."""
    grad = f1[..., None] * u.grad
    hess = None
    if u.hess is not None:
        hess = (f2[..., None, None] * u.grad[..., :, None] * u.grad[..., None, :]
                + f1[..., None, None] * u.hess)
    return Jet(f0, grad, hess)


def jexp(u):
    if not isinstance(u, Jet):
        return np.exp(_asarray(u))
    e = np.exp(u.val)
    return _chain(u, e, e, e)


def jsin(u):
    if not isinstance(u, Jet):
        return np.sin(_asarray(u))
    s, c = np.sin(u.val), np.cos(u.val)
    return _chain(u, s, c, -s)


def jcos(u):
    if not isinstance(u, Jet):
        return np.cos(_asarray(u))
    s, c = np.sin(u.val), np.cos(u.val)
    return _chain(u, c, -s, -c)


def seed(points, order: int = 2) -> Jet:
    """Coordinate jet for a batch of points of shape (N, n)."""
    p = _asarray(points)
    if p.ndim != 2:
        raise ValueError("points must have shape (N, n)")
    n_pts, n = p.shape
    grad = np.broadcast_to(np.eye(n, dtype=complex), (n_pts, n, n)).copy()
    hess = np.zeros((n_pts, n, n, n), dtype=complex) if order >= 2 else None
    return Jet(p, grad, hess)


def const_like(value, like: Jet) -> Jet:
    """A constant (zero-derivative) jet with the variable count and order of ``like``."""
    v = _asarray(value)
    n = like.nvar
    grad = np.zeros(v.shape + (n,), dtype=complex)
    hess = None if like.hess is None else np.zeros(v.shape + (n, n), dtype=complex)
    return Jet(v, grad, hess)


def jstack(items: Sequence, axis: int = -1) -> Jet:
    """Stack jets (or constants) along a new value axis."""
    like = next((x for x in items if isinstance(x, Jet)), None)
    if like is None:
        raise ValueError("jstack needs at least one Jet")
    shape = np.broadcast_shapes(*[x.shape if isinstance(x, Jet) else np.shape(x) for x in items])
    jets = []
    for x in items:
        j = x if isinstance(x, Jet) else const_like(x, like)
        if j.shape != shape:
            j = j + const_like(np.zeros(shape), like)
        jets.append(j)
    nd = len(shape) + 1
    ax = axis if axis >= 0 else nd + axis
    val = np.stack([j.val for j in jets], axis=ax)
    grad = np.stack([j.grad for j in jets], axis=ax)
    hess = None
    if all(j.hess is not None for j in jets):
        hess = np.stack([j.hess for j in jets], axis=ax)
    return Jet(val, grad, hess)


def _split(subscripts: str):
    ins, out = subscripts.replace(" ", "").split("->")
    return ins.split(","), out


def linear(subscripts: str, const, a: Jet) -> Jet:
    """einsum of a constant array with a jet; the jet operand comes second."""
    (sc, sa), out = _split(subscripts)
    c = _asarray(const)
    val = np.einsum(f"{sc},{sa}->{out}", c, a.val)
    grad = np.einsum(f"{sc},{sa}y->{out}y", c, a.grad)
    hess = None if a.hess is None else np.einsum(f"{sc},{sa}yz->{out}yz", c, a.hess)
    return Jet(val, grad, hess)


def bilinear(subscripts: str, a: Jet, b: Jet) -> Jet:
    """einsum of two jets with the product rule applied to derivatives.

    Subscripts may use ``...`` for batch axes; ``y`` and ``z`` are reserved.
    """
    (sa, sb), out = _split(subscripts)
    val = np.einsum(f"{sa},{sb}->{out}", a.val, b.val)
    grad = (np.einsum(f"{sa}y,{sb}->{out}y", a.grad, b.val)
            + np.einsum(f"{sa},{sb}y->{out}y", a.val, b.grad))
    hess = None
    if a.hess is not None and b.hess is not None:
        hess = (np.einsum(f"{sa}yz,{sb}->{out}yz", a.hess, b.val)
                + np.einsum(f"{sa}y,{sb}z->{out}yz", a.grad, b.grad)
                + np.einsum(f"{sa}z,{sb}y->{out}yz", a.grad, b.grad)
                + np.einsum(f"{sa},{sb}yz->{out}yz", a.val, b.hess))
    return Jet(val, grad, hess)


# --------------------------------------------------------------------------
# scalar nested dual numbers


class Dual:
    """a + b*eps with eps**2 = 0.  Parts may be complex numbers or Duals."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0.0):
        self.a = a
        self.b = b

    def __repr__(self) -> str:
        return f"Dual({self.a!r}, {self.b!r})"

    def __add__(self, o):
        if isinstance(o, Dual):
            return Dual(self.a + o.a, self.b + o.b)
        return Dual(self.a + o, self.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, Dual):
            return Dual(self.a * o.a, self.a * o.b + self.b * o.a)
        return Dual(self.a * o, self.b * o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, Dual):
            return self * o.reciprocal()
        return Dual(self.a / o, self.b / o)

    def __rtruediv__(self, o):
        return self.reciprocal() * o

    def reciprocal(self):
        inv = 1 / self.a
        return Dual(inv, -self.b * inv * inv)

    def exp(self):
        e = dexp(self.a)
        return Dual(e, self.b * e)

    def sin(self):
        return Dual(dsin(self.a), self.b * dcos(self.a))

    def cos(self):
        return Dual(dcos(self.a), -self.b * dsin(self.a))


def dexp(x):
    return x.exp() if isinstance(x, Dual) else cmath.exp(x)


def dsin(x):
    return x.sin() if isinstance(x, Dual) else cmath.sin(x)


def dcos(x):
    return x.cos() if isinstance(x, Dual) else cmath.cos(x)


def dual_derivative(f: Callable, x) -> complex:
    return f(Dual(x, 1.0)).b


def dual_second_derivative(f: Callable, x) -> complex:
    """d^2 f / dx^2 by nesting one dual inside another."""
    y = f(Dual(Dual(x, 1.0), Dual(1.0, 0.0)))
    return y.b.b
