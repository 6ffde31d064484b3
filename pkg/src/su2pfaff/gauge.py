"""SU(2) gauge interpretation of the two conformally flat distributions.

The left-invariant fields E^a are represented by (i/2) times the Pauli
matrices.  A covariant derivative on Sigma^2 is a first-order operator

    D = a(r) d/dr + b(r) d/du + M(r),      M(r) in su(2),

and every coefficient here is a finite sum of complex exponentials
amp * exp(rate * r), so r-derivatives are exact.  Brackets of such
operators are again of this form, which is how F = [D0, D1] and the
higher brackets are produced.  Reference values are the closed forms
written out directly, independent of the series machinery.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import UnsupportedCase
from .jet import Jet, const_like, dual_derivative, jexp, seed
from .manifold import E as E_field, R, U, bracket_jet, sigma_rows

SQ2 = np.sqrt(2.0)

PAULI = (
    np.array([[0, 1j / 2], [1j / 2, 0]]),
    np.array([[0, 0.5], [-0.5, 0]], dtype=complex),
    np.array([[1j / 2, 0], [0, -1j / 2]]),
)

CASES = ("A", "B")
SIGNS = ("minus", "plus")
VARIANTS = ("complex", "real", "sign-reversed")


def pauli_rep(a: int) -> np.ndarray:
    if a not in (1, 2, 3):
        raise ValueError("generator index must be 1, 2 or 3")
    return PAULI[a - 1].copy()


def commutator(x, y):
    return x @ y - y @ x


def components(m) -> np.ndarray:
    """Coefficients c with m = sum_a c_a E^a (m trace-free, possibly batched)."""
    m = np.asarray(m, dtype=complex)
    c1 = -1j * (m[..., 0, 1] + m[..., 1, 0])
    c2 = m[..., 0, 1] - m[..., 1, 0]
    c3 = -1j * (m[..., 0, 0] - m[..., 1, 1])
    return np.stack([c1, c2, c3], axis=-1)


def from_components(c) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    return np.einsum("...a,aij->...ij", c, np.stack(PAULI))


# --------------------------------------------------------------------------
# exponential series in r


def _accumulate(acc: dict, rate: complex, c) -> None:
    """Add c to the term with this rate; rates closer than 1e-12 are merged."""
    rate = complex(rate)
    for k in acc:
        if abs(k - rate) < 1e-12:
            acc[k] = acc[k] + c
            return
    acc[rate] = c


class Series:
    """sum_k coef_k * exp(rate_k * r); coefficients share one array shape."""

    __slots__ = ("terms", "shape")

    def __init__(self, terms: dict, shape=()):
        self.shape = tuple(shape)
        acc: dict = {}
        for rate, c in terms.items():
            _accumulate(acc, rate, np.broadcast_to(np.asarray(c, dtype=complex), self.shape))
        self.terms = {k: np.array(v) for k, v in acc.items() if np.any(v != 0)}

    @classmethod
    def const(cls, c, shape=()):
        return cls({0: c}, shape)

    @classmethod
    def exp(cls, amp, rate, shape=()):
        return cls({rate: amp}, shape)

    @classmethod
    def cos(cls, amp, w, shape=()):
        return cls({1j * w: amp / 2, -1j * w: amp / 2}, shape)

    @classmethod
    def sin(cls, amp, w, shape=()):
        return cls({1j * w: amp / 2j, -1j * w: -amp / 2j}, shape)

    def __call__(self, r):
        r = np.asarray(r, dtype=complex)
        out = np.zeros(r.shape + self.shape, dtype=complex)
        for rate, c in self.terms.items():
            e = np.exp(rate * r).reshape(r.shape + (1,) * len(self.shape))
            out = out + e * c
        return out

    def jet(self, r: Jet) -> Jet:
        """Evaluate on a scalar jet of shape (N,) (used as a cross-check)."""
        pieces = []
        for rate, c in self.terms.items():
            e = jexp(r * rate)
            pieces.append((e, c))
        total = const_like(np.zeros(r.shape + self.shape), r)
        for e, c in pieces:
            ex = Jet(e.val.reshape(e.shape + (1,) * len(self.shape)),
                     e.grad.reshape(e.shape + (1,) * len(self.shape) + (e.nvar,)),
                     None if e.hess is None else e.hess.reshape(e.shape + (1,) * len(self.shape) + (e.nvar, e.nvar)))
            total = total + ex * np.broadcast_to(c, e.shape + self.shape)
        return total

    def deriv(self) -> "Series":
        return Series({k: k * c for k, c in self.terms.items()}, self.shape)

    def _combine(self, other: "Series", op, shape) -> "Series":
        acc: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                _accumulate(acc, ka + kb, op(ca, cb))
        return Series(acc, shape)

    def __add__(self, other: "Series") -> "Series":
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(acc, k, c)
        return Series(acc, np.broadcast_shapes(self.shape, other.shape))

    def __neg__(self) -> "Series":
        return Series({k: -c for k, c in self.terms.items()}, self.shape)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Series):
            shape = np.broadcast_shapes(self.shape, np.shape(other))
            return Series({k: c * other for k, c in self.terms.items()}, shape)
        shape = np.broadcast_shapes(self.shape, other.shape)
        return self._combine(other, lambda a, b: a * b, shape)

    __rmul__ = __mul__

    def commutator(self, other: "Series") -> "Series":
        return self._combine(other, commutator, (2, 2))


def _mat(coeffs: dict[int, Series]) -> Series:
    """sum_a s_a E^a as a matrix series."""
    out = Series({}, (2, 2))
    for a, s in coeffs.items():
        out = out + s * PAULI[a - 1]
    return out


# --------------------------------------------------------------------------
# operators


@dataclass(frozen=True)
class Operator:
    """a d/dr + b d/du + M with r-dependent series coefficients."""

    dr: Series
    du: Series
    M: Series

    @classmethod
    def matrix(cls, M: Series) -> "Operator":
        return cls(Series({}), Series({}), M)

    def scaled(self, h: Series) -> "Operator":
        return Operator(h * self.dr, h * self.du, h * self.M)

    def at(self, r):
        return self.dr(r), self.du(r), self.M(r)


def op_bracket(X: Operator, Y: Operator) -> Operator:
    """[X, Y] for r-dependent coefficients (nothing depends on u)."""
    return Operator(
        X.dr * Y.dr.deriv() - Y.dr * X.dr.deriv(),
        X.dr * Y.du.deriv() - Y.dr * X.du.deriv(),
        X.dr * Y.M.deriv() - Y.dr * X.M.deriv() + X.M.commutator(Y.M),
    )


# --------------------------------------------------------------------------
# the cases


@dataclass(frozen=True)
class GaugeCase:
    case: str = "A"
    sign: str = "minus"
    variant: str = "complex"

    def __post_init__(self):
        if self.case not in CASES:
            raise UnsupportedCase(f"case must be one of {CASES}, got {self.case!r}")
        if self.sign not in SIGNS:
            raise UnsupportedCase(f"sign must be one of {SIGNS}, got {self.sign!r}")
        if self.variant not in VARIANTS:
            raise UnsupportedCase(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.case == "B" and self.variant == "sign-reversed":
            raise UnsupportedCase("no sign-reversed gauge table is available for case B")

    @property
    def eps(self) -> int:
        """-1 for the upper ('minus') branch, +1 for the lower."""
        return -1 if self.sign == "minus" else 1

    @property
    def label(self) -> str:
        return f"{self.case}/{self.sign}/{self.variant}"


@dataclass(frozen=True)
class GaugePotential:
    """W[mu][a] as series; A_mu = sum_a W[mu][a] E^a."""

    W: tuple[tuple[Series, Series, Series], tuple[Series, Series, Series]]

    def matrix(self, mu: int) -> Series:
        return _mat({a + 1: self.W[mu][a] for a in range(3)})

    def at(self, mu: int, r) -> np.ndarray:
        return self.matrix(mu)(r)

    def components_at(self, mu: int, r) -> np.ndarray:
        return np.stack([self.W[mu][a](r) for a in range(3)], axis=-1)


def _profile(gc: GaugeCase) -> Series:
    e = gc.eps
    if gc.case == "A":
        return Series.exp(-3 / (2 * SQ2), e * 1j / 3)
    return Series.exp(1j / (2 * SQ2), e * 3j)


def gauge_potential(gc: GaugeCase) -> GaugePotential:
    zero = Series({})
    e = gc.eps
    w02 = Series.const(-1.0)
    if gc.variant == "complex":
        f = _profile(gc)
        w13 = f * (-e * 1j / 3) if gc.case == "A" else f * (-e * 3j)
        w1 = (f, zero, w13)
    elif gc.variant == "sign-reversed":
        w02 = Series.const(1.0)
        g = Series.exp(3 / (2 * SQ2), e * 1j / 3)
        w1 = (g, zero, g * (e * 1j / 3))
    elif gc.case == "A":
        w1 = (Series.cos(-3 * SQ2 / 4, 1 / 3), zero, Series.sin(-SQ2 / 4, 1 / 3))
    else:
        w1 = (Series.cos(1 / (2 * SQ2), 3.0), zero, Series.sin(3 / (2 * SQ2), 3.0))
    return GaugePotential(((zero, w02, zero), w1))


def derivatives(gc: GaugeCase) -> tuple[Operator, Operator]:
    pot = gauge_potential(gc)
    one, zero = Series.const(1.0), Series({})
    return Operator(one, zero, pot.matrix(0)), Operator(zero, one, pot.matrix(1))


@dataclass(frozen=True)
class Spinor:
    """A doublet of scalar functions of (r, u); they must accept Dual arguments."""

    psi_p: Callable
    psi_n: Callable

    @classmethod
    def constant(cls, p, n) -> "Spinor":
        return cls(lambda r, u: p + 0 * r, lambda r, u: n + 0 * r)

    def value(self, r, u) -> np.ndarray:
        return np.array([complex(self.psi_p(r, u)), complex(self.psi_n(r, u))])

    def partial(self, mu: int, r, u) -> np.ndarray:
        out = []
        for fn in (self.psi_p, self.psi_n):
            if mu == 0:
                d = dual_derivative(lambda t: fn(t, u) + 0 * t, r)
            else:
                d = dual_derivative(lambda t: fn(r, t) + 0 * t, u)
            out.append(complex(d))
        return np.array(out)


def covariant_derivative(gc: GaugeCase, mu: int, psi: Spinor, p) -> np.ndarray:
    """D_mu psi = d_mu psi + W_{mu a} E^a psi at p = (r, u)."""
    if mu not in (0, 1):
        raise ValueError("mu must be 0 or 1")
    r, u = p
    A = gauge_potential(gc).at(mu, r)
    return psi.partial(mu, r, u) + A @ psi.value(r, u)


def field_strength(gc: GaugeCase, r) -> np.ndarray:
    D0, D1 = derivatives(gc)
    return op_bracket(D0, D1).M(r)


# --------------------------------------------------------------------------
# closed-form references


def _ph(rate, r):
    return np.exp(rate * np.asarray(r, dtype=complex))


def _E(a, coef):
    return np.asarray(coef)[..., None, None] * PAULI[a - 1]


def reference_table(gc: GaugeCase) -> dict[str, Callable]:
    """The displayed closed forms, as functions of r returning 2x2 matrices."""
    e = gc.eps
    pm = -e        # the upper sign of a +- pair sits on the 'minus' branch
    mp = e
    if gc.variant == "complex" and gc.case == "A":
        ph = lambda r: _ph(mp * 1j / 3, r)
        f = lambda r: -3 / (2 * SQ2) * ph(r)
        blk = lambda r, s: f(r)[..., None, None] * np.array([[s / 6, 1j / 2], [1j / 2, -s / 6]])
        return {
            "D0_matrix": lambda r: np.broadcast_to(np.array([[0, -0.5], [0.5, 0]], dtype=complex), np.shape(r) + (2, 2)),
            "D1_matrix": lambda r: blk(r, mp),
            "F": lambda r: _E(3, 2 * SQ2 / 3 * ph(r)),
            "F_matrix": lambda r: (2 * SQ2 / 3 * ph(r))[..., None, None] * np.array([[1j / 2, 0], [0, -1j / 2]]),
            "[D0,F]": lambda r: _E(1, 2 * SQ2 / 3 * ph(r)) + _E(3, mp * 2 * SQ2 / 9 * 1j * ph(r)),
            "[D0,F]_matrix": lambda r: -8 / 9 * blk(r, pm),
            "[D1,F]": lambda r: _E(2, -_ph(mp * 2j / 3, r)),
        }
    if gc.variant == "sign-reversed":
        ph = lambda r: _ph(mp * 1j / 3, r)
        return {
            "D0_matrix": lambda r: np.broadcast_to(PAULI[1], np.shape(r) + (2, 2)),
            "D1_matrix": lambda r: _E(1, 3 / (2 * SQ2) * ph(r)) + _E(3, mp * 1j / (2 * SQ2) * ph(r)),
            "F": lambda r: _E(3, 2 * SQ2 / 3 * ph(r)),
            "[D0,F]": lambda r: _E(1, -2 * SQ2 / 3 * ph(r)) + _E(3, mp * 2 * SQ2 / 9 * 1j * ph(r)),
            "[D1,F]": lambda r: _E(2, _ph(mp * 2j / 3, r)),
        }
    if gc.variant == "real" and gc.case == "A":
        c = lambda r: np.cos(np.asarray(r, dtype=complex) / 3)
        s = lambda r: np.sin(np.asarray(r, dtype=complex) / 3)
        return {
            "D1_matrix": lambda r: _E(1, -3 * SQ2 / 4 * c(r)) + _E(3, -SQ2 / 4 * s(r)),
            "F": lambda r: _E(3, 2 * SQ2 / 3 * c(r)),
            "[D0,F]": lambda r: _E(1, 2 * SQ2 / 3 * c(r)) + _E(3, -2 * SQ2 / 9 * s(r)),
            "[D1,F]": lambda r: _E(2, -c(r) ** 2),
        }
    if gc.variant == "complex":       # case B
        ph = lambda r: _ph(mp * 3j, r)
        return {
            "D1_matrix": lambda r: _E(1, 1j / (2 * SQ2) * ph(r)) + _E(3, mp * 3 / (2 * SQ2) * ph(r)),
            "F": lambda r: _E(3, 2 * SQ2 * 1j * ph(r)),
            "[D0,F]": lambda r: _E(1, 2 * SQ2 * 1j * ph(r)) + _E(3, pm * 6 * SQ2 * ph(r)),
            "[D1,F]": lambda r: _E(2, -_ph(mp * 6j, r)),
        }
    c = lambda r: np.cos(3 * np.asarray(r, dtype=complex))
    s = lambda r: np.sin(3 * np.asarray(r, dtype=complex))
    return {
        "D1_matrix": lambda r: _E(1, c(r) / (2 * SQ2)) + _E(3, 3 / (2 * SQ2) * s(r)),
        "F": lambda r: _E(3, 2 * SQ2 * c(r)),
        "[D0,F]": lambda r: _E(1, 2 * SQ2 * c(r)) + _E(3, -6 * SQ2 * s(r)),
        "[D1,F]": lambda r: _E(2, c(r) ** 2),
    }


@dataclass
class BracketTable:
    case: GaugeCase
    r: np.ndarray
    computed: dict[str, np.ndarray]
    expected: dict[str, np.ndarray]
    residuals: dict[str, float]

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())


def _table(computed: dict, refs: dict, r, gc) -> BracketTable:
    expected = {k: np.asarray(refs[k](r)) for k in refs}
    res = {k: float(np.max(np.abs(computed[k] - expected[k]))) for k in refs}
    return BracketTable(gc, np.asarray(r), {k: computed[k] for k in refs}, expected, res)


def bracket_table(gc: GaugeCase, r) -> BracketTable:
    r = np.atleast_1d(np.asarray(r, dtype=float))
    D0, D1 = derivatives(gc)
    F = Operator.matrix(op_bracket(D0, D1).M)
    c0, c1 = op_bracket(D0, F), op_bracket(D1, F)
    computed = {
        "D0_matrix": D0.M(r), "D1_matrix": D1.M(r),
        "F": F.M(r), "F_matrix": F.M(r),
        "[D0,F]": c0.M(r), "[D0,F]_matrix": c0.M(r),
        "[D1,F]": c1.M(r),
    }
    return _table(computed, reference_table(gc), r, gc)


def rescaled_brackets(gc: GaugeCase, r) -> BracketTable:
    """Rescale D0 by (3/(2 sqrt 2)) exp(+-ir/3) in the complex case A."""
    if gc.case != "A" or gc.variant != "complex":
        raise UnsupportedCase("the rescaled relations exist only for the complex case A")
    r = np.atleast_1d(np.asarray(r, dtype=float))
    e = gc.eps
    D0, D1 = derivatives(gc)
    h = Series.exp(3 / (2 * SQ2), -e * 1j / 3)
    T0 = D0.scaled(h)
    Ft = op_bracket(T0, D1)
    Fm = Operator.matrix(Ft.M)
    computed = {
        "F~": Ft.M(r),
        "F~_vector_part": np.stack([Ft.dr(r), Ft.du(r)], axis=-1),
        "[D0~,F~]": op_bracket(T0, Fm).M(r),
        "[D1~,F~]": op_bracket(D1, Fm).M(r),
    }
    refs = {
        "F~": lambda t: np.broadcast_to(PAULI[2], np.shape(t) + (2, 2)),
        "F~_vector_part": lambda t: np.zeros(np.shape(t) + (2,), dtype=complex),
        "[D0~,F~]": lambda t: _E(1, 3 * SQ2 / 4 * _ph(-e * 1j / 3, t)),
        "[D1~,F~]": lambda t: _E(2, -3 * SQ2 / 4 * _ph(e * 1j / 3, t)),
    }
    return _table(computed, refs, r, gc)


def jacobi_residual(gc: GaugeCase, r) -> float:
    """[[D0,D1],F] + [[D1,F],D0] + [[F,D0],D1] on the operator algebra."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    D0, D1 = derivatives(gc)
    F = Operator.matrix(op_bracket(D0, D1).M)
    parts = [op_bracket(op_bracket(D0, D1), F), op_bracket(op_bracket(D1, F), D0),
             op_bracket(op_bracket(F, D0), D1)]
    tot = [sum(getattr(p, k)(r) for p in parts) for k in ("dr", "du", "M")]
    return float(max(np.max(np.abs(t)) for t in tot))


# --------------------------------------------------------------------------
# cross-checks through the five-dimensional vector fields


def _vector_field(pot: GaugePotential, mu: int) -> Callable[[Jet], Jet]:
    """d_mu + W_{mu a} E^a as a vector field on S^3 x Sigma^2."""
    def field(x: Jet) -> Jet:
        r = x[:, R]
        coord = np.zeros(5)
        coord[R if mu == 0 else U] = 1.0
        out = const_like(np.broadcast_to(coord, x.shape).copy(), x)
        for a in range(3):
            w = pot.W[mu][a]
            if not w.terms:
                continue
            wa = w.jet(r)
            ea = E_field(a + 1)(x)
            out = out + ea * Jet(wa.val[:, None], wa.grad[:, None, :],
                                 None if wa.hess is None else wa.hess[:, None, :, :])
        return out
    return field


def field_strength_lie(gc: GaugeCase, points) -> tuple[np.ndarray, float]:
    """F from the Lie bracket of the 5D fields, read off in the E-frame.

    Returns the matrices and the size of the (dr, du) part, which must vanish.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=complex))
    x = seed(pts, order=2)
    pot = gauge_potential(gc)
    br = bracket_jet(_vector_field(pot, 0)(x), _vector_field(pot, 1)(x)).val
    sig = sigma_rows(seed(pts, order=1)).val
    comps = np.einsum("nak,nk->na", sig, br)
    leak = float(np.max(np.abs(br[:, [R, U]])))
    return from_components(comps), leak


def field_strength_jet(gc: GaugeCase, r) -> np.ndarray:
    """dA1/dr + [A0, A1] with the derivative taken by jets."""
    r = np.atleast_1d(np.asarray(r, dtype=complex))
    rj = seed(r[:, None], order=1)[:, 0]
    A1 = gauge_potential(gc).matrix(1).jet(rj)
    A0 = gauge_potential(gc).at(0, r.real)
    return A1.grad[..., 0] + commutator(A0, A1.val)
