"""Adapted coframe, connection forms and the conformal metrics of the distributions.

Symmetric products follow ``ab = (a (x) b + b (x) a) / 2`` throughout, so a
metric written as ``2 t1 t5 - 2 t2 t4 + 4/3 t3 t3`` has coefficient matrix
entries C[0, 4] = C[4, 0] = 1, C[1, 3] = C[3, 1] = -1 and C[2, 2] = 4/3.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .curvature import MetricField
from .errors import BranchRestriction, DegenerateParams, UnsupportedCase
from .forms import d_jet, decompose_two_form
from .jet import Jet, bilinear, jcos, jexp, jsin, jstack, linear, seed
from .linalg import lstsq
from .manifold import R, as_points, covector, sigma_rows
from .pfaffian import SystemParams, omega_rows

SQRT2 = np.sqrt(2.0)


def quadratic_form(rows: Jet, coeffs) -> Jet:
    """sum_ab C_ab rows_a rows_b for one-form rows (N, m, 5) and symmetric C (m, m)."""
    c = np.asarray(coeffs, dtype=complex)
    m = linear("ab,nbj->naj", c, rows)
    q = bilinear("nai,naj->nij", rows, m)
    # symmetrise so that g_ij == g_ji holds bit for bit
    sym = lambda t, a, b: 0.5 * (t + np.swapaxes(t, a, b))
    return Jet(sym(q.val, 1, 2), sym(q.grad, 1, 2), None if q.hess is None else sym(q.hess, 1, 2))


def _coeff_matrix(m: int, entries: dict[tuple[int, int], complex]) -> np.ndarray:
    """Symmetric matrix from 1-based (a, b) -> coefficient of the product a*b."""
    c = np.zeros((m, m), dtype=complex)
    for (a, b), v in entries.items():
        if a == b:
            c[a - 1, a - 1] += v
        else:
            c[a - 1, b - 1] += v / 2
            c[b - 1, a - 1] += v / 2
    return c


# --------------------------------------------------------------------------
# adapted coframe


def _real_positive(z: complex, what: str) -> float:
    z = complex(z)
    if abs(z.imag) > 0 or z.real <= 0:
        raise BranchRestriction(f"{what} must be real and positive, got {z}")
    return z.real


def scale_lambda(a2, c2) -> float:
    """(a2^2 / (a2^2 + c2^2))^(1/3) on the real branch."""
    a = _real_positive(a2, "a2")
    c = complex(c2)
    if c.imag != 0:
        raise BranchRestriction("the adapted coframe is restricted to real c2")
    return (a * a / (a * a + c.real**2)) ** (1.0 / 3.0)


def q_constant(a2, c2) -> float:
    a = _real_positive(a2, "a2")
    c = complex(c2).real
    return -0.1 * (7 * a * a + 3 * c * c) / (a ** (2.0 / 3.0) * (a * a + c * c) ** (2.0 / 3.0))


@dataclass(frozen=True)
class AdaptedCoframe:
    params: SystemParams
    lam: float
    P: complex
    Q: complex
    R: complex
    S: complex
    T: complex
    U: complex

    def rows(self, x: Jet) -> Jet:
        w = omega_rows(self.params, x)
        w1, w2, w3, w4, w5 = (w[:, i] for i in range(5))
        il = 1.0 / self.lam
        return jstack([
            w1,
            w2,
            w3 * self.lam,
            w4 * il + w1 * self.P + w2 * self.Q + w3 * self.R,
            w5 * il + w1 * self.S + w2 * self.T + w3 * self.U,
        ], axis=-2)

    def at(self, p) -> np.ndarray:
        single = np.ndim(p) == 1
        out = self.rows(seed(as_points(p), order=1)).val
        return out[0] if single else out


def adapted_coframe(params: SystemParams) -> AdaptedCoframe:
    """theta_1..theta_5 with R = U = 0, T = P = 0 and S = -Q."""
    if not params.simplified or params.b1 != 1:
        raise BranchRestriction("the adapted coframe is defined for the simplified system (b1 = 1)")
    lam = scale_lambda(params.a2, params.c2)
    q = q_constant(params.a2, params.c2)
    return AdaptedCoframe(params, lam, P=0.0, Q=q, R=0.0, S=-q, T=0.0, U=0.0)


# dtheta_i = sum coef * theta_a ^ Omega_k + sum coef * theta_a ^ theta_b
# Omega terms as (a, k, coef); fixed terms as (a, b, coef); 1-based.
CARTAN_OMEGA_TERMS = (
    ((1, 1, 2), (1, 4, 1), (2, 2, 1)),
    ((1, 3, 1), (2, 1, 1), (2, 4, 2)),
    ((1, 5, 1), (2, 6, 1), (3, 1, 1), (3, 4, 1)),
    ((1, 7, 1), (3, 6, 4 / 3), (4, 1, 1), (5, 2, 1)),
    ((2, 7, 1), (3, 5, -4 / 3), (4, 3, 1), (5, 4, 1)),
)
CARTAN_FIXED_TERMS = (
    ((3, 4, 1),),
    ((3, 5, 1),),
    ((4, 5, 1),),
    (),
    (),
)
N_CONNECTION = 7

_PAIR_INDEX = {}
for _a in range(5):
    for _b in range(_a + 1, 5):
        _PAIR_INDEX[(_a, _b)] = len(_PAIR_INDEX)


def _wedge_entry(a: int, b: int) -> tuple[int, float] | None:
    """(pair index, sign) of theta_a ^ theta_b in the a<b basis, 0-based."""
    if a == b:
        return None
    if a < b:
        return _PAIR_INDEX[(a, b)], 1.0
    return _PAIR_INDEX[(b, a)], -1.0


def cartan_system_matrix() -> np.ndarray:
    """The 50 x 35 map from Omega coefficients to dtheta wedge coefficients."""
    A = np.zeros((5 * 10, N_CONNECTION * 5))
    for i, terms in enumerate(CARTAN_OMEGA_TERMS):
        for a, k, coef in terms:
            for c in range(5):
                hit = _wedge_entry(a - 1, c)
                if hit is None:
                    continue
                pair, sgn = hit
                A[10 * i + pair, 5 * (k - 1) + c] += sgn * coef
    return A


def cartan_rhs(dtheta_coeffs: np.ndarray) -> np.ndarray:
    """dtheta wedge coefficients minus the fixed theta^theta terms, flattened to 50."""
    b = np.zeros(50, dtype=complex)
    for i in range(5):
        for (a, c), pair in _PAIR_INDEX.items():
            b[10 * i + pair] = dtheta_coeffs[i, a, c]
        for a, c, coef in CARTAN_FIXED_TERMS[i]:
            pair, sgn = _wedge_entry(a - 1, c - 1)
            b[10 * i + pair] -= sgn * coef
    return b


@dataclass
class ConnectionSolution:
    omega_conn: np.ndarray      # (7, 5): Omega_k = sum_c omega_conn[k, c] theta_c
    residual: float


def dtheta_coefficients(ac: AdaptedCoframe, points) -> np.ndarray:
    x = seed(as_points(points), order=2)
    rows = ac.rows(x)
    out = np.empty((x.shape[0], 5, 5, 5), dtype=complex)
    for i in range(5):
        out[:, i] = decompose_two_form(rows.val, d_jet(rows[:, i]).val)
    return out


def solve_connection_forms(ac: AdaptedCoframe, p) -> ConnectionSolution | list[ConnectionSolution]:
    """Least-squares Omega_1..Omega_7 for the five Cartan structure equations."""
    single = np.ndim(p) == 1
    coeffs = dtheta_coefficients(ac, p)
    A = cartan_system_matrix()
    sols = []
    for c in coeffs:
        x, res = lstsq(A, cartan_rhs(c))
        sols.append(ConnectionSolution(x.reshape(N_CONNECTION, 5), res))
    return sols[0] if single else sols


# --------------------------------------------------------------------------
# Nurowski metrics for the general family


def nurowski_metric_g(params: SystemParams, ac: AdaptedCoframe | None = None) -> MetricField:
    """g = 2 t1 t5 - 2 t2 t4 + 4/3 t3 t3 in the adapted coframe."""
    ac = ac or adapted_coframe(params)
    C = _coeff_matrix(5, {(1, 5): 2, (2, 4): -2, (3, 3): 4 / 3})
    return MetricField(5, lambda x: quadratic_form(ac.rows(x), C), "g")


def gtilde_coefficients(a2, c2) -> tuple[complex, complex]:
    """(coefficient of w3 w3, coefficient of w1 w1 + w2 w2) in the rescaled metric."""
    a2, c2 = complex(a2), complex(c2)
    if a2 == 0:
        raise DegenerateParams("a2 must be nonzero")
    den = a2 * a2 + c2 * c2
    if den == 0:
        raise DegenerateParams("a2^2 + c2^2 must be nonzero")
    ratio = a2 * a2 / den
    return (4 / 3) * ratio, 0.2 * ratio * (7 * a2 * a2 + 3 * c2 * c2) / (a2 * a2)


def nurowski_metric_gtilde(params: SystemParams) -> MetricField:
    """The rescaled representative, rational in (a2, c2) and branch-free."""
    alpha, beta = gtilde_coefficients(params.a2, params.c2)
    C = _coeff_matrix(5, {(1, 5): 2, (2, 4): -2, (3, 3): alpha, (1, 1): beta, (2, 2): beta})
    return MetricField(5, lambda x: quadratic_form(omega_rows(params, x), C), "gtilde")


def w2424_closed_form(a2, c2) -> complex:
    a2, c2 = complex(a2), complex(c2)
    num = (9 * a2**2 + c2**2) * (a2**2 + 9 * c2**2)
    return -num / (300 * a2 ** (8 / 3) * (a2**2 + c2**2) ** (2 / 3))


# --------------------------------------------------------------------------
# the two conformally flat cases


CASES = ("A", "B")
SIGNS = ("minus", "plus")
VARIANTS = ("complex", "real")
SYSTEMS = ("D", "Dtilde")


@dataclass(frozen=True)
class CaseSpec:
    case: str = "A"          # A: a2^2 + 9 c2^2 = 0, B: 9 a2^2 + c2^2 = 0
    sign: str = "minus"      # the upper/lower choice in the -+ displays
    variant: str = "complex"
    system: str = "D"        # D or its sign-reversed partner

    def __post_init__(self):
        if (self.case not in CASES or self.sign not in SIGNS or self.variant not in VARIANTS
                or self.system not in SYSTEMS):
            raise UnsupportedCase(f"unsupported case specification {self}")

    @property
    def s(self) -> int:
        """-1 for the upper sign of -+ (phase e^{-i...}), +1 for the lower."""
        return -1 if self.sign == "minus" else 1

    def params(self) -> SystemParams:
        """Equivalent general-family parameters (complex variants only, a2 = k = 1)."""
        if self.variant != "complex":
            raise UnsupportedCase("real forms are not members of the complex family")
        c2 = -self.s * 1j / 3 if self.case == "A" else -self.s * 3j
        return SystemParams(a2=1.0, c2=c2, k=1.0)


THEOREM_SPECS = {
    "c1m": CaseSpec("A", "minus", "complex", "D"),
    "r1m": CaseSpec("A", "minus", "real", "D"),
    "c2ma": CaseSpec("B", "minus", "complex", "D"),
    "c2mb": CaseSpec("B", "minus", "complex", "Dtilde"),
    "real3a": CaseSpec("B", "minus", "real", "D"),
    "real3b": CaseSpec("B", "minus", "real", "Dtilde"),
}


def _case_du_coeffs(spec: CaseSpec, r: Jet):
    """du coefficients of (omega_1, omega_3, omega_5) from the explicit displays."""
    s = spec.s
    if spec.case == "A":
        if spec.variant == "complex":
            e = jexp(r * (s * 1j / 3))
            return e * (3 / (2 * SQRT2)), e * (-s * 1j / (2 * SQRT2)), e * (-3 / (2 * SQRT2))
        c, sn = jcos(r * (1 / 3)), jsin(r * (1 / 3))
        return c * (3 / (2 * SQRT2)), sn * (1 / (2 * SQRT2)), c * (-3 / (2 * SQRT2))
    if spec.variant == "complex":
        e = jexp(r * (s * 3j))
        return e * (-1j / (2 * SQRT2)), e * (-s * 3 / (2 * SQRT2)), e * (1j / (2 * SQRT2))
    # after the Wick rotation u -> i u
    c, sn = jcos(r * 3.0), jsin(r * 3.0)
    return c * (-1 / (2 * SQRT2)), sn * (-3 / (2 * SQRT2)), c * (1 / (2 * SQRT2))


def case_forms(spec: CaseSpec, x: Jet) -> tuple[Jet, Jet, Jet]:
    """(omega rows (N,5,5), bar rows (N,3,5), sigma rows (N,3,5))."""
    sig = sigma_rows(x)
    k1, k3, k5 = _case_du_coeffs(spec, x[:, R])
    w4 = covector(x, r=1.0)
    w5 = covector(x, u=k5)
    w1 = sig[:, 0] + covector(x, u=k1)
    w2 = sig[:, 1] + w4
    w3 = sig[:, 2] + covector(x, u=k3)
    omega = jstack([w1, w2, w3, w4, w5], axis=-2)
    bar = jstack([sig[:, 0] + w5, sig[:, 1] - w4, w3], axis=-2)
    return omega, bar, sig


def case_coframe_rows(spec: CaseSpec, x: Jet) -> Jet:
    omega, bar, _ = case_forms(spec, x)
    if spec.system == "D":
        return omega
    return jstack([bar[:, 0], bar[:, 1], bar[:, 2], omega[:, 3], omega[:, 4]], axis=-2)


def case_coframe(spec: CaseSpec, p) -> np.ndarray:
    single = np.ndim(p) == 1
    out = case_coframe_rows(spec, seed(as_points(p), order=1)).val
    return out[0] if single else out


def case_constants(case: str) -> tuple[float, float]:
    """(w3 w3 coefficient, w1 w1 + w2 w2 coefficient) of the rescaled metric."""
    return (1.5, 1.5) if case == "A" else (-1 / 6, 0.5)


METRIC_FORMS = ("theorem", "gm", "polarised")


def case_metric_rows(spec: CaseSpec, x: Jet, form: str = "theorem") -> Jet:
    omega, bar, sig = case_forms(spec, x)
    own, other = (omega, bar) if spec.system == "D" else (bar, omega)
    w4, w5 = omega[:, 3], omega[:, 4]
    # mirrored completion for the sign-reversed system
    m = 1.0 if spec.system == "D" else -1.0
    alpha, beta = case_constants(spec.case)
    if form == "theorem":
        # -2(w4 w4 + w5 w5) + metric on the quotient bundles
        if spec.case == "A":
            rows = [w4, w5, other[:, 0], other[:, 1], other[:, 2], own[:, 0], own[:, 1], own[:, 2]]
            diag = [-2, -2, 0.5, 0.5, 0.5, 1, 1, 1]
        else:
            rows = [w4, w5, other[:, 0], other[:, 1], other[:, 2]]
            diag = [-2, -2, 0.5, 0.5, -1 / 6]
        return quadratic_form(jstack(rows, axis=-2), np.diag(diag))
    if form == "gm":
        rows = jstack([own[:, 0], own[:, 1], own[:, 2], w4, w5], axis=-2)
        C = _coeff_matrix(5, {(1, 5): 2 * m, (2, 4): -2 * m, (3, 3): alpha, (1, 1): beta, (2, 2): beta})
        return quadratic_form(rows, C)
    if form == "polarised":
        p1 = sig[:, 0] + w5 * m
        p2 = sig[:, 1] - w4 * m
        rows = [w4, w5, p1, p2, own[:, 2]]
        diag = [-2, -2, 0.5, 0.5, alpha]
        if spec.case == "A":
            rows += [own[:, 0], own[:, 1]]
            diag += [1, 1]
        return quadratic_form(jstack(rows, axis=-2), np.diag(diag))
    raise ValueError(f"unknown metric form {form!r}")


def case_metric(spec: CaseSpec, form: str = "theorem") -> MetricField:
    return MetricField(5, lambda x: case_metric_rows(spec, x, form), f"{spec.case}/{spec.variant}/{spec.system}/{form}")


def surface_metric(case: str) -> MetricField:
    """w4 w4 + w5 w5 for the real forms, in coordinates (r, u)."""
    if case == "A":
        amp, rate = 9 / 8, 1 / 3
    elif case == "B":
        amp, rate = 1 / 8, 3.0
    else:
        raise UnsupportedCase(f"unknown case {case!r}")

    def fn(x: Jet) -> Jet:
        c = jcos(x[:, 0] * rate)
        guu = c * c * amp
        one = guu * 0.0 + 1.0
        zero = guu * 0.0
        return jstack([jstack([one, zero]), jstack([zero, guu])], axis=-2)

    return MetricField(2, fn, f"surface {case}")


def phase_factor(rate: complex, amplitude: complex = 1.0) -> Callable[[Jet], Jet]:
    """x -> amplitude * exp(rate * r) for 5-dimensional coordinate jets."""
    return lambda x: jexp(x[:, R] * rate) * amplitude


def replace_constants(ac: AdaptedCoframe, **changes) -> AdaptedCoframe:
    return replace(ac, **changes)
