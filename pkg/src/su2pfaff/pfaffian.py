"""The SU(2)-symmetric rank-3 Pfaffian systems on S^3 x Sigma^2.

A system is fixed by constants (a1, b1, c1) and (a2, b2, c2) describing two
null vector fields of the split product metric, plus the profile f(r) of the
surface of revolution.  Everything here is pointwise linear algebra on top of
jets: structure equations are read off by decomposing d(omega_i) in the
omega-coframe wedge basis.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import InvalidParams, SingularCoframe
from .forms import d_jet, decompose_two_form
from .jet import Jet, bilinear, const_like, jexp, jstack, seed
from .linalg import DET_FLOOR, det, numerical_rank
from .manifold import R, as_points, bracket_jet, covector, frame_rows, sample_points, sigma_rows

STRUCTURE_TOL = 1e-9
RANK_TOL = 1e-7


@dataclass(frozen=True)
class SystemParams:
    a1: complex = 0.0
    b1: complex = 1.0
    c1: complex = 0.0
    a2: complex = 1.0
    b2: complex = 0.0
    c2: complex = 1.0
    k: complex = 1.0
    f: Optional[Callable[[Jet], Jet]] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("a1", "b1", "c1", "a2", "b2", "c2", "k"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.s1 == 0 or self.s2 == 0:
            raise InvalidParams("(a1, b1, c1) and (a2, b2, c2) need nonzero square-root normalisers")
        if self.k == 0:
            raise InvalidParams("k must be nonzero")
        if self.f is None and (self.a2 == 0 or self.b1 == 0):
            raise InvalidParams("the default profile needs a2 != 0 and b1 != 0")

    @property
    def s1(self) -> complex:
        return cmath.sqrt(self.a1**2 + self.b1**2 + self.c1**2)

    @property
    def s2(self) -> complex:
        return cmath.sqrt(self.a2**2 + self.b2**2 + self.c2**2)

    @property
    def sign(self) -> complex:
        """b1 / sqrt(b1^2) on the principal branch (+1 for real b1 > 0)."""
        return self.b1 / cmath.sqrt(self.b1**2)

    @property
    def rate(self) -> complex:
        """c2 / a2, the decay rate appearing throughout the structure equations."""
        return self.c2 / self.a2

    @property
    def simplified(self) -> bool:
        return self.a1 == 0 and self.c1 == 0 and self.b2 == 0

    def profile(self, r):
        """f(r) on a jet or plain array."""
        if self.f is not None:
            return self.f(r)
        return self.k * jexp(r * (-self.rate * self.sign))

    def with_(self, **changes) -> "SystemParams":
        values = {n: getattr(self, n) for n in ("a1", "b1", "c1", "a2", "b2", "c2", "k", "f")}
        values.update(changes)
        return SystemParams(**values)


# --------------------------------------------------------------------------
# coframe, distribution and product metric


def omega_rows(params: SystemParams, x: Jet) -> Jet:
    """omega_1..omega_5 as a jet of shape (N, 5, 5)."""
    sig = sigma_rows(x)
    f = params.profile(x[:, R])
    s1, s2 = params.s1, params.s2
    rows = [
        sig[:, 0] + covector(x, r=params.a1 / s1, u=f * (params.a2 / s2)),
        sig[:, 1] + covector(x, r=params.b1 / s1, u=f * (params.b2 / s2)),
        sig[:, 2] + covector(x, r=params.c1 / s1, u=f * (params.c2 / s2)),
        covector(x, r=params.b1 / s1),
        covector(x, u=f * (-params.a2 / s2)),
    ]
    return jstack(rows, axis=-2)


def omega_coframe(params: SystemParams, p) -> np.ndarray:
    single = np.ndim(p) == 1
    rows = omega_rows(params, seed(as_points(p), order=1)).val
    d = det(rows)
    if np.any(np.abs(d) < DET_FLOOR):
        raise SingularCoframe(f"omega coframe degenerate (|det| = {np.min(np.abs(d)):.3e})")
    return rows[0] if single else rows


def distribution_jets(params: SystemParams, x: Jet) -> tuple[Jet, Jet]:
    e = frame_rows(x)
    f = params.profile(x[:, R])
    X1 = e[:, 0] * params.a1 + e[:, 1] * params.b1 + e[:, 2] * params.c1 + covector(x, r=-params.s1)
    X2 = (e[:, 0] * params.a2 + e[:, 1] * params.b2 + e[:, 2] * params.c2
          + covector(x, u=f.reciprocal() * (-params.s2)))
    return X1, X2


def distribution_fields(params: SystemParams, p) -> tuple[np.ndarray, np.ndarray]:
    single = np.ndim(p) == 1
    X1, X2 = distribution_jets(params, seed(as_points(p), order=1))
    if single:
        return X1.val[0], X2.val[0]
    return X1.val, X2.val


def gsplit_jet(params: SystemParams, x: Jet) -> Jet:
    sig = sigma_rows(x)
    f = params.profile(x[:, R])
    g = bilinear("nai,naj->nij", sig, sig)
    flat = np.zeros((5, 5))
    flat[R, R] = -1.0
    g = g + const_like(np.broadcast_to(flat, g.shape), g)
    du = covector(x, u=f)
    return g - bilinear("ni,nj->nij", du, du)


def gsplit_metric(params: SystemParams, p) -> np.ndarray:
    single = np.ndim(p) == 1
    g = gsplit_jet(params, seed(as_points(p), order=1)).val
    return g[0] if single else g


# --------------------------------------------------------------------------
# structure equations


@dataclass
class StructureReport:
    passed: bool
    residuals: dict[str, float]
    H: complex
    leading: dict[str, float] = field(default_factory=dict)

    @property
    def pass_(self) -> bool:
        return self.passed


# Explicit structure equations of the simplified system, as (i, j, coeff) on
# omega_i ^ omega_j with 1-based indices and i < j.
def expected_structure(params: SystemParams) -> list[np.ndarray]:
    g = params.rate
    h = (params.a2**2 + params.c2**2) / params.a2**2
    table = [
        [(2, 3, 1), (2, 5, g), (3, 4, 1)],
        [(1, 3, -1), (1, 5, -g), (3, 5, 1)],
        [(1, 2, 1), (1, 4, -1), (2, 5, -1), (4, 5, h)],
        [],
        [(4, 5, -g)],
    ]
    out = []
    for eqn in table:
        c = np.zeros((5, 5), dtype=complex)
        for i, j, v in eqn:
            c[i - 1, j - 1] = v
            c[j - 1, i - 1] = -v
        out.append(c)
    return out


def structure_coefficients(params: SystemParams, points) -> np.ndarray:
    """c[n, i, a, b]: coefficient of omega_a ^ omega_b in d omega_i at point n."""
    x = seed(as_points(points), order=2)
    rows = omega_rows(params, x)
    frame = rows.val
    out = np.empty((frame.shape[0], 5, 5, 5), dtype=complex)
    for i in range(5):
        out[:, i] = decompose_two_form(frame, d_jet(rows[:, i]).val)
    return out


def check_structure_equations(params: SystemParams, npoints: int = 20, tol: float = STRUCTURE_TOL,
                              rng: np.random.Generator | None = None, points=None) -> StructureReport:
    """Bracket-generating test for the Pfaffian system, failures reported not raised."""
    if points is None:
        rng = rng if rng is not None else np.random.default_rng(0)
        points = sample_points(rng, npoints)
    c = structure_coefficients(params, points)
    res: dict[str, float] = {}
    lead: dict[str, float] = {}
    # mod omega_1, omega_2: only pairs among omega_3, omega_4, omega_5 survive
    res["dw1_mod_w1w2"] = float(np.max(np.abs(c[:, 0][:, [2, 3], [4, 4]])))
    res["dw2_mod_w1w2"] = float(np.max(np.abs(c[:, 1][:, [2, 3], [3, 4]])))
    lead["dw1_w3w4"] = float(np.min(np.abs(c[:, 0, 2, 3])))
    lead["dw2_w3w5"] = float(np.min(np.abs(c[:, 1, 2, 4])))
    H = c[:, 2, 3, 4]
    lead["H"] = float(np.min(np.abs(H)))
    ok = all(v < tol for v in res.values()) and all(v > tol for v in lead.values())
    if params.simplified:
        expected = expected_structure(params)
        for i in range(5):
            res[f"dw{i + 1}"] = float(np.max(np.abs(c[:, i] - expected[i])))
        res["H_constancy"] = float(np.max(np.abs(H - H[0])))
        ok = ok and all(v < tol for v in res.values())
    return StructureReport(passed=bool(ok), residuals=res, H=complex(H[0]), leading=lead)


def profile_ode_residual(params: SystemParams, points_r) -> float:
    """max |f_r + sign * (c2/a2) f| over the given r values."""
    r = np.asarray(points_r, dtype=complex).reshape(-1, 1)
    rj = seed(r, order=1)[:, 0]
    f = params.profile(rj)
    return float(np.max(np.abs(f.grad[:, 0] + params.sign * params.rate * f.val)))


# --------------------------------------------------------------------------
# growth vector


def growth_vector_jets(X1: Jet, X2: Jet, rank_tol: float = RANK_TOL) -> list[tuple[int, int, int]]:
    b12 = bracket_jet(X1, X2)
    b121 = bracket_jet(b12, X1)
    b122 = bracket_jet(b12, X2)
    out = []
    for n in range(X1.shape[0]):
        d1 = [X1.val[n], X2.val[n]]
        d2 = d1 + [b12.val[n]]
        d3 = d2 + [b121.val[n], b122.val[n]]
        out.append((numerical_rank(d1, rank_tol), numerical_rank(d2, rank_tol), numerical_rank(d3, rank_tol)))
    return out


def growth_vector_of(X1: Callable[[Jet], Jet], X2: Callable[[Jet], Jet], p, rank_tol: float = RANK_TOL):
    single = np.ndim(p) == 1
    x = seed(as_points(p), order=2)
    gv = growth_vector_jets(X1(x), X2(x), rank_tol)
    return gv[0] if single else gv


def growth_vector(params: SystemParams, p, rank_tol: float = RANK_TOL):
    """Ranks of D, [D, D] and [[D, D], D] for the distribution of ``params``."""
    return growth_vector_of(lambda x: distribution_jets(params, x)[0],
                            lambda x: distribution_jets(params, x)[1], p, rank_tol)
