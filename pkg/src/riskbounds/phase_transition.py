"""Asymptotic analysis of the Bernoulli estimation problem at scaled risk.

With the risk factor growing linearly in the sample size, the optimal
exponential moment is governed by the saddle value

    E(a) = max_q min_t max_theta [ a (t - theta)^2 - D(q || theta) ],

whose inner minimizer t = that(q) is the asymptotically optimal estimator.
E vanishes on a <= 2 (the quadratic gain cannot beat the quadratic floor
of the binary divergence) and turns positive beyond, a first phase
transition.  The moment of the plug-in estimator maps onto a fully
connected spin model: the empirical mean plays the magnetization, solving
m = tanh(J m + B) with coupling J = 2a and a field B set by the source
bias, which yields a five-phase diagram with a multicritical point at
(mu, a) = (0, 1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .core import DomainError
from .divergences import binary_entropy

__all__ = [
    "ExponentProblem",
    "CurieWeissParams",
    "Phase",
    "PhaseLabel",
    "MagnetizationRoot",
    "error_exponent",
    "asymptotic_estimator",
    "bernoulli_bayes_exponent",
    "magnetization_roots",
    "classify_phase",
    "a_zero",
]

_THETA_INSET = 1e-6    # keeps the divergence finite off the matched endpoints
_BOUNDARY_BAND = 1e-9
_REFINE_POINTS = 21    # a 10x local refinement window per level


@dataclass(frozen=True)
class ExponentProblem:
    """Risk scale a (alpha = a n) and grid resolutions for (q, t, theta)."""

    a: float
    n_q: int = 201
    n_t: int = 401
    n_theta: int = 401

    def __post_init__(self):
        if self.a < 0:
            raise DomainError("a must be nonnegative")
        if min(self.n_q, self.n_t, self.n_theta) < 101:
            raise DomainError("grid resolutions must be at least 101 points")


@dataclass(frozen=True)
class CurieWeissParams:
    """Spin-model parameters induced by source bias mu and risk scale a.

    field B = 0.5 ln((1+mu)/(1-mu)) - 2 a mu, coupling J = 2 a.
    """

    mu: float
    a: float

    def __post_init__(self):
        if not (-1.0 < self.mu < 1.0):
            raise DomainError("mu must lie strictly inside (-1, 1)")
        if self.a < 0:
            raise DomainError("a must be nonnegative")

    @property
    def field(self) -> float:
        return 0.5 * math.log((1.0 + self.mu) / (1.0 - self.mu)) - 2.0 * self.a * self.mu

    @property
    def coupling(self) -> float:
        return 2.0 * self.a


class Phase(str, Enum):
    PARAMAGNETIC = "paramagnetic"
    POSITIVE_M_LOW_A = "positive_m_low_a"
    POSITIVE_M_HIGH_A = "positive_m_high_a"
    NEGATIVE_M_LOW_A = "negative_m_low_a"
    NEGATIVE_M_HIGH_A = "negative_m_high_a"


@dataclass(frozen=True)
class PhaseLabel:
    phase: Phase
    boundary: bool
    multicritical: bool
    dominant_m: float


@dataclass(frozen=True)
class MagnetizationRoot:
    m: float
    stable: bool
    dominant: bool


def _divergence_to(q: float, thetas: np.ndarray) -> np.ndarray:
    """D(q || theta) over an array of thetas, 0 ln 0 = 0."""
    out = np.zeros_like(thetas)
    if q > 0.0:
        out += q * (math.log(q) - np.log(thetas))
    if q < 1.0:
        out += (1.0 - q) * (math.log1p(-q) - np.log1p(-thetas))
    return out


def _inner_max(a: float, q: float, t_vals: np.ndarray, thetas: np.ndarray,
               d_row: np.ndarray, refine: bool) -> np.ndarray:
    """max over theta of a (t - theta)^2 - D(q || theta), one value per t."""
    obj = a * (t_vals[:, None] - thetas[None, :]) ** 2 - d_row[None, :]
    best = obj.max(axis=1)
    if not refine:
        return best
    arg = obj.argmax(axis=1)
    lo = thetas[np.maximum(arg - 1, 0)]
    hi = thetas[np.minimum(arg + 1, thetas.size - 1)]
    w = np.linspace(0.0, 1.0, _REFINE_POINTS)
    local = lo[:, None] + (hi - lo)[:, None] * w[None, :]
    refined = (a * (t_vals[:, None] - local) ** 2 - _divergence_to(q, local)).max(axis=1)
    return np.maximum(best, refined)


def _solve_single_q(a: float, q: float, t_grid: np.ndarray, thetas: np.ndarray
                    ) -> tuple[float, float]:
    """(min over t of the inner max, minimizing t) at empirical frequency q.

    The a = 0 game is degenerate in t; it is resolved by continuity from
    a -> 0, where the minimizer collapses onto the divergence minimizer
    t = q.
    """
    if a == 0.0:
        return 0.0, q
    d_row = _divergence_to(q, thetas)
    coarse = _inner_max(a, q, t_grid, thetas, d_row, refine=False)
    k = int(coarse.argmin())
    dt = t_grid[1] - t_grid[0]
    lo = max(0.0, t_grid[k] - dt)
    hi = min(1.0, t_grid[k] + dt)
    t_fine = np.linspace(lo, hi, _REFINE_POINTS)
    fine = _inner_max(a, q, t_fine, thetas, d_row, refine=True)
    j = int(fine.argmin())  # argmin takes the first hit: smallest t on ties
    return float(fine[j]), float(t_fine[j])


@lru_cache(maxsize=16)
def _nested_solve(a: float, n_q: int, n_t: int, n_theta: int):
    """Full saddle solve: E(a), the q grid and the estimator curve on it."""
    q_grid = np.linspace(0.0, 1.0, n_q)
    t_grid = np.linspace(0.0, 1.0, n_t)
    thetas = np.linspace(_THETA_INSET, 1.0 - _THETA_INSET, n_theta)
    values = np.empty(n_q)
    t_stars = np.empty(n_q)
    for i, q in enumerate(q_grid):
        values[i], t_stars[i] = _solve_single_q(a, float(q), t_grid, thetas)
    k = int(values.argmax())
    best_val = float(values[k])
    # one local refinement pass over q around the incumbent
    dq = q_grid[1] - q_grid[0]
    lo = max(0.0, q_grid[k] - dq)
    hi = min(1.0, q_grid[k] + dq)
    for q in np.linspace(lo, hi, _REFINE_POINTS):
        v, _ = _solve_single_q(a, float(q), t_grid, thetas)
        best_val = max(best_val, v)
    return best_val, q_grid, t_stars


def error_exponent(problem: ExponentProblem) -> float:
    """Saddle value E(a); zero to grid tolerance on a <= 2, positive beyond."""
    value, _, _ = _nested_solve(problem.a, problem.n_q, problem.n_t, problem.n_theta)
    return value


def asymptotic_estimator(q: float, a: float, *, n_t: int = 401, n_theta: int = 401) -> float:
    """Minimizing t of the inner game at empirical frequency q.

    Ties break toward the smallest t.  The curve is symmetric,
    that(q) + that(1 - q) = 1 up to grid noise, and nondecreasing in q.
    """
    if not (0.0 <= q <= 1.0):
        raise DomainError("q must lie in [0, 1]")
    if a < 0:
        raise DomainError("a must be nonnegative")
    t_grid = np.linspace(0.0, 1.0, n_t)
    thetas = np.linspace(_THETA_INSET, 1.0 - _THETA_INSET, n_theta)
    _, t_star = _solve_single_q(a, q, t_grid, thetas)
    return t_star


def bernoulli_bayes_exponent(
    a: float, *, n_q: int = 201, n_t: int = 401, n_theta: int = 401
) -> tuple[float, np.ndarray, np.ndarray]:
    """E(a) together with the estimator curve on the q grid (one cached solve)."""
    if a < 0:
        raise DomainError("a must be nonnegative")
    value, q_grid, t_stars = _nested_solve(a, n_q, n_t, n_theta)
    return value, q_grid, t_stars.copy()


def _dominance_score(m: float, b: float, j: float) -> float:
    return binary_entropy((1.0 + m) / 2.0) + b * m + 0.5 * j * m * m


def magnetization_roots(params: CurieWeissParams, n_scan: int = 10_000,
                        tol: float = 1e-12) -> list[MagnetizationRoot]:
    """All fixed points of m = tanh(J m + B) on [-1, 1].

    Sign-change scan plus bisection; fixed-point iteration would skip the
    unstable middle root.  Stability is judged by the slope of the tanh
    map.  The dominant root maximizes h((1+m)/2) + B m + (J/2) m^2; on an
    exact tie (the zero-field coexistence line) the positive root wins by
    convention.
    """
    b, j = params.field, params.coupling

    def f(m: float) -> float:
        return m - math.tanh(j * m + b)

    nodes = np.linspace(-1.0, 1.0, n_scan + 1)
    fvals = nodes - np.tanh(j * nodes + b)
    roots: list[float] = []
    for i in range(n_scan):
        f0, f1 = fvals[i], fvals[i + 1]
        if f0 == 0.0:
            roots.append(float(nodes[i]))
            continue
        if f0 * f1 < 0.0:
            lo, hi = float(nodes[i]), float(nodes[i + 1])
            flo = f0
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                fmid = f(mid)
                if flo * fmid <= 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fmid
            roots.append(0.5 * (lo + hi))
    if fvals[-1] == 0.0:
        roots.append(1.0)

    deduped: list[float] = []
    for r in sorted(roots):
        if not deduped or abs(r - deduped[-1]) > 10.0 * tol:
            deduped.append(r)
    scores = np.array([_dominance_score(m, b, j) for m in deduped])
    near_top = scores >= scores.max() - 1e-13
    candidates = [m for m, top in zip(deduped, near_top) if top]
    dominant_m = max(candidates)
    out = []
    for m in deduped:
        slope = j / math.cosh(j * m + b) ** 2
        out.append(MagnetizationRoot(m=m, stable=abs(slope) < 1.0, dominant=(m == dominant_m)))
    return out


def a_zero(mu: float) -> float:
    """Field-reversal curve (1 / 4 mu) ln((1+mu)/(1-mu)); 1/2 in the mu -> 0 limit."""
    if not (-1.0 < mu < 1.0):
        raise DomainError("mu must lie strictly inside (-1, 1)")
    if abs(mu) < 1e-12:
        return 0.5
    return math.log((1.0 + mu) / (1.0 - mu)) / (4.0 * mu)


def classify_phase(mu: float, a: float) -> PhaseLabel:
    """Label a (mu, a) point by the sign rules of the dominant magnetization.

    Below a = 1/2 the map has a single root and the phase is paramagnetic.
    Above it, mu > 0 keeps the dominant root positive until a crosses
    a_zero(mu) where the field flips sign; mirror rules hold for mu < 0.
    Points within 1e-9 of a = 1/2, of the field-reversal curve, or of the
    coexistence line mu = 0 (with a >= 1/2) carry a boundary flag; the
    meeting point of all five regions (0, 1/2) is flagged multicritical.
    """
    params = CurieWeissParams(mu, a)
    roots = magnetization_roots(params)
    dominant_m = next(r.m for r in roots if r.dominant)

    near_half = abs(a - 0.5) <= _BOUNDARY_BAND
    near_axis = abs(mu) <= _BOUNDARY_BAND
    az = a_zero(mu)
    near_flip = a > 0.5 and abs(a - az) <= _BOUNDARY_BAND
    multicritical = near_half and near_axis
    boundary = near_half or near_flip or (near_axis and a >= 0.5)

    if a < 0.5:
        phase = Phase.PARAMAGNETIC
    elif mu > 0:
        phase = Phase.POSITIVE_M_LOW_A if a < az else Phase.NEGATIVE_M_HIGH_A
    elif mu < 0:
        phase = Phase.NEGATIVE_M_LOW_A if a < az else Phase.POSITIVE_M_HIGH_A
    else:
        phase = Phase.POSITIVE_M_HIGH_A if a > 0.5 else Phase.PARAMAGNETIC
    return PhaseLabel(phase=phase, boundary=boundary, multicritical=multicritical,
                      dominant_m=dominant_m)
