"""Lower bounds for unbiased estimators of a deterministic parameter.

The scalar and vector linear models in white noise admit closed forms
built from the information-based MSE floor shifted by a reference
parameter value: the bound is finite up to a critical risk factor (es/n0
for the scalar model, an ellipsoid contour for the vector one) and
infinite beyond it, a threshold the maximum-likelihood estimator attains.
Nonlinear constant-energy signals are handled through the normalized
signal correlation rho(theta, theta_tilde); on unbounded parameter ranges
the shifted-reference supremum diverges for every positive risk factor.
Unbiasedness is an assumption recorded in the output, not a checkable
property of a bound query.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    STATUS_DIVERGENT,
    STATUS_OK,
    BoundValue,
    ConditioningError,
    DomainError,
    ResolutionError,
)

__all__ = [
    "VectorLinearModel",
    "CorrelationProfile",
    "scalar_linear_bound",
    "scalar_ml_lambda",
    "vector_linear_bound",
    "vector_ml_lambda",
    "critical_radius",
    "nonlinear_bound",
]

_COND_CAP = 1e12
_DIVERGENCE_DECLARE = 1e6  # nats; a probe-doubling supremum past this is +inf

_META = {"assumes_unbiased": True}


@dataclass(frozen=True)
class VectorLinearModel:
    """k orthonormal-energy signals with correlation matrix gamma."""

    gamma: np.ndarray
    es: float
    n0: float

    def __post_init__(self):
        g = np.asarray(self.gamma, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise DomainError("gamma must be square")
        if not np.allclose(g, g.T, atol=1e-12):
            raise DomainError("gamma must be symmetric")
        if not np.allclose(np.diag(g), 1.0, atol=1e-9):
            raise DomainError("gamma must have unit diagonal")
        if self.es <= 0 or self.n0 <= 0:
            raise DomainError("need es > 0 and n0 > 0")
        eigvals = np.linalg.eigvalsh(g)
        if eigvals[0] <= 0:
            raise DomainError("gamma must be positive definite")
        if eigvals[-1] / eigvals[0] > _COND_CAP:
            raise ConditioningError(
                "gamma condition number exceeds 1e12; signals are near collinear"
            )
        object.__setattr__(self, "gamma", g)

    @property
    def k(self) -> int:
        return self.gamma.shape[0]

    def gamma_inv(self) -> np.ndarray:
        return np.linalg.inv(self.gamma)


@dataclass(frozen=True)
class CorrelationProfile:
    """Normalized correlation rho(theta, theta_tilde) of a signal family.

    Supply either a square grid sample (bounded parameter range) or a
    callable; an unbounded range requires the callable form.  rho must be
    1 on the diagonal and bounded by 1 in magnitude.
    """

    ex: float
    theta_range: tuple[float, float]
    theta_grid: np.ndarray | None = None
    rho_values: np.ndarray | None = None
    rho_fn: Callable[[float, float], float] | None = None
    unbounded: bool = False

    def __post_init__(self):
        if self.ex <= 0:
            raise DomainError("ex must be positive")
        if self.unbounded:
            if self.rho_fn is None:
                raise DomainError("unbounded profiles need a callable rho")
            return
        if self.rho_fn is not None:
            return
        if self.theta_grid is None or self.rho_values is None:
            raise DomainError("bounded profiles need a grid sample or a callable")
        th = np.asarray(self.theta_grid, dtype=float)
        r = np.asarray(self.rho_values, dtype=float)
        if r.shape != (th.size, th.size):
            raise DomainError("rho_values must be square on theta_grid")
        if np.max(np.abs(r)) > 1.0 + 1e-9:
            raise DomainError("|rho| must not exceed 1")
        if not np.allclose(np.diag(r), 1.0, atol=1e-9):
            raise DomainError("rho must be 1 on the diagonal")
        object.__setattr__(self, "theta_grid", th)
        object.__setattr__(self, "rho_values", r)

    def rho(self, theta: float, theta_tilde: float) -> float:
        if self.rho_fn is not None:
            return float(self.rho_fn(theta, theta_tilde))
        i = int(np.argmin(np.abs(self.theta_grid - theta)))
        j = int(np.argmin(np.abs(self.theta_grid - theta_tilde)))
        return float(self.rho_values[i, j])


def scalar_linear_bound(alpha: float, es: float, n0: float) -> BoundValue:
    """Bound alpha n0 / (2 es) while alpha <= es/n0, +inf above.

    The critical factor es/n0 is exact: the ML estimator attains it.
    """
    if alpha <= 0 or es <= 0 or n0 <= 0:
        raise DomainError("alpha, es, n0 must be positive")
    alpha_c = es / n0
    if alpha > alpha_c:
        return BoundValue(math.inf, {"alpha_c": alpha_c}, STATUS_DIVERGENT, dict(_META))
    return BoundValue(alpha * n0 / (2.0 * es), {"alpha_c": alpha_c}, STATUS_OK, dict(_META))


def scalar_ml_lambda(alpha: float, es: float, n0: float) -> float:
    """Exact exponential moment of the ML error, -0.5 ln(1 - alpha n0 / es)."""
    if alpha <= 0 or es <= 0 or n0 <= 0:
        raise DomainError("alpha, es, n0 must be positive")
    ratio = alpha * n0 / es
    if ratio >= 1.0:
        return math.inf
    return -0.5 * math.log1p(-ratio)


def vector_linear_bound(model: VectorLinearModel, alpha_vec: np.ndarray) -> BoundValue:
    """Directional bound n0 a' inv(gamma) a / (2 es) inside the critical ellipsoid.

    Finite strictly inside a' inv(gamma) a < es/n0; +inf on the contour
    and outside, which is where no estimator's tail can keep up.
    """
    a = np.asarray(alpha_vec, dtype=float)
    if a.shape != (model.k,):
        raise DomainError("alpha_vec dimension mismatch")
    quad = float(a @ model.gamma_inv() @ a)
    threshold = model.es / model.n0
    diag = dict(_META, quad_form=quad, threshold=threshold)
    if quad >= threshold and quad > 0.0:
        return BoundValue(math.inf, {}, STATUS_DIVERGENT, diag)
    return BoundValue(model.n0 * quad / (2.0 * model.es), {}, STATUS_OK, diag)


def vector_ml_lambda(model: VectorLinearModel, alpha_vec: np.ndarray) -> float:
    """Exact ML exponential moment -0.5 ln(1 - (n0/es) a' inv(gamma) a).

    The determinant form -0.5 ln|I - (n0/es) a a' inv(gamma)| collapses to
    the scalar form by the rank-one determinant identity.
    """
    a = np.asarray(alpha_vec, dtype=float)
    if a.shape != (model.k,):
        raise DomainError("alpha_vec dimension mismatch")
    ratio = model.n0 / model.es * float(a @ model.gamma_inv() @ a)
    if ratio >= 1.0:
        return math.inf
    return -0.5 * math.log1p(-ratio)


def critical_radius(model: VectorLinearModel, direction: np.ndarray) -> float:
    """Scale t at which t * u hits the critical ellipsoid contour."""
    u = np.asarray(direction, dtype=float)
    if u.shape != (model.k,):
        raise DomainError("direction dimension mismatch")
    quad = float(u @ model.gamma_inv() @ u)
    if quad <= 0:
        raise DomainError("direction must be nonzero")
    return math.sqrt(model.es / (model.n0 * quad))


def _nonlinear_objective(
    profile: CorrelationProfile,
    alpha: float,
    theta: float,
    l_nb: Callable[[float], float],
    n0: float,
) -> Callable[[float], float]:
    def f(tt: float) -> float:
        return (
            alpha * l_nb(tt)
            + alpha * (theta - tt) ** 2
            - 2.0 * profile.ex * (1.0 - profile.rho(theta, tt)) / n0
        )

    return f


def nonlinear_bound(
    profile: CorrelationProfile,
    alpha: float,
    theta: float,
    l_nb: Callable[[float], float] | float,
    n0: float,
) -> BoundValue:
    """Shifted-reference bound for a constant-energy nonlinear signal.

    Takes the supremum over reference values theta_tilde of

        alpha L(theta_tilde) + alpha (theta - theta_tilde)^2
        - 2 ex (1 - rho(theta, theta_tilde)) / n0.

    Bounded ranges use a grid supremum with local refinement until the
    value stabilizes within 1e-4; unbounded ranges use probe doubling,
    declaring +inf past 1e6 nats (the correlation term is bounded, so the
    quadratic shift wins for any positive alpha).
    """
    if alpha <= 0 or n0 <= 0:
        raise DomainError("alpha and n0 must be positive")
    l_fn = (lambda _t: float(l_nb)) if np.isscalar(l_nb) else l_nb
    f = _nonlinear_objective(profile, alpha, theta, l_fn, n0)

    if profile.unbounded:
        delta = 1.0
        value = f(theta)
        for _ in range(80):
            value = max(value, f(theta + delta), f(theta - delta))
            if value > _DIVERGENCE_DECLARE:
                return BoundValue(
                    math.inf,
                    {"theta_tilde": theta + delta},
                    STATUS_DIVERGENT,
                    dict(_META, probe_delta=delta),
                )
            delta *= 2.0
        return BoundValue(value, {"theta_tilde": theta}, STATUS_OK, dict(_META))

    lo, hi = profile.theta_range
    if profile.theta_grid is not None:
        grid = profile.theta_grid
    else:
        grid = np.linspace(lo, hi, 2001)
    vals = np.array([f(tt) for tt in grid])
    k = int(np.argmax(vals))
    best = float(vals[k])
    width = (grid[min(k + 1, grid.size - 1)] - grid[max(k - 1, 0)]) or (hi - lo) / grid.size
    center = float(grid[k])
    # only meaningful off-grid refinement is available with a callable rho
    if profile.rho_fn is not None:
        prev = best
        for _ in range(40):
            local = np.linspace(max(lo, center - width), min(hi, center + width), 41)
            lv = np.array([f(tt) for tt in local])
            j = int(np.argmax(lv))
            center, best = float(local[j]), max(best, float(lv[j]))
            width /= 5.0
            if abs(best - prev) <= 1e-4 * max(1.0, abs(best)):
                break
            prev = best
        else:
            raise ResolutionError("supremum failed to stabilize under refinement")
    return BoundValue(best, {"theta_tilde": center}, STATUS_OK, dict(_META))
