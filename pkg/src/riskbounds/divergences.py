"""Closed-form information measures shared by every bound family.

Covers the binary divergence and entropy, the KL divergence between
zero-mean Gaussian priors, the path divergence between two signals in
white noise, the Gaussian quadratic-exponential moment, the Renyi
divergence between a nonlinear signal model and a linear-Gaussian
reference, and power-tilted priors with their normalizer, log-normalizer
derivative and Fisher information.

All returns are extended reals: a legitimately divergent quantity comes
back as ``+inf`` rather than raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import logsumexp

from .core import DomainError, GridDensity, GridError, Waveform

__all__ = [
    "GaussianPriorPair",
    "QuadMgfCoeffs",
    "RenyiOrder",
    "TiltedPrior",
    "binary_divergence",
    "binary_entropy",
    "gaussian_kl",
    "path_divergence",
    "gaussian_quad_mgf",
    "renyi_gaussian_linear",
    "renyi_gaussian_pair",
    "tilt_prior",
]

_PHI_STEP = 1e-5          # relative step for the centered difference on beta
_NORM_TOL = 1e-6          # quadrature tolerance for density normalization

# A tilt escapes the grid window when the base density decays at the edge
# (the grid is a window onto a wider support) but the tilted density does
# not; such tilts are rejected rather than silently truncated.
_EDGE_DECAY = 1e-3
_EDGE_ESCAPE = 1e-3


@dataclass(frozen=True)
class GaussianPriorPair:
    """Variances of two zero-mean Gaussian priors, true (p) and reference (q)."""

    sigma2_p: float
    sigma2_q: float

    def __post_init__(self):
        if self.sigma2_p <= 0 or self.sigma2_q <= 0:
            raise DomainError("prior variances must be strictly positive")


@dataclass(frozen=True)
class QuadMgfCoeffs:
    """Coefficients of E exp{A Theta^2 - B Theta} under Theta ~ N(0, sigma2)."""

    a_coef: float
    b_coef: float
    sigma2: float

    def __post_init__(self):
        if self.sigma2 <= 0:
            raise DomainError("sigma2 must be positive")

    @property
    def diverges(self) -> bool:
        return 1.0 - 2.0 * self.a_coef * self.sigma2 <= 0.0


@dataclass(frozen=True)
class RenyiOrder:
    """Renyi order a, strictly above 1."""

    a: float

    def __post_init__(self):
        if not (self.a > 1.0):
            raise DomainError("Renyi order must satisfy a > 1")


@dataclass(frozen=True)
class TiltedPrior:
    """A base prior raised to power beta and renormalized.

    Exposes the normalizer Z(beta), phi = ln Z, its derivative phi' and
    the Fisher information of the tilted density, all computed on the
    base grid.  kl_to_base() gives D(tilted || base) in closed form
    (beta - 1) phi'(beta) - phi(beta).
    """

    base: GridDensity
    beta: float
    z_beta: float
    phi: float
    phi_prime: float
    fisher_info: float
    q_density: GridDensity = field(repr=False)

    def kl_to_base(self) -> float:
        return (self.beta - 1.0) * self.phi_prime - self.phi


def binary_divergence(q: float, theta: float) -> float:
    """D(q || theta) = q ln(q/theta) + (1-q) ln((1-q)/(1-theta)) in nats.

    Uses the 0 ln 0 = 0 convention.  theta at an endpoint with a
    mismatched q gives +inf, never an exception.
    """
    if not (0.0 <= q <= 1.0):
        raise DomainError("q must lie in [0, 1]")
    if not (0.0 <= theta <= 1.0):
        raise DomainError("theta must lie in [0, 1]")
    total = 0.0
    if q > 0.0:
        if theta == 0.0:
            return math.inf
        total += q * math.log(q / theta)
    if q < 1.0:
        if theta == 1.0:
            return math.inf
        total += (1.0 - q) * math.log((1.0 - q) / (1.0 - theta))
    return total


def binary_entropy(u: float) -> float:
    """h(u) = -u ln u - (1-u) ln(1-u), zero at the endpoints."""
    if not (0.0 <= u <= 1.0):
        raise DomainError("u must lie in [0, 1]")
    total = 0.0
    if u > 0.0:
        total -= u * math.log(u)
    if u < 1.0:
        total -= (1.0 - u) * math.log(1.0 - u)
    return total


def gaussian_kl(pair: GaussianPriorPair) -> float:
    """KL divergence D[N(0, sigma2_q) || N(0, sigma2_p)] in nats."""
    r = pair.sigma2_q / pair.sigma2_p
    return 0.5 * (r - math.log(r) - 1.0)


def path_divergence(x1: Waveform, x2: Waveform, n0: float) -> float:
    """Divergence between the laws of two signals in white noise of density n0/2.

    Equals the squared L2 distance of the signals divided by n0, by
    trapezoid quadrature on their shared grid.
    """
    if n0 <= 0:
        raise DomainError("n0 must be positive")
    if not x1.same_grid(x2):
        raise GridError("waveforms must share a time grid")
    diff = x1.values - x2.values
    return float(np.trapezoid(diff * diff, x1.t)) / n0


def gaussian_quad_mgf(c: QuadMgfCoeffs) -> float:
    """E exp{A Theta^2 - B Theta} for Theta ~ N(0, sigma2).

    Closed form exp{B^2 sigma2 / (2 (1 - 2 A sigma2))} / sqrt(1 - 2 A sigma2)
    when 1 - 2 A sigma2 > 0, +inf otherwise.
    """
    denom = 1.0 - 2.0 * c.a_coef * c.sigma2
    if denom <= 0.0:
        return math.inf
    return math.exp(c.b_coef ** 2 * c.sigma2 / (2.0 * denom)) / math.sqrt(denom)


def _order(order: RenyiOrder | float) -> float:
    if isinstance(order, RenyiOrder):
        return order.a
    a = float(order)
    if not (a > 1.0):
        raise DomainError("Renyi order must satisfy a > 1")
    return a


def renyi_gaussian_linear(
    order: RenyiOrder | float,
    *,
    sigma2: float,
    sigma2_q: float,
    es: float,
    ex: float,
    n0: float,
    q_const: float = 0.0,
    t_horizon: float = 1.0,
) -> float:
    """a * D_a(Q || P) between a constant-energy signal model and a linear reference.

    P is the true joint law: Theta ~ N(0, sigma2), signal of energy ex whose
    time integral is q_const for every theta.  Q is the reference: Theta ~
    N(0, sigma2_q), signal theta * s(t) with a DC s of energy es on [0, T].
    Returns +inf when the underlying Gaussian moment diverges.
    """
    a = _order(order)
    if sigma2 <= 0 or sigma2_q <= 0 or n0 <= 0 or es < 0 or ex < 0 or t_horizon <= 0:
        raise DomainError("model parameters out of range")
    a_coef = a / (2.0 * sigma2) - a / (2.0 * sigma2_q) + a * (a - 1.0) * es / n0
    b_coef = 2.0 * a * (a - 1.0) * q_const * math.sqrt(es / t_horizon) / n0
    mgf = gaussian_quad_mgf(QuadMgfCoeffs(a_coef, b_coef, sigma2))
    if math.isinf(mgf):
        return math.inf
    log_integral = 0.5 * a * math.log(sigma2 / sigma2_q) + a * (a - 1.0) * ex / n0 + math.log(mgf)
    return log_integral / (a - 1.0)


def renyi_gaussian_pair(
    order: RenyiOrder | float,
    *,
    sigma2_from: float,
    sigma2_to: float,
    delta_es: float,
    n0: float,
) -> float:
    """a * D_a between two linear-Gaussian models (prior variances, signal gap).

    Both models observe theta * s_i(t) in the same noise; delta_es is the
    energy of s_to - s_from.  The 'from' model plays the base-measure role.
    """
    a = _order(order)
    if sigma2_from <= 0 or sigma2_to <= 0 or n0 <= 0 or delta_es < 0:
        raise DomainError("model parameters out of range")
    a_coef = a / (2.0 * sigma2_from) - a / (2.0 * sigma2_to) + a * (a - 1.0) * delta_es / n0
    denom = 1.0 - 2.0 * a_coef * sigma2_from
    if denom <= 0.0:
        return math.inf
    return (0.5 * a * math.log(sigma2_from / sigma2_to) - 0.5 * math.log(denom)) / (a - 1.0)


def _log_z(base: GridDensity, beta: float) -> float:
    """ln integral of base^beta by trapezoid weights, in log space."""
    p = base.density
    th = base.theta
    w = np.empty_like(th)
    w[1:-1] = 0.5 * (th[2:] - th[:-2])
    w[0] = 0.5 * (th[1] - th[0])
    w[-1] = 0.5 * (th[-1] - th[-2])
    mask = p > 0.0
    if not np.any(mask):
        raise DomainError("density is identically zero")
    logp = np.log(p[mask])
    return float(logsumexp(beta * logp, b=w[mask]))


def tilt_prior(
    base: GridDensity,
    beta: float,
    phi_prime: Callable[[float], float] | None = None,
    norm_tol: float = _NORM_TOL,
) -> TiltedPrior:
    """Raise a normalized grid prior to power beta and renormalize.

    phi'(beta) defaults to a centered finite difference of ln Z with step
    1e-5 * max(1, beta); pass an analytic derivative to override.  The
    Fisher information of the tilted density uses second-order differences
    on the theta grid, one-sided at the support endpoints.  A density that
    vanishes at an interior grid point is rejected: the information
    integral is not trustworthy there.  A tilt that flattens a density
    which decays at the grid edges is also rejected, because the grid
    then truncates the tilted tails; callers needing smaller beta must
    supply a wider grid.
    """
    if beta <= 0:
        raise DomainError("tilt exponent beta must be positive")
    base.check_normalized(norm_tol)
    log_z = _log_z(base, beta)
    if not math.isfinite(log_z):
        raise DomainError("tilted density is not integrable on this grid")
    z = math.exp(log_z)
    if phi_prime is not None:
        dphi = float(phi_prime(beta))
    else:
        h = _PHI_STEP * max(1.0, beta)
        if beta - h <= 0:
            h = 0.5 * beta
        dphi = (_log_z(base, beta + h) - _log_z(base, beta - h)) / (2.0 * h)

    p = base.density
    interior_zero = np.any(p[1:-1] <= 0.0) and np.any(p > 0.0)
    if interior_zero and p[0] == 0.0 and p[-1] == 0.0:
        # trim exact zero padding at the edges before declaring a hole
        nz = np.nonzero(p > 0.0)[0]
        core = p[nz[0]: nz[-1] + 1]
        interior_zero = bool(np.any(core <= 0.0))
    if interior_zero:
        raise DomainError("density vanishes at an interior grid point")

    with np.errstate(divide="ignore"):
        q = np.where(p > 0.0, np.exp(beta * np.log(np.where(p > 0.0, p, 1.0)) - log_z), 0.0)
    nz = np.nonzero(p > 0.0)[0]
    base_edge = max(p[nz[0]], p[nz[-1]]) / np.max(p)
    tilt_edge = max(q[nz[0]], q[nz[-1]]) / np.max(q)
    if base_edge < _EDGE_DECAY and tilt_edge > _EDGE_ESCAPE:
        raise DomainError(
            f"tilted density escapes the grid window (edge ratio {tilt_edge:.3g}); "
            "supply a wider grid for this beta"
        )
    q_density = GridDensity(base.theta, q)
    dq = np.gradient(q, base.theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        integrand = np.where(q > 0.0, dq * dq / np.where(q > 0.0, q, 1.0), 0.0)
    fisher = float(np.trapezoid(integrand, base.theta))

    tilted = TiltedPrior(
        base=base,
        beta=float(beta),
        z_beta=z,
        phi=log_z,
        phi_prime=dphi,
        fisher_info=fisher,
        q_density=q_density,
    )
    q_density.check_normalized(10.0 * norm_tol)
    return tilted
