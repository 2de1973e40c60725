"""Shared value types, grid containers and scalar optimizers.

Everything here is deliberately small: extended reals (``+inf`` for a
divergent bound, ``-inf`` for a useless one) are ordinary floats, grid
functions are plain numpy arrays wrapped with their abscissae, and the
optimizers are a bracketing golden-section search plus a tiny coordinate
descent built on top of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# BoundValue.status values
STATUS_OK = "ok"
STATUS_DIVERGENT = "divergent"        # value is +inf: no estimator can stay finite
STATUS_USELESS = "useless"            # value is -inf: the divergence term blew up
STATUS_OUT_OF_WINDOW = "out_of_window"  # inputs outside the bound's applicability window


class RiskBoundsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RiskBoundsError):
    """An argument lies outside the mathematical domain of an operation."""


class GridError(DomainError):
    """Grid functions that should share an abscissa do not."""


class ConditioningError(RiskBoundsError):
    """A linear system is too ill conditioned to trust."""


class DegenerateSignalError(RiskBoundsError):
    """A reference-signal optimization collapsed to the zero signal."""


class DivergenceRiskError(RiskBoundsError):
    """A Monte Carlo run was refused because its moment may not exist."""


class ResolutionError(RiskBoundsError):
    """A grid supremum failed to stabilize under refinement."""


@dataclass(frozen=True)
class BoundValue:
    """Outcome of a lower-bound evaluation.

    value is in nats and may be ``+inf`` (the bound certifies divergence)
    or ``-inf`` (the bound is vacuous).  ``argmax`` records the free
    parameters that produced ``value``; for +inf it holds the witnessing
    parameters.  ``diagnostics`` carries optimizer traces and flags.
    """

    value: float
    argmax: dict = field(default_factory=dict)
    status: str = STATUS_OK
    diagnostics: dict = field(default_factory=dict)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)


@dataclass(frozen=True)
class Waveform:
    """A real signal sampled on a strictly increasing time grid."""

    t: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or v.ndim != 1 or t.size != v.size:
            raise GridError("waveform needs matching 1-D time and value arrays")
        if t.size < 2:
            raise GridError("waveform needs at least two samples")
        if np.any(np.diff(t) <= 0):
            raise GridError("time grid must be strictly increasing")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "values", v)

    @property
    def duration(self) -> float:
        return float(self.t[-1] - self.t[0])

    def energy(self) -> float:
        return float(np.trapezoid(self.values ** 2, self.t))

    def same_grid(self, other: "Waveform", rtol: float = 1e-12) -> bool:
        return self.t.size == other.t.size and np.allclose(self.t, other.t, rtol=rtol, atol=0.0)


@dataclass(frozen=True)
class GridDensity:
    """A probability density sampled on a uniform-enough 1-D grid."""

    theta: np.ndarray
    density: np.ndarray

    def __post_init__(self):
        th = np.asarray(self.theta, dtype=float)
        p = np.asarray(self.density, dtype=float)
        if th.ndim != 1 or p.ndim != 1 or th.size != p.size:
            raise GridError("density needs matching 1-D grids")
        if th.size < 8:
            raise GridError("density grid too coarse")
        if np.any(np.diff(th) <= 0):
            raise GridError("theta grid must be strictly increasing")
        if np.any(p < 0):
            raise DomainError("density must be nonnegative")
        object.__setattr__(self, "theta", th)
        object.__setattr__(self, "density", p)

    def integral(self) -> float:
        return float(np.trapezoid(self.density, self.theta))

    def check_normalized(self, tol: float = 1e-6) -> None:
        z = self.integral()
        if abs(z - 1.0) > tol:
            raise DomainError(f"density integrates to {z:.6g}, not 1 within {tol:g}")

    def normalized(self) -> "GridDensity":
        return GridDensity(self.theta, self.density / self.integral())

    def mean(self) -> float:
        return float(np.trapezoid(self.theta * self.density, self.theta))

    def variance(self) -> float:
        m = self.mean()
        return float(np.trapezoid((self.theta - m) ** 2 * self.density, self.theta))


def gaussian_density(theta: np.ndarray, variance: float, mean: float = 0.0) -> GridDensity:
    """Gaussian pdf sampled on ``theta``; not renormalized to the grid."""
    if variance <= 0:
        raise DomainError("variance must be positive")
    th = np.asarray(theta, dtype=float)
    p = np.exp(-((th - mean) ** 2) / (2.0 * variance)) / math.sqrt(2.0 * math.pi * variance)
    return GridDensity(th, p)


def uniform_density(lo: float, hi: float, n: int = 4097) -> GridDensity:
    if hi <= lo:
        raise DomainError("empty support interval")
    th = np.linspace(lo, hi, n)
    return GridDensity(th, np.full(n, 1.0 / (hi - lo)))


def golden_section_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Maximize a unimodal scalar function on [lo, hi].

    Returns (argmax, value).  -inf function values are handled (they lose
    every comparison), so brackets may touch infeasible regions.
    """
    a, b = float(lo), float(hi)
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while abs(b - a) > tol * (1.0 + abs(a) + abs(b)) and it < max_iter:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
        it += 1
    x = c if fc > fd else d
    return x, f(x)


def maximize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    log_spaced: bool = False,
    coarse: int = 64,
    tol: float = 1e-10,
) -> tuple[float, float, int]:
    """Coarse grid sweep followed by golden-section polish.

    The coarse sweep guards against non-unimodal profiles; the polish runs
    on the bracket around the best coarse point.  Returns
    (argmax, value, n_evaluations).
    """
    if not (hi > lo):
        raise DomainError("empty bracket")
    if log_spaced:
        if lo <= 0:
            raise DomainError("log-spaced bracket needs lo > 0")
        grid = np.exp(np.linspace(math.log(lo), math.log(hi), coarse))
    else:
        grid = np.linspace(lo, hi, coarse)
    vals = np.array([f(x) for x in grid])
    n_eval = coarse
    k = int(np.nanargmax(vals))
    if math.isinf(vals[k]) and vals[k] > 0:
        return float(grid[k]), float(vals[k]), n_eval
    blo = grid[max(k - 1, 0)]
    bhi = grid[min(k + 1, coarse - 1)]
    if blo == bhi:
        return float(grid[k]), float(vals[k]), n_eval
    x, fx = golden_section_max(f, blo, bhi, tol=tol)
    n_eval += 90
    if fx < vals[k]:
        x, fx = float(grid[k]), float(vals[k])
    return x, fx, n_eval


def coordinate_descent_max(
    f: Callable[[float, float], float],
    bounds_x: tuple[float, float],
    bounds_y: tuple[float, float],
    *,
    log_x: bool = False,
    log_y: bool = False,
    restarts: int = 3,
    sweeps: int = 12,
    tol: float = 1e-9,
    seed: int = 0,
) -> tuple[float, float, float]:
    """Maximize f(x, y) by alternating 1-D golden-section passes.

    Runs ``restarts`` independent starts (first from the bracket centers,
    the rest random) and keeps the best.  Returns (x, y, value).
    """
    rng = np.random.default_rng(seed)
    best = (math.nan, math.nan, -math.inf)

    def _start(i: int) -> tuple[float, float]:
        if i == 0:
            return (0.5 * (bounds_x[0] + bounds_x[1]), 0.5 * (bounds_y[0] + bounds_y[1]))
        return (
            bounds_x[0] + rng.random() * (bounds_x[1] - bounds_x[0]),
            bounds_y[0] + rng.random() * (bounds_y[1] - bounds_y[0]),
        )

    for i in range(max(1, restarts)):
        x, y = _start(i)
        val = f(x, y)
        for _ in range(sweeps):
            x, _, _ = maximize_scalar(lambda u: f(u, y), *bounds_x, log_spaced=log_x, coarse=33, tol=tol)
            y, new_val, _ = maximize_scalar(lambda v: f(x, v), *bounds_y, log_spaced=log_y, coarse=33, tol=tol)
            if new_val <= val + tol * (1.0 + abs(val)):
                val = max(val, new_val)
                break
            val = new_val
        if val > best[2]:
            best = (x, y, val)
    return best


def divergence_onset(
    is_divergent: Callable[[float], bool],
    lo: float,
    hi_start: float,
    *,
    tol: float = 1e-4,
    hi_cap: float = 1e9,
) -> float:
    """Smallest alpha at which ``is_divergent`` flips, found by bisection.

    Expands the upper probe geometrically first; returns +inf when no
    divergence is found below ``hi_cap``.
    """
    hi = hi_start
    while not is_divergent(hi):
        hi *= 2.0
        if hi > hi_cap:
            return math.inf
    lo = float(lo)
    if is_divergent(lo):
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if is_divergent(mid):
            hi = mid
        else:
            lo = mid
    return hi
