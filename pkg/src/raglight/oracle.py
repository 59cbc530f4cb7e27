"""Brute-force verifiers for the closed forms used elsewhere.

Each oracle deliberately avoids the implementation it checks: the grid
minimizer never calls the closed-form cutoff, the quadrature CDF never
calls erfc, the trapezoid AUC never evaluates Phi(d/sqrt(2)), and the
Monte Carlo surprise estimate never touches the mixture algebra. Tests
freeze values produced here as expected constants for the fast paths.

Everything is pure given (inputs, seed). The Monte Carlo generator is
PCG64 behind numpy's default_rng, seeded explicitly, so estimates are
bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import ndtr

from .errors import ValidationError, require_finite

_MAX_GRID_POINTS = 10**8
_MC_CHUNK = 4_000_000
_QUAD_LIMIT = 40.0


@dataclass(frozen=True)
class GridSpec:
    """A closed uniform cutoff grid [lo, hi] with the given step."""

    lo: float
    hi: float
    step: float

    def __post_init__(self):
        object.__setattr__(self, "lo", require_finite("lo", self.lo))
        object.__setattr__(self, "hi", require_finite("hi", self.hi))
        object.__setattr__(self, "step", require_finite("step", self.step))
        if self.step <= 0.0:
            raise ValidationError(f"step must be positive, got {self.step}")
        if self.lo >= self.hi:
            raise ValidationError(
                f"grid needs lo < hi, got lo={self.lo}, hi={self.hi}"
            )
        if (self.hi - self.lo) / self.step > _MAX_GRID_POINTS:
            raise ValidationError(
                f"grid of {(self.hi - self.lo) / self.step:.3g} points exceeds "
                f"the {_MAX_GRID_POINTS:.0e} cap"
            )

    def cutoffs(self) -> np.ndarray:
        n = int(math.floor((self.hi - self.lo) / self.step + 1e-9))
        return self.lo + self.step * np.arange(n + 1)


def default_grid(model, step_factor: float = 1e-4) -> GridSpec:
    """The conventional oracle grid: span [theta0-6s, theta1+6s], step
    step_factor*sigma. Six standard deviations past each mean leaves
    under 1e-9 of either tail outside the grid."""
    return GridSpec(
        lo=model.theta0 - 6.0 * model.sigma,
        hi=model.theta1 + 6.0 * model.sigma,
        step=step_factor * model.sigma,
    )


def grid_min_expected_cost(scenario, grid: GridSpec) -> tuple[float, float]:
    """Exhaustively minimize expected cost over a cutoff grid.

    Returns (cutoff, cost) at the minimizing grid point, ties resolved to
    the smallest cutoff. The grid must span at least six standard
    deviations beyond both means. Duck-typed on scenario attributes so
    degenerate cost shapes can be priced.
    """
    model = scenario.model
    costs = scenario.costs
    rates = scenario.rates
    if grid.lo > model.theta0 - 6.0 * model.sigma or (
        grid.hi < model.theta1 + 6.0 * model.sigma
    ):
        raise ValidationError(
            f"grid [{grid.lo}, {grid.hi}] must span "
            f"[{model.theta0 - 6.0 * model.sigma}, "
            f"{model.theta1 + 6.0 * model.sigma}]"
        )
    x = grid.cutoffs()
    # ndtr(-z) is the upper tail; scipy's CDF keeps this oracle
    # independent of the erfc-based one in signal_model
    fpr = ndtr(-(x - model.theta0) / model.sigma)
    tpr = ndtr(-(x - model.theta1) / model.sigma)
    cost = rates.p0 * (fpr * costs.c_fp + (1.0 - fpr) * costs.c_tn) + rates.p1 * (
        tpr * costs.c_tp + (1.0 - tpr) * costs.c_fn
    )
    i = int(np.argmin(cost))
    return float(x[i]), float(cost[i])


def quadrature_normal_cdf(z: float) -> float:
    """Standard normal CDF by adaptive quadrature from -40 to z.

    Absolute error below 1e-13 on |z| <= 40; the integration is split at
    zero so the quadrature never has to resolve a spike at the far end of
    a long interval.
    """
    z = require_finite("z", z)
    if abs(z) > _QUAD_LIMIT:
        raise ValidationError(f"|z| must be <= {_QUAD_LIMIT:g}, got {z}")

    def density(t: float) -> float:
        return math.exp(-0.5 * t * t) / math.sqrt(2.0 * math.pi)

    total = 0.0
    pieces = [(-_QUAD_LIMIT, min(z, 0.0))]
    if z > 0.0:
        pieces.append((0.0, z))
    for lo, hi in pieces:
        if hi > lo:
            value, _ = quad(density, lo, hi, epsabs=1e-15, epsrel=1e-13, limit=300)
            total += value
    return total


def mc_surprise(scenario, cutoff: float, n: int, seed: int) -> tuple[float, float]:
    """Monte Carlo estimate of the two surprise probabilities.

    Draws n evidence values from the prevalence mixture (state theta0
    with probability p0, else theta1; then Normal(theta, sigma)) and
    counts the fractions below and above the cutoff. Estimates converge
    to the closed-form surprises at the usual n^(-1/2) rate. Generation
    is chunked to bound memory; the draw sequence is fixed by the seed
    regardless of n's chunking.
    """
    cutoff = require_finite("cutoff", cutoff)
    if n < 10**4:
        raise ValidationError(f"n must be at least 1e4 for a usable estimate, got {n}")
    model = scenario.model
    p0 = scenario.rates.p0
    rng = np.random.default_rng(seed)
    below = 0
    remaining = int(n)
    while remaining > 0:
        m = min(remaining, _MC_CHUNK)
        benign = rng.random(m) < p0
        means = np.where(benign, model.theta0, model.theta1)
        draws = means + model.sigma * rng.standard_normal(m)
        below += int(np.count_nonzero(draws < cutoff))
        remaining -= m
    red = below / n
    return red, (n - below) / n


def trapezoid_auc(model, points: int = 10**5, span_sigmas: float = 10.0) -> float:
    """Area under the ROC curve by trapezoid integration.

    Sweeps the cutoff across [theta0 - span*sigma, theta1 + span*sigma];
    at span 10 the truncated corner mass is below 1e-23, far under the
    integration error itself.
    """
    if points < 2:
        raise ValidationError(f"need at least 2 points, got {points}")
    x = np.linspace(
        model.theta0 - span_sigmas * model.sigma,
        model.theta1 + span_sigmas * model.sigma,
        points,
    )
    fpr = ndtr(-(x - model.theta0) / model.sigma)
    tpr = ndtr(-(x - model.theta1) / model.sigma)
    # cutoff ascending means fpr descending; flip the orientation
    return float(-np.trapezoid(tpr, fpr))
