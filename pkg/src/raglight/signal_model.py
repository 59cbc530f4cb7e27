"""Equal-variance Gaussian evidence model and its ROC geometry.

Evidence x is drawn from Normal(theta0, sigma) in the benign state and
Normal(theta1, sigma) in the harmful state, theta1 >= theta0. Everything
downstream (cutoff optimization, corner verdicts, baselines) consumes the
four primitives defined here:

    separation     d = (theta1 - theta0) / sigma
    ranking power  auc = Phi(d / sqrt(2))
    operating pt   (fpr, tpr) = (S((x-theta0)/sigma), S((x-theta1)/sigma))
    density ratio  l(x) = f(x|theta1) / f(x|theta0) = exp(d * (z0 + z1) / 2)

with Phi the standard normal CDF and S = 1 - Phi its survival function.
The exponent identity follows from expanding the two squared z-scores;
computing it as d*(z0+z1)/2 avoids the catastrophic cancellation of the
textbook difference-of-squares form at large |x|.

The single shared sigma is structural: unequal spreads would break both
the concavity of the ROC and the closed-form optimal cutoff, so they are
rejected at construction rather than branched on at runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateModelError, ValidationError, require_finite

SQRT2 = math.sqrt(2.0)

# Below this separation the two densities are numerically identical and the
# likelihood ratio carries no information; operations that need an interior
# optimum refuse and send callers to the explicit coincident-model path.
DEGENERATE_SEPARATION = 1e-12

# Finite stand-in for an infinite cutoff: forty standard deviations beyond
# a mean puts the relevant tail mass below 1e-300, well past double noise,
# while keeping every intermediate quantity finite.
TAIL_SIGMAS = 40.0


def normal_cdf(z: float) -> float:
    """Standard normal CDF, computed through erfc.

    Absolute error stays below 1e-15 for |z| <= 8 and the tail keeps full
    relative precision down to the underflow floor near z = -38.
    """
    if not math.isfinite(z):
        raise ValidationError(f"normal_cdf needs a finite argument, got {z!r}")
    return 0.5 * math.erfc(-z / SQRT2)


def normal_sf(z: float) -> float:
    """Standard normal survival function 1 - Phi(z), tail-accurate.

    Evaluating erfc on the mirrored argument keeps relative precision in
    the upper tail, where the literal subtraction 1 - normal_cdf(z) would
    be limited to absolute 1e-16.
    """
    if not math.isfinite(z):
        raise ValidationError(f"normal_sf needs a finite argument, got {z!r}")
    return 0.5 * math.erfc(z / SQRT2)


@dataclass(frozen=True)
class GaussianSignalModel:
    """Two-state evidence model: levels theta0 <= theta1, common sigma."""

    theta0: float
    theta1: float
    sigma: float

    def __post_init__(self):
        object.__setattr__(self, "theta0", require_finite("theta0", self.theta0))
        object.__setattr__(self, "theta1", require_finite("theta1", self.theta1))
        object.__setattr__(self, "sigma", require_finite("sigma", self.sigma))
        if self.sigma <= 0.0:
            raise ValidationError(
                f"sigma must be positive, got {self.sigma}", field="sigma"
            )
        if self.theta1 < self.theta0:
            raise ValidationError(
                f"theta1 must be >= theta0, got theta0={self.theta0}, "
                f"theta1={self.theta1}",
                field="theta1",
            )


@dataclass(frozen=True)
class OperatingPoint:
    """A point in ROC space: false-positive rate and true-positive rate.

    Both coordinates live in [0, 1]. Points traced from a model always
    satisfy tpr >= fpr; arbitrary points (for cost evaluation of fixed
    procedures, or mirrored corner arithmetic) need not.
    """

    fpr: float
    tpr: float

    def __post_init__(self):
        object.__setattr__(self, "fpr", require_finite("fpr", self.fpr))
        object.__setattr__(self, "tpr", require_finite("tpr", self.tpr))
        if not 0.0 <= self.fpr <= 1.0:
            raise ValidationError(f"fpr must lie in [0,1], got {self.fpr}", field="fpr")
        if not 0.0 <= self.tpr <= 1.0:
            raise ValidationError(f"tpr must lie in [0,1], got {self.tpr}", field="tpr")


def discriminability(model: GaussianSignalModel) -> float:
    """Standardized separation (theta1 - theta0) / sigma; zero iff coincident."""
    return (model.theta1 - model.theta0) / model.sigma


def auc(model: GaussianSignalModel) -> float:
    """Area under the ROC curve, Phi(d / sqrt(2)); 0.5 means chance ranking."""
    return normal_cdf(discriminability(model) / SQRT2)


def roc_point(model: GaussianSignalModel, cutoff: float) -> OperatingPoint:
    """Operating point induced by declaring harm whenever x >= cutoff."""
    if not math.isfinite(cutoff):
        raise ValidationError(f"cutoff must be finite, got {cutoff!r}", field="cutoff")
    z0 = (cutoff - model.theta0) / model.sigma
    z1 = (cutoff - model.theta1) / model.sigma
    return OperatingPoint(fpr=normal_sf(z0), tpr=normal_sf(z1))


def likelihood_ratio(model: GaussianSignalModel, cutoff: float) -> float:
    """Density ratio f(x|theta1)/f(x|theta0) at the cutoff.

    Strictly increasing in the cutoff for separated models, which is what
    makes threshold rules optimal. A coincident model has ratio identically
    one and is refused here so callers hit the explicit degenerate path.
    """
    if not math.isfinite(cutoff):
        raise ValidationError(f"cutoff must be finite, got {cutoff!r}", field="cutoff")
    d = discriminability(model)
    if d <= DEGENERATE_SEPARATION:
        raise DegenerateModelError(
            "likelihood ratio is identically 1 for a zero-separation model"
        )
    z0 = (cutoff - model.theta0) / model.sigma
    z1 = (cutoff - model.theta1) / model.sigma
    try:
        return math.exp(d * (z0 + z1) / 2.0)
    except OverflowError:
        return math.inf
