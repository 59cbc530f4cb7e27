"""Fixed-level testing as a comparison point.

The conventional procedure fixes the false-positive rate alpha by fiat
and accepts whatever power the evidence offers at that level. For a
monotone density ratio the most powerful level-alpha test thresholds
the score at theta0 + sigma*quantile(1 - alpha); its operating point is
where the vertical line fpr = alpha meets the ROC curve. The regret of
the convention is the expected-cost gap between that point and the
cost-responsive optimum: nonnegative always, zero exactly when the
fixed level happens to coincide with the optimal one.
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy.optimize import brentq

from .engine import Scenario, expected_cost, optimal_operating_point
from .errors import DegenerateModelError, ValidationError, require_finite
from .signal_model import (
    DEGENERATE_SEPARATION,
    GaussianSignalModel,
    discriminability,
    normal_cdf,
    roc_point,
)


@dataclass(frozen=True)
class FixedAlphaTest:
    """A fixed-level threshold test: level, score cutoff, attained power."""

    alpha: float
    critical_value: float
    power: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", require_finite("alpha", self.alpha))
        object.__setattr__(
            self, "critical_value", require_finite("critical_value", self.critical_value)
        )
        object.__setattr__(self, "power", require_finite("power", self.power))
        if not 0.0 < self.alpha < 1.0:
            raise ValidationError(
                f"alpha must lie strictly inside (0,1), got {self.alpha}",
                field="alpha",
            )
        if not 0.0 <= self.power <= 1.0:
            raise ValidationError(
                f"power must lie in [0,1], got {self.power}", field="power"
            )
        if self.power + 1e-12 < self.alpha:
            raise ValidationError(
                f"power ({self.power}) below level ({self.alpha}); no threshold "
                "test on a nonnegative-separation model does that",
                field="power",
            )


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF by bracketed root-finding.

    Solves normal_cdf(z) = p with Brent's method, after folding p > 1/2
    onto the lower tail (1 - p is exact there), where the CDF retains
    full relative precision and the bracket [-40, 0] always straddles
    the root. Probability-space accuracy is limited only by the solver
    tolerances, around 1e-15.
    """
    if not (isinstance(p, (int, float)) and 0.0 < p < 1.0):
        raise ValidationError(
            f"quantile needs a probability strictly inside (0,1), got {p!r}"
        )
    p = float(p)
    if p > 0.5:
        return -normal_quantile(1.0 - p)
    if p == 0.5:
        return 0.0
    return brentq(
        lambda z: normal_cdf(z) - p, -40.0, 0.0, xtol=1e-14, rtol=8.9e-16
    )


def np_test(model: GaussianSignalModel, alpha: float) -> FixedAlphaTest:
    """Most powerful fixed-level test for a separated model.

    The cutoff theta0 + sigma*quantile(1-alpha) pins the false-positive
    rate at alpha; thresholding the score is equivalent to thresholding
    the density ratio, which is what makes the test most powerful at its
    level.
    """
    if not (isinstance(alpha, (int, float)) and 0.0 < alpha < 1.0):
        raise ValidationError(
            f"alpha must lie strictly inside (0,1), got {alpha!r}", field="alpha"
        )
    if discriminability(model) <= DEGENERATE_SEPARATION:
        raise DegenerateModelError(
            "a zero-separation model offers no power beyond its level"
        )
    critical_value = model.theta0 + model.sigma * normal_quantile(1.0 - float(alpha))
    power = roc_point(model, critical_value).tpr
    return FixedAlphaTest(alpha=float(alpha), critical_value=critical_value, power=power)


def fixed_alpha_regret(scenario: Scenario, alpha: float) -> float:
    """Expected-cost penalty of fixing the level instead of optimizing.

    Difference between expected cost at the fixed-alpha operating point
    and at the cost-optimal one. Nonnegative by optimality; rounding
    noise from evaluating the same objective twice near its minimum is
    clamped to zero.
    """
    test = np_test(scenario.model, alpha)
    fixed_point = roc_point(scenario.model, test.critical_value)
    fixed_cost = expected_cost(scenario.costs, scenario.rates, fixed_point)
    optimal_cost = expected_cost(
        scenario.costs, scenario.rates, optimal_operating_point(scenario)
    )
    regret = fixed_cost - optimal_cost
    if regret < 0.0:
        scale = max(1.0, abs(fixed_cost), abs(optimal_cost))
        if regret >= -1e-9 * scale:
            return 0.0
        raise ValidationError(
            f"fixed-level cost {fixed_cost} beat the optimum {optimal_cost}; "
            "inputs are inconsistent"
        )
    return regret
