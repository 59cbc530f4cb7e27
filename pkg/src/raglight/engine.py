"""Cost-optimal cutoffs and red/amber/green determinations.

A scenario bundles the evidence model with the four misclassification
costs, the two state prevalences, and the corner tolerances. The engine
minimizes prevalence-weighted expected misclassification cost

    E = p0*[fpr*c_fp + (1-fpr)*c_tn] + p1*[tpr*c_tp + (1-tpr)*c_fn]

over cutoffs. The first-order condition equates the ROC slope (the
likelihood ratio) with the iso-cost slope

    R = (p0/p1) * (c_fp - c_tn) / (c_fn - c_tp)

which in standardized coordinates (theta0=0, sigma=1) gives the closed
form z* = ln(R)/d + d/2.

A determination is then a geometry question: how close the optimal
operating point sits to the always-act corner (1,1) or the never-act
corner (0,0). Within radius delta1 = sqrt(2)*epsilon1 of (1,1) the
verdict is red (act now); within delta0 = sqrt(2)*epsilon0 of (0,0) it
is green (permit now); otherwise amber (wait and monitor). The sqrt(2)
factor makes the ball radius the exact geometric counterpart of a
surprise-probability tolerance: a fresh observation landing on the
unexpected side of the cutoff has probability below epsilon whenever
the right-angle certificate (1 - fpr <= epsilon1, mirrored for green)
holds, and the ball of radius sqrt(2)*epsilon is the largest one that
certificate fills.

Coincident evidence distributions (zero separation) admit no interior
optimum: expected cost is monotone along the chance diagonal, so any
cost asymmetry, however small, polarizes the verdict to a corner. That
path is explicit, never an exception, in determine().
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from numbers import Integral

from .errors import DegenerateModelError, ValidationError, require_finite
from .signal_model import (
    DEGENERATE_SEPARATION,
    SQRT2,
    GaussianSignalModel,
    OperatingPoint,
    discriminability,
    normal_sf,
    roc_point,
)

# Two ratios closer to 1 than this are treated as equal on the
# zero-separation path, and a separation below DEGENERATE_SEPARATION is
# treated as zero; both mirror exact limits that doubles cannot express.
DEGENERATE_RATIO_TOLERANCE = 1e-12


class Verdict(str, Enum):
    RED = "RedLight"
    AMBER = "AmberLight"
    GREEN = "GreenLight"


@dataclass(frozen=True)
class CostMatrix:
    """Four misclassification costs in one common monetary-equivalent unit.

    Both increments c_fp - c_tn (net cost of acting on a benign case) and
    c_fn - c_tp (net cost of waving through a harmful one) must be
    strictly positive: the closed-form cutoff takes their logarithms.
    Non-finite entries are refused outright; an "infinitely bad" outcome
    has no place in a framework that weighs errors against each other.
    """

    c_tp: float
    c_fn: float
    c_fp: float
    c_tn: float

    def __post_init__(self):
        for name in ("c_tp", "c_fn", "c_fp", "c_tn"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValidationError(
                    f"{name} is a protected value (non-finite: {value!r}); "
                    "all costs must be finite and comparable",
                    field=name,
                )
            object.__setattr__(self, name, value)
        if not self.c_fp > self.c_tn:
            raise ValidationError(
                f"c_fp must exceed c_tn (got c_fp={self.c_fp}, c_tn={self.c_tn}): "
                "a false positive has to cost more than a true negative",
                field="c_fp",
            )
        if not self.c_fn > self.c_tp:
            raise ValidationError(
                f"c_fn must exceed c_tp (got c_fn={self.c_fn}, c_tp={self.c_tp}): "
                "a false negative has to cost more than a true positive",
                field="c_fn",
            )

    @property
    def fp_increment(self) -> float:
        return self.c_fp - self.c_tn

    @property
    def fn_increment(self) -> float:
        return self.c_fn - self.c_tp


@dataclass(frozen=True)
class BaseRates:
    """Prevalences of the benign (p0) and harmful (p1) states."""

    p0: float
    p1: float

    def __post_init__(self):
        object.__setattr__(self, "p0", require_finite("p0", self.p0))
        object.__setattr__(self, "p1", require_finite("p1", self.p1))
        if not 0.0 < self.p0 < 1.0:
            raise ValidationError(
                f"p0 must lie strictly inside (0,1), got {self.p0}", field="p0"
            )
        if not 0.0 < self.p1 < 1.0:
            raise ValidationError(
                f"p1 must lie strictly inside (0,1), got {self.p1}", field="p1"
            )
        if abs(self.p0 + self.p1 - 1.0) > 1e-12:
            raise ValidationError(
                f"p0 + p1 must equal 1 within 1e-12, got {self.p0 + self.p1}",
                field="p1",
            )


@dataclass(frozen=True)
class ConfusionCounts:
    """Raw cell counts of a 2x2 classification table."""

    tp: int
    fn: int
    fp: int
    tn: int

    def __post_init__(self):
        for name in ("tp", "fn", "fp", "tn"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, Integral):
                raise ValidationError(
                    f"{name} must be an integer count, got {value!r}", field=name
                )
            if value < 0:
                raise ValidationError(
                    f"{name} must be nonnegative, got {value}", field=name
                )
            object.__setattr__(self, name, int(value))


@dataclass(frozen=True)
class RowRates:
    """Row-conditional rates of a confusion table."""

    tpr: float
    fnr: float
    fpr: float
    tnr: float


@dataclass(frozen=True)
class Tolerances:
    """Surprise tolerances for the two non-postponed verdicts.

    epsilon1 bounds the tolerated surprise of a red determination,
    epsilon0 of a green one. The derived ball radii delta = sqrt(2)*eps
    must leave the two corner balls disjoint (delta1 + delta0 < sqrt(2)),
    otherwise a single operating point could warrant both verdicts.
    """

    epsilon1: float
    epsilon0: float

    def __post_init__(self):
        object.__setattr__(
            self, "epsilon1", require_finite("epsilon1", self.epsilon1)
        )
        object.__setattr__(
            self, "epsilon0", require_finite("epsilon0", self.epsilon0)
        )
        for name in ("epsilon1", "epsilon0"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValidationError(
                    f"{name} must lie strictly inside (0,1), got {value}", field=name
                )
        if self.delta1 + self.delta0 >= SQRT2:
            raise ValidationError(
                f"corner balls overlap: delta1 + delta0 = "
                f"{self.delta1 + self.delta0} >= sqrt(2); require "
                "epsilon1 + epsilon0 < 1",
                field="epsilon0",
            )

    @property
    def delta1(self) -> float:
        return delta_from_epsilon(self.epsilon1)

    @property
    def delta0(self) -> float:
        return delta_from_epsilon(self.epsilon0)


@dataclass(frozen=True)
class Scenario:
    """The unit of analysis: model + costs + prevalences + tolerances."""

    model: GaussianSignalModel
    costs: CostMatrix
    rates: BaseRates
    tolerances: Tolerances

    def __post_init__(self):
        pairs = (
            ("model", GaussianSignalModel),
            ("costs", CostMatrix),
            ("rates", BaseRates),
            ("tolerances", Tolerances),
        )
        for name, cls in pairs:
            if not isinstance(getattr(self, name), cls):
                raise ValidationError(
                    f"{name} must be a {cls.__name__}, "
                    f"got {type(getattr(self, name)).__name__}",
                    field=name,
                )


@dataclass(frozen=True)
class DeterminationReport:
    """Everything determine() computed on the way to a verdict.

    cutoff is None on the zero-separation path, where no interior optimum
    exists and the operating point is a corner (or the diagonal midpoint
    when the cost ratio is exactly balanced).
    """

    cutoff: float | None
    point: OperatingPoint
    cost_ratio: float
    expected_cost: float
    dist_red: float
    dist_green: float
    surprise_red: float
    surprise_green: float
    delta1: float
    delta0: float
    verdict: Verdict
    degenerate: bool


def rates_from_counts(counts: ConfusionCounts) -> tuple[BaseRates, RowRates]:
    """Estimate prevalences and row rates from a confusion table.

    Needs at least one observation in each true-state row; otherwise the
    corresponding rates (and an open-interval prevalence) do not exist.
    """
    harmful = counts.tp + counts.fn
    benign = counts.fp + counts.tn
    total = harmful + benign
    if total == 0:
        raise ValidationError("confusion table is empty (all four counts zero)")
    if harmful == 0:
        raise ValidationError(
            "empty harmful-state row (tp + fn = 0): true-positive rate and "
            "prevalence p1 are undefined"
        )
    if benign == 0:
        raise ValidationError(
            "empty benign-state row (fp + tn = 0): false-positive rate and "
            "prevalence p0 are undefined"
        )
    rates = BaseRates(p0=benign / total, p1=harmful / total)
    row = RowRates(
        tpr=counts.tp / harmful,
        fnr=counts.fn / harmful,
        fpr=counts.fp / benign,
        tnr=counts.tn / benign,
    )
    return rates, row


def cost_ratio(costs, rates) -> float:
    """Slope of the optimal iso-expected-cost line in ROC space."""
    return (rates.p0 / rates.p1) * (
        (costs.c_fp - costs.c_tn) / (costs.c_fn - costs.c_tp)
    )


def expected_cost(costs, rates, point) -> float:
    """Prevalence-weighted expected misclassification cost at a point.

    Duck-typed on attribute access so callers can price degenerate cost
    shapes (all-zero matrices, single-increment probes) that the
    CostMatrix constructor would refuse.
    """
    benign = point.fpr * costs.c_fp + (1.0 - point.fpr) * costs.c_tn
    harmful = point.tpr * costs.c_tp + (1.0 - point.tpr) * costs.c_fn
    return rates.p0 * benign + rates.p1 * harmful


def optimal_cutoff(scenario: Scenario) -> float:
    """Cost-minimizing cutoff, by the standardized closed form.

    Standardizes to z = (x - theta0)/sigma, where the separation d plays
    the role of the harmful mean; the minimizer is z* = ln(R)/d + d/2 and
    maps back to theta0 + sigma*z*. Refuses zero-separation models, which
    have no interior optimum.
    """
    d = discriminability(scenario.model)
    if d <= DEGENERATE_SEPARATION:
        raise DegenerateModelError(
            "zero-separation model has no interior cost-minimizing cutoff; "
            "use determine() for the polarized verdict"
        )
    ratio = cost_ratio(scenario.costs, scenario.rates)
    z_star = math.log(ratio) / d + d / 2.0
    return scenario.model.theta0 + scenario.model.sigma * z_star


def optimal_operating_point(scenario: Scenario) -> OperatingPoint:
    """ROC point at the cost-minimizing cutoff."""
    return roc_point(scenario.model, optimal_cutoff(scenario))


def _surprise_pair(rates, point) -> tuple[float, float]:
    # The two surprises are exact complements in real arithmetic. Doubles
    # only guarantee an exact 1 - x for x >= 1/2, so evaluate both raw
    # mixture probabilities and rebuild the smaller one from the larger.
    green = min(max(rates.p0 * point.fpr + rates.p1 * point.tpr, 0.0), 1.0)
    red = min(
        max(rates.p0 * (1.0 - point.fpr) + rates.p1 * (1.0 - point.tpr), 0.0), 1.0
    )
    if green >= 0.5:
        red = 1.0 - green
    elif red >= 0.5:
        green = 1.0 - red
    else:
        # both raws sit a rounding error under 1/2
        red = 1.0 - green
        green = 1.0 - red
    return red, green


def surprise_red(rates, point) -> float:
    """Probability that a fresh observation lands left of the cutoff.

    This is the chance of post-red-verdict surprise: the mixture mass
    p0*(1-fpr) + p1*(1-tpr) on the not-acted-on side.
    """
    return _surprise_pair(rates, point)[0]


def surprise_green(rates, point) -> float:
    """Probability that a fresh observation lands right of the cutoff,
    the mixture mass p0*fpr + p1*tpr; complements surprise_red exactly."""
    return _surprise_pair(rates, point)[1]


def corner_distances(point: OperatingPoint) -> tuple[float, float]:
    """Euclidean distances to the always-act corner (1,1) and the
    never-act corner (0,0), in that order."""
    dist_red = math.hypot(1.0 - point.fpr, 1.0 - point.tpr)
    dist_green = math.hypot(point.fpr, point.tpr)
    return dist_red, dist_green


def delta_from_epsilon(epsilon: float) -> float:
    """Ball radius sqrt(2)*epsilon matching a surprise tolerance epsilon."""
    if not (isinstance(epsilon, (int, float)) and 0.0 < float(epsilon) < 1.0):
        raise ValidationError(
            f"epsilon must lie strictly inside (0,1), got {epsilon!r}"
        )
    return SQRT2 * float(epsilon)


def minimized_expected_cost(costs, rates, dprime: float) -> float:
    """Minimum expected cost achievable at a given separation.

    Evaluated on a standardized model (theta0=0, sigma=1, theta1=dprime)
    over the closed ROC curve, corners included. With both cost
    increments positive and dprime > 0 the interior tangency point is the
    global minimum; otherwise the optimum sits at a corner, which covers
    the zero-separation case (cost is monotone along the chance diagonal)
    and degenerate cost shapes. Duck-typed like expected_cost.
    """
    if not (isinstance(dprime, (int, float)) and math.isfinite(dprime)):
        raise ValidationError(f"dprime must be finite, got {dprime!r}")
    if dprime < 0.0:
        raise ValidationError(f"dprime must be nonnegative, got {dprime}")
    never_act = OperatingPoint(fpr=0.0, tpr=0.0)
    always_act = OperatingPoint(fpr=1.0, tpr=1.0)
    best = min(
        expected_cost(costs, rates, never_act),
        expected_cost(costs, rates, always_act),
    )
    fp_inc = costs.c_fp - costs.c_tn
    fn_inc = costs.c_fn - costs.c_tp
    if dprime > DEGENERATE_SEPARATION and fp_inc > 0.0 and fn_inc > 0.0:
        ratio = (rates.p0 / rates.p1) * (fp_inc / fn_inc)
        z_star = math.log(ratio) / dprime + dprime / 2.0
        interior = OperatingPoint(
            fpr=normal_sf(z_star), tpr=normal_sf(z_star - dprime)
        )
        best = min(best, expected_cost(costs, rates, interior))
    return best


def determine(scenario: Scenario) -> DeterminationReport:
    """Issue the red/amber/green determination for a scenario.

    Separated models: optimize the cutoff, then test the operating point
    against the two corner balls. Zero-separation models: expected cost
    is linear along the chance diagonal with slope proportional to
    R - 1, so the verdict polarizes on the cost ratio alone; only an
    exactly balanced ratio stays amber.
    """
    d = discriminability(scenario.model)
    ratio = cost_ratio(scenario.costs, scenario.rates)
    delta1 = scenario.tolerances.delta1
    delta0 = scenario.tolerances.delta0

    if d <= DEGENERATE_SEPARATION:
        if abs(ratio - 1.0) <= DEGENERATE_RATIO_TOLERANCE:
            verdict = Verdict.AMBER
            point = OperatingPoint(fpr=0.5, tpr=0.5)
        elif ratio < 1.0:
            # acting is cheaper on every case mix: the always-act corner
            verdict = Verdict.RED
            point = OperatingPoint(fpr=1.0, tpr=1.0)
        else:
            verdict = Verdict.GREEN
            point = OperatingPoint(fpr=0.0, tpr=0.0)
        cutoff = None
        degenerate = True
    else:
        cutoff = optimal_cutoff(scenario)
        point = roc_point(scenario.model, cutoff)
        degenerate = False

    dist_red, dist_green = corner_distances(point)
    if not degenerate:
        if dist_red <= delta1:
            verdict = Verdict.RED
        elif dist_green <= delta0:
            verdict = Verdict.GREEN
        else:
            verdict = Verdict.AMBER

    s_red, s_green = _surprise_pair(scenario.rates, point)
    return DeterminationReport(
        cutoff=cutoff,
        point=point,
        cost_ratio=ratio,
        expected_cost=expected_cost(scenario.costs, scenario.rates, point),
        dist_red=dist_red,
        dist_green=dist_green,
        surprise_red=s_red,
        surprise_green=s_green,
        delta1=delta1,
        delta0=delta0,
        verdict=verdict,
        degenerate=degenerate,
    )
