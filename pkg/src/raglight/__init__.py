"""Red/amber/green determinations for regulate-or-wait decisions.

An equal-variance Gaussian evidence model, a cost-weighted optimal
cutoff, and corner-proximity tests turn a scenario (model, costs,
prevalences, tolerances) into one of three verdicts: act now, keep
waiting, or watch from inside the amber zone. Portfolio helpers rank
interventions, pick the critical one, and price the option value of
waiting for better evidence.
"""

from .baselines import FixedAlphaTest, fixed_alpha_regret, normal_quantile, np_test
from .engine import (
    BaseRates,
    ConfusionCounts,
    CostMatrix,
    DeterminationReport,
    RowRates,
    Scenario,
    Tolerances,
    Verdict,
    corner_distances,
    cost_ratio,
    delta_from_epsilon,
    determine,
    expected_cost,
    minimized_expected_cost,
    optimal_cutoff,
    optimal_operating_point,
    rates_from_counts,
    surprise_green,
    surprise_red,
)
from .errors import (
    DegenerateModelError,
    NonMonotoneScalingError,
    RaglightError,
    ValidationError,
)
from .portfolio import (
    Intervention,
    Portfolio,
    additive_combiner,
    amber_scale_band,
    bca_select,
    costs_with_option_value,
    critical_intervention,
    expand_combinations,
    feasible_red_set,
    harm_increment_scaling,
    member_reports,
    order_by_cost_ratio,
    quasi_option_value,
)
from .signal_model import (
    GaussianSignalModel,
    OperatingPoint,
    auc,
    discriminability,
    likelihood_ratio,
    normal_cdf,
    normal_sf,
    roc_point,
)

__version__ = "0.1.0"

__all__ = [
    "BaseRates",
    "ConfusionCounts",
    "CostMatrix",
    "DegenerateModelError",
    "DeterminationReport",
    "FixedAlphaTest",
    "GaussianSignalModel",
    "Intervention",
    "NonMonotoneScalingError",
    "OperatingPoint",
    "Portfolio",
    "RaglightError",
    "RowRates",
    "Scenario",
    "Tolerances",
    "ValidationError",
    "Verdict",
    "additive_combiner",
    "amber_scale_band",
    "auc",
    "bca_select",
    "corner_distances",
    "cost_ratio",
    "costs_with_option_value",
    "critical_intervention",
    "delta_from_epsilon",
    "determine",
    "discriminability",
    "expand_combinations",
    "expected_cost",
    "feasible_red_set",
    "fixed_alpha_regret",
    "harm_increment_scaling",
    "likelihood_ratio",
    "member_reports",
    "minimized_expected_cost",
    "normal_cdf",
    "normal_quantile",
    "normal_sf",
    "np_test",
    "optimal_cutoff",
    "optimal_operating_point",
    "order_by_cost_ratio",
    "quasi_option_value",
    "rates_from_counts",
    "roc_point",
    "surprise_green",
    "surprise_red",
    "__version__",
]
