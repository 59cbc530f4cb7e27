"""Choosing among candidate interventions.

Candidates share one evidence model and one pair of prevalences; each
carries its own cost matrix (countervailing risks of the intervention
itself belong inside its c_tp and c_fp entries) and a supplied net
social benefit. Ordering candidates by descending cost ratio sorts them
from least to most red-leaning: a smaller ratio pushes the optimal
cutoff left, toward the always-act corner. Consequently the red-feasible
candidates always form a suffix of the ordered list, and the critical
one (the feasible candidate farthest from the corner, i.e. the weakest
intervention that still clears the bar) is the suffix's first element.

Combinations of base interventions are priced by a caller-supplied
combiner; the built-in default adds cost increments and benefits across
members, which is a documented fallback, not a claim about how real
interventions compose.

The scale band asks a different question: over what deployment scales s
does a scenario stay amber? The default scaling multiplies only the
harm increment c_fn - c_tp by s, so capping scale caps realized harm
exposure while the forgone-benefit increment keeps its full magnitude.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Callable

from .engine import (
    BaseRates,
    CostMatrix,
    DeterminationReport,
    Scenario,
    Tolerances,
    Verdict,
    cost_ratio,
    determine,
    minimized_expected_cost,
)
from .errors import NonMonotoneScalingError, ValidationError, require_finite
from .signal_model import GaussianSignalModel

_MAX_COMBINATION_BASE = 12
_SCALE_SAMPLES = 64
_SCALE_TOLERANCE = 1e-6

Combiner = Callable[[tuple["Intervention", ...]], tuple[CostMatrix, float]]
CostScaling = Callable[[float], CostMatrix]


@dataclass(frozen=True)
class Intervention:
    """A candidate policy measure with scenario-specific costs.

    members lists the base interventions this one is composed of; a
    simple intervention is its own singleton.
    """

    id: str
    label: str
    costs: CostMatrix
    net_social_benefit: float
    members: frozenset[str] | None = None  # normalized to a frozenset below

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValidationError(f"id must be a nonempty string, got {self.id!r}")
        if not isinstance(self.label, str):
            raise ValidationError(f"label must be a string, got {self.label!r}")
        if not isinstance(self.costs, CostMatrix):
            raise ValidationError(
                f"costs must be a CostMatrix, got {type(self.costs).__name__}"
            )
        object.__setattr__(
            self,
            "net_social_benefit",
            require_finite("net_social_benefit", self.net_social_benefit),
        )
        members = self.members
        if members is None:
            members = frozenset({self.id})
        else:
            members = frozenset(members)
            if not members:
                raise ValidationError(f"members of {self.id!r} must be nonempty")
        object.__setattr__(self, "members", members)


@dataclass(frozen=True)
class Portfolio:
    """Interventions ordered by descending cost ratio over shared context."""

    interventions: tuple[Intervention, ...]
    model: GaussianSignalModel
    rates: BaseRates
    tolerances: Tolerances

    def __post_init__(self):
        object.__setattr__(self, "interventions", tuple(self.interventions))
        if not self.interventions:
            raise ValidationError("portfolio needs at least one intervention")
        ids = [item.id for item in self.interventions]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValidationError(f"duplicate intervention ids: {dupes}")
        previous = None
        for item in self.interventions:
            key = (-cost_ratio(item.costs, self.rates), item.id)
            if previous is not None and key < previous:
                raise ValidationError(
                    "interventions must be ordered by descending cost ratio "
                    "(ties by ascending id); use order_by_cost_ratio()"
                )
            previous = key


def order_by_cost_ratio(
    interventions,
    rates: BaseRates,
    model: GaussianSignalModel,
    tolerances: Tolerances,
) -> Portfolio:
    """Sort candidates by descending cost ratio, ties by ascending id."""
    items = list(interventions)
    if not items:
        raise ValidationError("portfolio needs at least one intervention")
    items.sort(key=lambda item: (-cost_ratio(item.costs, rates), item.id))
    return Portfolio(
        interventions=tuple(items), model=model, rates=rates, tolerances=tolerances
    )


def member_reports(
    portfolio: Portfolio,
) -> list[tuple[Intervention, DeterminationReport]]:
    """Determination of every member under the shared model and rates."""
    out = []
    for item in portfolio.interventions:
        scenario = Scenario(
            model=portfolio.model,
            costs=item.costs,
            rates=portfolio.rates,
            tolerances=portfolio.tolerances,
        )
        out.append((item, determine(scenario)))
    return out


def feasible_red_set(portfolio: Portfolio) -> tuple[str, ...]:
    """Ids whose determination under the shared context is red.

    Returned in portfolio order. Because the distance to (1,1) falls
    monotonically as the cost ratio falls, the result is always a suffix
    of the ordered list.
    """
    return tuple(
        item.id
        for item, report in member_reports(portfolio)
        if report.verdict is Verdict.RED
    )


def critical_intervention(portfolio: Portfolio) -> str | None:
    """The feasible member farthest from the always-act corner.

    This is the weakest intervention that still clears the red bar: the
    natural single pick when one measure is to be taken. None when
    nothing is feasible; ties resolved to the ascending id.
    """
    best_id = None
    best_dist = -math.inf
    for item, report in member_reports(portfolio):
        if report.verdict is not Verdict.RED:
            continue
        if report.dist_red > best_dist or (
            report.dist_red == best_dist and (best_id is None or item.id < best_id)
        ):
            best_id = item.id
            best_dist = report.dist_red
    return best_id


def bca_select(portfolio: Portfolio) -> str | None:
    """Benefit-cost pick: the feasible member with the highest strictly
    positive net social benefit; None when no feasible member has one.
    Ties resolved to the ascending id."""
    best_id = None
    best_benefit = 0.0
    for item, report in member_reports(portfolio):
        if report.verdict is not Verdict.RED:
            continue
        if item.net_social_benefit <= 0.0:
            continue
        if item.net_social_benefit > best_benefit or (
            item.net_social_benefit == best_benefit
            and (best_id is None or item.id < best_id)
        ):
            best_id = item.id
            best_benefit = item.net_social_benefit
    return best_id


def additive_combiner(members: tuple[Intervention, ...]) -> tuple[CostMatrix, float]:
    """Default combination pricing: increments and benefits add.

    Both cost increments sum across members; the baseline c_tn and c_tp
    are anchored at the first member's. Net social benefit is the plain
    sum. Real combinations compose nonlinearly; supply a combiner that
    knows how when that matters.
    """
    anchor = members[0].costs
    fp_inc = sum(m.costs.fp_increment for m in members)
    fn_inc = sum(m.costs.fn_increment for m in members)
    costs = CostMatrix(
        c_tp=anchor.c_tp,
        c_fn=anchor.c_tp + fn_inc,
        c_fp=anchor.c_tn + fp_inc,
        c_tn=anchor.c_tn,
    )
    benefit = sum(m.net_social_benefit for m in members)
    return costs, benefit


def expand_combinations(
    base, combiner: Combiner | None = None
) -> list[Intervention]:
    """Price every nonempty subset of the base interventions.

    Returns 2^n - 1 candidates (n capped at 12), each priced by the
    combiner; ids join the member ids with '+'. The output keeps subset
    enumeration order; build a Portfolio with order_by_cost_ratio to get
    ranking semantics.
    """
    items = list(base)
    if not 1 <= len(items) <= _MAX_COMBINATION_BASE:
        raise ValidationError(
            f"combination expansion takes 1..{_MAX_COMBINATION_BASE} base "
            f"interventions, got {len(items)}"
        )
    ids = [item.id for item in items]
    if len(set(ids)) != len(ids):
        raise ValidationError(f"duplicate base intervention ids: {sorted(ids)}")
    if combiner is None:
        combiner = additive_combiner
    out = []
    for mask in range(1, 1 << len(items)):
        subset = tuple(items[i] for i in range(len(items)) if mask >> i & 1)
        if len(subset) == 1:
            out.append(subset[0])
            continue
        try:
            costs, benefit = combiner(subset)
        except ValidationError as exc:
            raise ValidationError(
                f"combiner failed for members "
                f"{[m.id for m in subset]}: {exc}"
            ) from exc
        if not isinstance(costs, CostMatrix):
            raise ValidationError(
                f"combiner returned {type(costs).__name__} for members "
                f"{[m.id for m in subset]}; a CostMatrix is required"
            )
        out.append(
            Intervention(
                id="+".join(m.id for m in subset),
                label=" + ".join(m.label for m in subset),
                costs=costs,
                net_social_benefit=benefit,
                members=frozenset().union(*(m.members for m in subset)),
            )
        )
    return out


def quasi_option_value(costs, rates, dprime_now: float, dprime_future: float) -> float:
    """Expected-cost benefit of deciding later with better evidence.

    The difference between today's minimum achievable expected cost (at
    separation dprime_now) and the future one (at dprime_future >= now).
    Better separation never hurts, so the value is nonnegative; rounding
    noise on near-equal separations is clamped to zero.
    """
    if not (
        isinstance(dprime_now, (int, float))
        and isinstance(dprime_future, (int, float))
        and math.isfinite(dprime_now)
        and math.isfinite(dprime_future)
    ):
        raise ValidationError(
            f"separations must be finite, got now={dprime_now!r}, "
            f"future={dprime_future!r}"
        )
    if dprime_now < 0.0:
        raise ValidationError(f"dprime_now must be nonnegative, got {dprime_now}")
    if dprime_future < dprime_now:
        raise ValidationError(
            f"dprime_future ({dprime_future}) must be at least dprime_now "
            f"({dprime_now}): evidence does not get worse by waiting"
        )
    cost_now = minimized_expected_cost(costs, rates, dprime_now)
    cost_future = minimized_expected_cost(costs, rates, dprime_future)
    value = cost_now - cost_future
    if value < 0.0:
        scale = max(1.0, abs(cost_now), abs(cost_future))
        if value >= -1e-9 * scale:
            return 0.0
        raise ValidationError(
            f"minimized cost increased with better separation "
            f"({cost_now} -> {cost_future}); cost inputs are inconsistent"
        )
    return value


def costs_with_option_value(
    costs: CostMatrix, rates, dprime_now: float, dprime_future: float
) -> CostMatrix:
    """Fold the option value of waiting into c_fn as an opportunity cost."""
    value = quasi_option_value(costs, rates, dprime_now, dprime_future)
    return dataclasses.replace(costs, c_fn=costs.c_fn + value)


def harm_increment_scaling(base: CostMatrix) -> CostScaling:
    """Default deployment-scale map: scale s multiplies the harm
    increment c_fn - c_tp, leaving the benefit increment untouched."""

    def scale(s: float) -> CostMatrix:
        return dataclasses.replace(base, c_fn=base.c_tp + s * base.fn_increment)

    return scale


_VERDICT_RANK = {Verdict.RED: 0, Verdict.AMBER: 1, Verdict.GREEN: 2}


def _verdict_at(scenario: Scenario, scaling: CostScaling, s: float) -> Verdict:
    costs = scaling(s)
    if not isinstance(costs, CostMatrix):
        raise ValidationError(
            f"scaling must return a CostMatrix, got {type(costs).__name__}"
        )
    return determine(dataclasses.replace(scenario, costs=costs)).verdict


def _bisect_boundary(
    scenario: Scenario,
    scaling: CostScaling,
    s_outside: float,
    s_amber: float,
) -> float:
    # shrink the bracket [outside, amber] until it is narrower than the
    # tolerance; the returned midpoint estimates the verdict boundary
    while abs(s_amber - s_outside) > _SCALE_TOLERANCE:
        mid = 0.5 * (s_outside + s_amber)
        if _verdict_at(scenario, scaling, mid) is Verdict.AMBER:
            s_amber = mid
        else:
            s_outside = mid
    return 0.5 * (s_outside + s_amber)


def amber_scale_band(
    scenario: Scenario,
    scaling: CostScaling | None = None,
    s_min: float = 1e-3,
    s_max: float = 1e3,
) -> tuple[float, float] | None:
    """Largest sub-interval of [s_min, s_max] where the verdict is amber.

    Samples 64 geometrically spaced scales (scale is a positive
    multiplier, so equal ratios resolve a band on any decade), requires
    the sampled verdicts to form one contiguous red/amber/green
    progression (either direction), then bisects the two verdict
    boundaries to 1e-6 in s. None when no sampled scale is amber.
    """
    s_min = require_finite("s_min", s_min)
    s_max = require_finite("s_max", s_max)
    if not 0.0 < s_min < s_max:
        raise ValidationError(
            f"need 0 < s_min < s_max, got s_min={s_min}, s_max={s_max}"
        )
    if scaling is None:
        scaling = harm_increment_scaling(scenario.costs)

    growth = (s_max / s_min) ** (1.0 / (_SCALE_SAMPLES - 1))
    samples = [s_min * growth**i for i in range(_SCALE_SAMPLES - 1)] + [s_max]
    verdicts = [_verdict_at(scenario, scaling, s) for s in samples]

    ranks = [_VERDICT_RANK[v] for v in verdicts]
    nondecreasing = all(a <= b for a, b in zip(ranks, ranks[1:]))
    nonincreasing = all(a >= b for a, b in zip(ranks, ranks[1:]))
    if not (nondecreasing or nonincreasing):
        order = " ".join(v.name for v, _ in _collapse_runs(verdicts))
        raise NonMonotoneScalingError(
            f"sampled verdicts do not form one contiguous progression: {order}"
        )

    amber_idx = [i for i, v in enumerate(verdicts) if v is Verdict.AMBER]
    if not amber_idx:
        return None
    first, last = amber_idx[0], amber_idx[-1]
    lo = (
        samples[0]
        if first == 0
        else _bisect_boundary(scenario, scaling, samples[first - 1], samples[first])
    )
    hi = (
        samples[-1]
        if last == len(samples) - 1
        else _bisect_boundary(scenario, scaling, samples[last + 1], samples[last])
    )
    return lo, hi


def _collapse_runs(verdicts):
    runs = []
    for v in verdicts:
        if runs and runs[-1][0] is v:
            runs[-1] = (v, runs[-1][1] + 1)
        else:
            runs.append((v, 1))
    return runs
