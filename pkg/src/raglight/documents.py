"""Document ingestion and canonical serialization.

The CLI and the HTTP service share this layer so that the same input
document produces byte-identical numeric payloads on both surfaces.
Two rules make that hold:

* every float is rendered with 17 significant digits, enough to
  round-trip any double exactly;
* report dictionaries are built here, once, in a fixed key order.

Validation errors raised while a document is being assembled into
domain objects are re-tagged with a JSON-pointer path ("/rates/p0") so
callers can point at the offending location in the original document.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .engine import (
    BaseRates,
    ConfusionCounts,
    CostMatrix,
    DeterminationReport,
    Scenario,
    Tolerances,
    cost_ratio,
    optimal_cutoff,
    optimal_operating_point,
    rates_from_counts,
)
from .errors import ValidationError
from .portfolio import (
    Intervention,
    Portfolio,
    bca_select,
    critical_intervention,
    expand_combinations,
    feasible_red_set,
    member_reports,
    order_by_cost_ratio,
)
from .signal_model import (
    DEGENERATE_SEPARATION,
    GaussianSignalModel,
    discriminability,
    likelihood_ratio,
    roc_point,
)

_INDENT = "  "

_SCENARIO_KEYS = frozenset({"model", "costs", "rates", "counts", "tolerances"})
_PORTFOLIO_KEYS = frozenset(
    {"model", "rates", "counts", "tolerances", "interventions", "combinations"}
)
_INTERVENTION_KEYS = frozenset({"id", "label", "costs", "net_social_benefit"})

MAX_ROC_POINTS = 1_000_000


# --------------------------------------------------------------------------
# canonical JSON


def format_number(value: float) -> str:
    """Render a float with 17 significant digits (exact double round-trip)."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TypeError(f"expected a number, got {type(value).__name__}")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"payload numbers must be finite, got {value!r}")
    return format(value, ".17g")


def canonical_json(value) -> str:
    """Deterministic two-space-indented JSON with 17-digit floats.

    Keys keep their insertion order; report builders in this module fix
    that order, which is what makes CLI and API payloads comparable
    byte for byte.
    """
    return _render(value, 0)


def _render(value, depth: int) -> str:
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_number(value)
    pad = _INDENT * (depth + 1)
    close = _INDENT * depth
    if isinstance(value, dict):
        if not value:
            return "{}"
        body = ",\n".join(
            f"{pad}{json.dumps(str(key))}: {_render(item, depth + 1)}"
            for key, item in value.items()
        )
        return "{\n" + body + "\n" + close + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        body = ",\n".join(f"{pad}{_render(item, depth + 1)}" for item in value)
        return "[\n" + body + "\n" + close + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


# --------------------------------------------------------------------------
# parsing helpers


def _retag(prefix: str, exc: ValidationError) -> ValidationError:
    # constructor errors carry bare field names and need the section path
    # prepended; errors from the field helpers are already absolute
    if exc.field and exc.field.startswith("/"):
        return exc
    field = f"{prefix}/{exc.field}" if exc.field else prefix
    return ValidationError(exc.message, field=field)


def _require_object(value, path: str, what: str):
    if not isinstance(value, dict):
        raise ValidationError(
            f"{what} must be a JSON object, got {type(value).__name__}",
            field=path or "",
        )
    return value


def _reject_unknown(section: dict, allowed: frozenset, path: str):
    for key in section:
        if key not in allowed:
            raise ValidationError(
                f"unexpected field {key!r}", field=f"{path}/{key}"
            )


def _require_section(top: dict, key: str, path: str = "") -> dict:
    if key not in top:
        raise ValidationError(
            f"missing required section {key!r}", field=f"{path}/{key}"
        )
    return _require_object(top[key], f"{path}/{key}", f"section {key!r}")


def _number(section: dict, key: str, path: str) -> float:
    if key not in section:
        raise ValidationError("missing required field", field=f"{path}/{key}")
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(
            f"expected a number, got {type(value).__name__}",
            field=f"{path}/{key}",
        )
    return float(value)


def _integer(section: dict, key: str, path: str) -> int:
    if key not in section:
        raise ValidationError("missing required field", field=f"{path}/{key}")
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(
            f"expected an integer count, got {value!r}", field=f"{path}/{key}"
        )
    return value


def _string(section: dict, key: str, path: str) -> str:
    if key not in section:
        raise ValidationError("missing required field", field=f"{path}/{key}")
    value = section[key]
    if not isinstance(value, str):
        raise ValidationError(
            f"expected a string, got {type(value).__name__}",
            field=f"{path}/{key}",
        )
    return value


def _parse_model(section: dict, path: str) -> GaussianSignalModel:
    _reject_unknown(section, frozenset({"theta0", "theta1", "sigma"}), path)
    try:
        return GaussianSignalModel(
            theta0=_number(section, "theta0", path),
            theta1=_number(section, "theta1", path),
            sigma=_number(section, "sigma", path),
        )
    except ValidationError as exc:
        raise _retag(path, exc) from None


def _parse_costs(section: dict, path: str) -> CostMatrix:
    _reject_unknown(section, frozenset({"c_tp", "c_fn", "c_fp", "c_tn"}), path)
    try:
        return CostMatrix(
            c_tp=_number(section, "c_tp", path),
            c_fn=_number(section, "c_fn", path),
            c_fp=_number(section, "c_fp", path),
            c_tn=_number(section, "c_tn", path),
        )
    except ValidationError as exc:
        raise _retag(path, exc) from None


def _parse_tolerances(section: dict, path: str) -> Tolerances:
    _reject_unknown(section, frozenset({"epsilon1", "epsilon0"}), path)
    try:
        return Tolerances(
            epsilon1=_number(section, "epsilon1", path),
            epsilon0=_number(section, "epsilon0", path),
        )
    except ValidationError as exc:
        raise _retag(path, exc) from None


def _parse_rates(top: dict, path: str = "") -> BaseRates:
    has_rates = "rates" in top
    has_counts = "counts" in top
    if has_rates and has_counts:
        raise ValidationError(
            "give either rates or counts, not both", field=f"{path}/counts"
        )
    if not has_rates and not has_counts:
        raise ValidationError(
            "one of 'rates' or 'counts' is required", field=f"{path}/rates"
        )
    if has_rates:
        section = _require_section(top, "rates", path)
        _reject_unknown(section, frozenset({"p0", "p1"}), f"{path}/rates")
        try:
            return BaseRates(
                p0=_number(section, "p0", f"{path}/rates"),
                p1=_number(section, "p1", f"{path}/rates"),
            )
        except ValidationError as exc:
            raise _retag(f"{path}/rates", exc) from None
    section = _require_section(top, "counts", path)
    _reject_unknown(section, frozenset({"tp", "fn", "fp", "tn"}), f"{path}/counts")
    try:
        counts = ConfusionCounts(
            tp=_integer(section, "tp", f"{path}/counts"),
            fn=_integer(section, "fn", f"{path}/counts"),
            fp=_integer(section, "fp", f"{path}/counts"),
            tn=_integer(section, "tn", f"{path}/counts"),
        )
        rates, _ = rates_from_counts(counts)
        return rates
    except ValidationError as exc:
        raise _retag(f"{path}/counts", exc) from None


# --------------------------------------------------------------------------
# documents


def parse_scenario_document(document, path: str = "") -> Scenario:
    """Assemble a Scenario from plain parsed JSON.

    Exactly one of the ``rates``/``counts`` sections must be present;
    counts are converted to prevalences, which is how sample-based
    estimates enter the pipeline.
    """
    top = _require_object(document, path, "scenario document")
    _reject_unknown(top, _SCENARIO_KEYS, path)
    model = _parse_model(_require_section(top, "model", path), f"{path}/model")
    costs = _parse_costs(_require_section(top, "costs", path), f"{path}/costs")
    rates = _parse_rates(top, path)
    tolerances = _parse_tolerances(
        _require_section(top, "tolerances", path), f"{path}/tolerances"
    )
    return Scenario(model=model, costs=costs, rates=rates, tolerances=tolerances)


@dataclass(frozen=True)
class PortfolioInputs:
    """Parsed portfolio document, prior to combination expansion."""

    interventions: tuple[Intervention, ...]
    model: GaussianSignalModel
    rates: BaseRates
    tolerances: Tolerances
    combinations: bool


def parse_portfolio_document(document) -> PortfolioInputs:
    top = _require_object(document, "", "portfolio document")
    _reject_unknown(top, _PORTFOLIO_KEYS, "")
    model = _parse_model(_require_section(top, "model"), "/model")
    rates = _parse_rates(top)
    tolerances = _parse_tolerances(
        _require_section(top, "tolerances"), "/tolerances"
    )

    if "interventions" not in top:
        raise ValidationError("missing required section", field="/interventions")
    raw = top["interventions"]
    if not isinstance(raw, list) or not raw:
        raise ValidationError(
            "interventions must be a nonempty array", field="/interventions"
        )
    items = []
    seen = set()
    for i, entry in enumerate(raw):
        path = f"/interventions/{i}"
        entry = _require_object(entry, path, "intervention")
        _reject_unknown(entry, _INTERVENTION_KEYS, path)
        costs = _parse_costs(_require_section(entry, "costs", path), f"{path}/costs")
        try:
            item = Intervention(
                id=_string(entry, "id", path),
                label=_string(entry, "label", path),
                costs=costs,
                net_social_benefit=_number(entry, "net_social_benefit", path),
            )
        except ValidationError as exc:
            raise _retag(path, exc) from None
        if item.id in seen:
            raise ValidationError(
                f"duplicate intervention id {item.id!r}", field=f"{path}/id"
            )
        seen.add(item.id)
        items.append(item)

    combinations = top.get("combinations", False)
    if not isinstance(combinations, bool):
        raise ValidationError(
            f"expected a boolean, got {type(combinations).__name__}",
            field="/combinations",
        )
    return PortfolioInputs(
        interventions=tuple(items),
        model=model,
        rates=rates,
        tolerances=tolerances,
        combinations=combinations,
    )


def build_portfolio(inputs: PortfolioInputs, combinations: bool = False) -> Portfolio:
    """Expand (when asked) and order the parsed interventions."""
    items = list(inputs.interventions)
    if combinations or inputs.combinations:
        items = expand_combinations(items)
    return order_by_cost_ratio(items, inputs.rates, inputs.model, inputs.tolerances)


def scenario_to_dict(scenario: Scenario) -> dict:
    """Inverse of parse_scenario_document (always emits rates, not counts)."""
    return {
        "model": {
            "theta0": scenario.model.theta0,
            "theta1": scenario.model.theta1,
            "sigma": scenario.model.sigma,
        },
        "costs": {
            "c_tp": scenario.costs.c_tp,
            "c_fn": scenario.costs.c_fn,
            "c_fp": scenario.costs.c_fp,
            "c_tn": scenario.costs.c_tn,
        },
        "rates": {"p0": scenario.rates.p0, "p1": scenario.rates.p1},
        "tolerances": {
            "epsilon1": scenario.tolerances.epsilon1,
            "epsilon0": scenario.tolerances.epsilon0,
        },
    }


# --------------------------------------------------------------------------
# reports


def report_to_dict(report: DeterminationReport) -> dict:
    return {
        "verdict": report.verdict.value,
        "degenerate": report.degenerate,
        "cutoff": report.cutoff,
        "point": {"fpr": report.point.fpr, "tpr": report.point.tpr},
        "cost_ratio": report.cost_ratio,
        "expected_cost": report.expected_cost,
        "dist_red": report.dist_red,
        "dist_green": report.dist_green,
        "surprise_red": report.surprise_red,
        "surprise_green": report.surprise_green,
        "delta1": report.delta1,
        "delta0": report.delta0,
    }


def portfolio_report_to_dict(portfolio: Portfolio) -> dict:
    rows = []
    for item, report in member_reports(portfolio):
        rows.append(
            {
                "id": item.id,
                "label": item.label,
                "members": sorted(item.members),
                "net_social_benefit": item.net_social_benefit,
                "verdict": report.verdict.value,
                "degenerate": report.degenerate,
                "cutoff": report.cutoff,
                "cost_ratio": report.cost_ratio,
                "expected_cost": report.expected_cost,
                "dist_red": report.dist_red,
                "dist_green": report.dist_green,
            }
        )
    return {
        "interventions": rows,
        "feasible": list(feasible_red_set(portfolio)),
        "critical": critical_intervention(portfolio),
        "selected": bca_select(portfolio),
    }


def error_to_dict(exc: ValidationError) -> dict:
    return {"error": {"field": exc.field or "", "message": exc.message}}


# --------------------------------------------------------------------------
# ROC export


def validate_points(points) -> int:
    if isinstance(points, bool) or not isinstance(points, int):
        raise ValidationError(
            f"points must be an integer, got {points!r}", field="/points"
        )
    if not 2 <= points <= MAX_ROC_POINTS:
        raise ValidationError(
            f"points must lie in [2, {MAX_ROC_POINTS}], got {points}",
            field="/points",
        )
    return points


def roc_samples(
    model: GaussianSignalModel, points: int
) -> list[tuple[float, float, float, float]]:
    """Evenly spaced (cutoff, fpr, tpr, likelihood_ratio) rows.

    The sweep spans [theta0 - 6 sigma, theta1 + 6 sigma] endpoints
    included, so fpr runs from essentially 1 down to essentially 0. For
    a zero-separation model the density ratio column is identically 1,
    its limiting value.
    """
    points = validate_points(points)
    lo = model.theta0 - 6.0 * model.sigma
    hi = model.theta1 + 6.0 * model.sigma
    step = (hi - lo) / (points - 1)
    degenerate = discriminability(model) <= DEGENERATE_SEPARATION
    rows = []
    for i in range(points):
        cutoff = lo + i * step
        point = roc_point(model, cutoff)
        ratio = 1.0 if degenerate else likelihood_ratio(model, cutoff)
        rows.append((cutoff, point.fpr, point.tpr, ratio))
    return rows


def _csv_cell(value: float) -> str:
    if math.isinf(value):  # density ratio can overflow at extreme cutoffs
        return "inf" if value > 0 else "-inf"
    return format_number(value)


def roc_csv(scenario: Scenario, points: int, tangent: bool = False) -> str:
    """CSV export of the ROC sweep, optionally with the tangency block.

    The tangent block is written as comment lines so the numeric table
    stays machine-readable: the optimal cutoff, its operating point,
    and the iso-cost line through it (slope = cost ratio, intercept in
    ROC coordinates).
    """
    lines = ["cutoff,fpr,tpr,likelihood_ratio"]
    for cutoff, fpr, tpr, ratio in roc_samples(scenario.model, points):
        lines.append(
            f"{_csv_cell(cutoff)},{_csv_cell(fpr)},{_csv_cell(tpr)},{_csv_cell(ratio)}"
        )
    if tangent:
        cutoff = optimal_cutoff(scenario)
        point = optimal_operating_point(scenario)
        slope = cost_ratio(scenario.costs, scenario.rates)
        intercept = point.tpr - slope * point.fpr
        lines.append("# tangent")
        lines.append(f"# cutoff,{_csv_cell(cutoff)}")
        lines.append(f"# point,{_csv_cell(point.fpr)},{_csv_cell(point.tpr)}")
        lines.append(f"# slope,{_csv_cell(slope)}")
        lines.append(f"# intercept,{_csv_cell(intercept)}")
    return "\n".join(lines) + "\n"


def roc_payload(model: GaussianSignalModel, points: int) -> list[dict]:
    """ROC rows for the HTTP surface: array of {cutoff, fpr, tpr}."""
    return [
        {"cutoff": cutoff, "fpr": fpr, "tpr": tpr}
        for cutoff, fpr, tpr, _ in roc_samples(model, points)
    ]
