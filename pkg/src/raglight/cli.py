"""Command-line surface.

Subcommands mirror the analysis pipeline: ``determine`` for a single
verdict, ``roc`` for curve export, ``portfolio`` for ranked multi-
intervention reports, ``compare``/``voi``/``sandbox`` for the fixed-level
baseline, option-value and cost-scaling analyses, ``verify`` for the
oracle cross-checks, and ``serve`` for the HTTP service.

Exit codes: 0 success, 2 validation or usage error, 3 I/O error.
JSON output goes through the canonical serializer, so a report printed
here is byte-identical to the one the HTTP service returns for the
same document.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import socket
import sys

from . import __version__
from .baselines import fixed_alpha_regret, np_test
from .documents import (
    build_portfolio,
    canonical_json,
    parse_portfolio_document,
    parse_scenario_document,
    portfolio_report_to_dict,
    report_to_dict,
    roc_csv,
)
from .engine import (
    Scenario,
    determine,
    expected_cost,
    optimal_operating_point,
)
from .engine import surprise_red as closed_surprise_red
from .errors import RaglightError, ValidationError
from .oracle import (
    default_grid,
    grid_min_expected_cost,
    mc_surprise,
    quadrature_normal_cdf,
    trapezoid_auc,
)
from .portfolio import (
    amber_scale_band,
    costs_with_option_value,
    quasi_option_value,
)
from .signal_model import auc, discriminability, normal_cdf, roc_point

DEFAULT_BIND = "127.0.0.1"
BIND_ENV_VAR = "RAGLIGHT_BIND"


def _print_error(exc: Exception) -> None:
    field = getattr(exc, "field", None)
    if field:
        print(f"error: {field}: {exc}", file=sys.stderr)
    else:
        print(f"error: {exc}", file=sys.stderr)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_scenario(path: str) -> Scenario:
    return parse_scenario_document(_load_json(path))


def _emit(payload: dict) -> None:
    print(canonical_json(payload))


def _fmt(value) -> str:
    if value is None:
        return "none"
    return format(float(value), ".17g")


# --------------------------------------------------------------------------
# subcommand handlers


def _cmd_determine(args) -> int:
    report = determine(_load_scenario(args.scenario))
    if args.format == "text":
        print(report.verdict.name)
        print(f"  cutoff      {_fmt(report.cutoff)}")
        print(f"  cost_ratio  {_fmt(report.cost_ratio)}")
        print(f"  dist_red    {_fmt(report.dist_red)}")
        print(f"  dist_green  {_fmt(report.dist_green)}")
    else:
        _emit(report_to_dict(report))
    return 0


def _cmd_roc(args) -> int:
    scenario = _load_scenario(args.scenario)
    _write_text(args.out, roc_csv(scenario, args.points, tangent=args.tangent))
    return 0


def _cmd_portfolio(args) -> int:
    inputs = parse_portfolio_document(_load_json(args.portfolio))
    portfolio = build_portfolio(inputs, combinations=args.combinations)
    text = canonical_json(portfolio_report_to_dict(portfolio)) + "\n"
    _write_text(args.out, text)
    return 0


def _cmd_compare(args) -> int:
    scenario = _load_scenario(args.scenario)
    test = np_test(scenario.model, args.alpha)
    fixed_point = roc_point(scenario.model, test.critical_value)
    optimal_point = optimal_operating_point(scenario)
    _emit(
        {
            "alpha": test.alpha,
            "critical_value": test.critical_value,
            "power": test.power,
            "fixed_point": {"fpr": fixed_point.fpr, "tpr": fixed_point.tpr},
            "fixed_expected_cost": expected_cost(
                scenario.costs, scenario.rates, fixed_point
            ),
            "optimal_alpha": optimal_point.fpr,
            "optimal_expected_cost": expected_cost(
                scenario.costs, scenario.rates, optimal_point
            ),
            "regret": fixed_alpha_regret(scenario, args.alpha),
        }
    )
    return 0


def _cmd_voi(args) -> int:
    scenario = _load_scenario(args.scenario)
    dprime_now = discriminability(scenario.model)
    value = quasi_option_value(
        scenario.costs, scenario.rates, dprime_now, args.dprime_future
    )
    augmented = costs_with_option_value(
        scenario.costs, scenario.rates, dprime_now, args.dprime_future
    )
    _emit(
        {
            "dprime_now": dprime_now,
            "dprime_future": float(args.dprime_future),
            "quasi_option_value": value,
            "augmented_c_fn": augmented.c_fn,
        }
    )
    return 0


def _cmd_sandbox(args) -> int:
    scenario = _load_scenario(args.scenario)
    band = amber_scale_band(scenario, s_min=args.s_min, s_max=args.s_max)
    _emit(
        {
            "s_min": float(args.s_min),
            "s_max": float(args.s_max),
            "band": None if band is None else [band[0], band[1]],
        }
    )
    return 0


def _cmd_serve(args) -> int:
    bind = args.bind or os.environ.get(BIND_ENV_VAR, DEFAULT_BIND)
    # probe the port up front: a clean exit code beats a server traceback
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((bind, args.port))
    except OSError as exc:
        print(f"error: cannot bind {bind}:{args.port}: {exc}", file=sys.stderr)
        return 3
    finally:
        probe.close()

    import uvicorn

    from .api import create_app

    uvicorn.run(create_app(), host=bind, port=args.port, log_level="info")
    return 0


# --------------------------------------------------------------------------
# oracle cross-checks (the auditors' entry point)


def _cmd_verify(args) -> int:
    import numpy as np

    from .engine import (
        BaseRates,
        CostMatrix,
        Tolerances,
        optimal_cutoff,
    )
    from .signal_model import GaussianSignalModel

    rng = np.random.default_rng(args.seed)
    failures = 0

    def check(label: str, ok: bool, detail: str) -> None:
        nonlocal failures
        status = "PASS" if ok else "FAIL"
        print(f"verify: {label:<28s} {status}  {detail}")
        if not ok:
            failures += 1

    # 1. closed-form cutoff against the grid argmin
    worst = 0.0
    for _ in range(args.scenarios):
        while True:
            theta0 = rng.uniform(-2.0, 2.0)
            sigma = rng.uniform(0.2, 3.0)
            d = rng.uniform(0.2, 4.0)
            model = GaussianSignalModel(theta0, theta0 + d * sigma, sigma)
            costs = CostMatrix(
                c_tp=0.0,
                c_fn=float(10.0 ** rng.uniform(-2.0, 2.0)),
                c_fp=float(10.0 ** rng.uniform(-2.0, 2.0)),
                c_tn=0.0,
            )
            p0 = float(rng.uniform(0.05, 0.95))
            rates = BaseRates(p0, 1.0 - p0)
            scenario = Scenario(
                model=model,
                costs=costs,
                rates=rates,
                tolerances=Tolerances(0.05, 0.05),
            )
            z_star = (optimal_cutoff(scenario) - theta0) / sigma
            # keep the optimum where the cost surface has usable curvature
            if -4.0 <= z_star <= d + 4.0:
                break
        grid_cutoff, _ = grid_min_expected_cost(scenario, default_grid(model))
        worst = max(worst, abs(grid_cutoff - optimal_cutoff(scenario)) / sigma)
    check(
        "cutoff-vs-grid",
        worst <= 1e-4,
        f"worst |closed - argmin| = {worst:.3e} sigma over {args.scenarios} scenarios",
    )

    # 2. quadrature CDF against the analytic one
    worst = max(
        abs(quadrature_normal_cdf(z) - normal_cdf(z))
        for z in (-5.0, -3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0, 5.0)
    )
    check("cdf-vs-quadrature", worst <= 1e-12, f"worst abs diff = {worst:.3e}")

    # 3. closed-form AUC against trapezoid integration
    worst = 0.0
    for d in (0.5, 1.0, 2.0, 3.0):
        model = GaussianSignalModel(0.0, d, 1.0)
        worst = max(worst, abs(trapezoid_auc(model) - auc(model)))
    check("auc-vs-trapezoid", worst <= 1e-6, f"worst abs diff = {worst:.3e}")

    # 4. closed-form surprise against Monte Carlo
    model = GaussianSignalModel(0.0, 1.0, 1.0)
    scenario = Scenario(
        model=model,
        costs=CostMatrix(0.0, 1.0, 1.0, 0.0),
        rates=BaseRates(0.5, 0.5),
        tolerances=Tolerances(0.05, 0.05),
    )
    red_mc, _ = mc_surprise(scenario, 0.5, n=1_000_000, seed=args.seed)
    red_closed = closed_surprise_red(scenario.rates, roc_point(model, 0.5))
    envelope = 3.0 * 0.5 / math.sqrt(1_000_000.0)
    diff = abs(red_mc - red_closed)
    check(
        "surprise-vs-montecarlo",
        diff <= envelope,
        f"abs diff = {diff:.3e}, 3-sigma envelope = {envelope:.3e}",
    )

    return 0 if failures == 0 else 1


# --------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raglight",
        description="Red/amber/green determinations for regulate-or-wait decisions.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("determine", help="verdict for one scenario document")
    p.add_argument("--scenario", required=True, help="path to a scenario JSON file")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(handler=_cmd_determine)

    p = sub.add_parser("roc", help="export the ROC sweep as CSV")
    p.add_argument("--scenario", required=True)
    p.add_argument("--points", required=True, type=int)
    p.add_argument("--out", required=True, help="output path, or - for stdout")
    p.add_argument(
        "--tangent",
        action="store_true",
        help="append the optimal point and iso-cost line block",
    )
    p.set_defaults(handler=_cmd_roc)

    p = sub.add_parser("portfolio", help="rank and judge a set of interventions")
    p.add_argument("--portfolio", required=True, help="path to a portfolio JSON file")
    p.add_argument(
        "--combinations",
        action="store_true",
        help="expand all nonempty member combinations before ranking",
    )
    p.add_argument("--out", default="-", help="output path, or - for stdout")
    p.set_defaults(handler=_cmd_portfolio)

    p = sub.add_parser("compare", help="regret of a fixed-level test")
    p.add_argument("--scenario", required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("voi", help="quasi-option value of waiting for evidence")
    p.add_argument("--scenario", required=True)
    p.add_argument("--dprime-future", required=True, type=float)
    p.set_defaults(handler=_cmd_voi)

    p = sub.add_parser("sandbox", help="harm-cost scale band that stays amber")
    p.add_argument("--scenario", required=True)
    p.add_argument("--s-min", required=True, type=float)
    p.add_argument("--s-max", required=True, type=float)
    p.set_defaults(handler=_cmd_sandbox)

    p = sub.add_parser("verify", help="cross-check closed forms against oracles")
    p.add_argument("--scenarios", type=int, default=25)
    p.add_argument("--seed", type=int, default=20260819)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP JSON service")
    p.add_argument("--port", required=True, type=int)
    p.add_argument(
        "--bind",
        default=None,
        help=f"bind address (default: ${BIND_ENV_VAR} or {DEFAULT_BIND})",
    )
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.handler(args)
    except ValidationError as exc:
        _print_error(exc)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: document is not valid JSON: {exc}", file=sys.stderr)
        return 2
    except RaglightError as exc:
        _print_error(exc)
        return 2
    except OSError as exc:
        _print_error(exc)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
