"""Regenerate the UI test fixtures from the backend.

Every verdict, report, ROC row, and band endpoint in the fixtures is
produced by the real CLI and HTTP surfaces, so the UI tests replay
recorded server behavior instead of reimplementing any of it. Run from
anywhere; writes into frontend/tests/fixtures/.
"""

import io
import json
import math
import pathlib
import tempfile
from contextlib import redirect_stdout

import numpy as np
from fastapi.testclient import TestClient

from raglight.api import create_app
from raglight.cli import main
from raglight.documents import parse_scenario_document
from raglight.engine import optimal_cutoff
from raglight.portfolio import amber_scale_band

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"
BACKEND_DATA = (
    pathlib.Path(__file__).resolve().parents[2] / "tests" / "data"
)


def document(theta0, theta1, sigma, c_fn, c_fp, p0, eps1, eps0):
    return {
        "model": {"theta0": theta0, "theta1": theta1, "sigma": sigma},
        "costs": {"c_tp": 0.0, "c_fn": c_fn, "c_fp": c_fp, "c_tn": 0.0},
        "rates": {"p0": p0, "p1": 1.0 - p0},
        "tolerances": {"epsilon1": eps1, "epsilon0": eps0},
    }


def scripted_documents():
    eps_fig = 0.004 / math.sqrt(2.0)
    docs = [
        ("symmetric-amber", document(0.0, 2.0, 1.0, 1.0, 1.0, 0.5, 0.01, 0.01)),
        ("deep-red", document(0.0, 1.0, 1.0, 1.0, math.exp(-5.0), 0.5,
                              eps_fig, eps_fig)),
        ("deep-green", document(0.0, 1.0, 1.0, 1.0, math.exp(5.0), 0.5,
                                eps_fig, eps_fig)),
        ("degenerate-balanced", document(1.0, 1.0, 2.0, 1.0, 1.0, 0.5,
                                         0.01, 0.01)),
        ("degenerate-red", document(0.0, 0.0, 1.0, 1.0, 0.999, 0.5,
                                    0.05, 0.05)),
        ("degenerate-green", document(0.0, 0.0, 1.0, 1.0, 1.001, 0.5,
                                      0.05, 0.05)),
        ("tiny-tolerance", document(0.0, 2.0, 1.0, 1.0, 1.0, 0.5,
                                    1e-6, 1e-6)),
        ("near-red", document(0.0, 1.0, 1.0, 1.0, math.exp(-4.0), 0.5,
                              eps_fig, eps_fig)),
        ("high-prevalence-amber", document(0.0, 1.0, 1.0, 1.0, 1.0, 0.9,
                                           0.01, 0.01)),
        ("low-prevalence-amber", document(0.0, 1.0, 1.0, 1.0, 1.0, 0.1,
                                          0.01, 0.01)),
    ]
    # ten random scenarios from the same envelope the backend self-check
    # samples; reject optima so far out that nothing interesting renders
    rng = np.random.default_rng(1234)
    while len(docs) < 20:
        theta0 = float(rng.uniform(-2.0, 2.0))
        sigma = float(rng.uniform(0.2, 3.0))
        d = float(rng.uniform(0.2, 4.0))
        c_fn = float(10.0 ** rng.uniform(-2.0, 2.0))
        c_fp = float(10.0 ** rng.uniform(-2.0, 2.0))
        p0 = float(rng.uniform(0.05, 0.95))
        doc = document(theta0, theta0 + d * sigma, sigma, c_fn, c_fp, p0,
                       0.05, 0.05)
        scenario = parse_scenario_document(doc)
        z_star = (optimal_cutoff(scenario) - theta0) / sigma
        if not -4.0 <= z_star <= d + 4.0:
            continue
        docs.append((f"random-{len(docs) - 9:02d}", doc))
    return docs


def cli_determine_json(doc) -> str:
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(doc, fh)
        path = fh.name
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(["determine", "--scenario", path, "--format", "json"])
    pathlib.Path(path).unlink()
    assert code == 0, f"cli determine failed with {code}"
    return buffer.getvalue()


def main_fixtures():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())

    scenarios = []
    for name, doc in scripted_documents():
        cli_text = cli_determine_json(doc)
        response = client.post("/api/v1/determine", json=doc)
        assert response.status_code == 200, response.text
        assert response.content.decode("utf-8") == cli_text, name
        roc = client.post(
            "/api/v1/roc", json={"scenario": doc, "points": 33}
        )
        assert roc.status_code == 200
        scenarios.append(
            {
                "name": name,
                "document": doc,
                "report": response.json(),
                "roc": roc.json(),
            }
        )
    (FIXTURES / "scenarios.json").write_text(
        json.dumps(scenarios, indent=2) + "\n", encoding="utf-8"
    )

    # harm-scale sweep: 61 log-spaced multipliers over three decades
    base = document(0.0, 1.0, 1.0, 1.0, 1.0, 0.5, 0.05, 0.05)
    scales = [10.0 ** (-1.5 + 3.0 * i / 60.0) for i in range(61)]
    verdicts = []
    for scale in scales:
        scaled = json.loads(json.dumps(base))
        scaled["costs"]["c_fn"] = (
            base["costs"]["c_tp"]
            + (base["costs"]["c_fn"] - base["costs"]["c_tp"]) * scale
        )
        response = client.post("/api/v1/determine", json=scaled)
        assert response.status_code == 200, response.text
        verdicts.append(response.json()["verdict"])
    lower, upper = amber_scale_band(
        parse_scenario_document(base), s_min=scales[0], s_max=scales[-1]
    )
    order = [v for i, v in enumerate(verdicts) if i == 0 or v != verdicts[i - 1]]
    assert order == ["GreenLight", "AmberLight", "RedLight"], order
    first_amber = verdicts.index("AmberLight")
    first_red = verdicts.index("RedLight")
    assert scales[first_amber - 1] < lower <= scales[first_amber]
    assert scales[first_red - 1] < upper <= scales[first_red]
    (FIXTURES / "sweep.json").write_text(
        json.dumps(
            {
                "document": base,
                "scales": scales,
                "verdicts": verdicts,
                "band": {"lower": lower, "upper": upper},
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )

    portfolio_doc = json.loads(
        (BACKEND_DATA / "portfolio.json").read_text(encoding="utf-8")
    )
    response = client.post("/api/v1/portfolio", json=portfolio_doc)
    assert response.status_code == 200, response.text
    (FIXTURES / "portfolio.json").write_text(
        json.dumps(
            {"document": portfolio_doc, "report": response.json()}, indent=2
        )
        + "\n",
        encoding="utf-8",
    )
    print(f"wrote fixtures to {FIXTURES}")


if __name__ == "__main__":
    main_fixtures()
