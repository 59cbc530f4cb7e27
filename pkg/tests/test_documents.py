"""Document parsing, canonical serialization, report and ROC exports."""

import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from raglight.documents import (
    MAX_ROC_POINTS,
    build_portfolio,
    canonical_json,
    error_to_dict,
    format_number,
    parse_portfolio_document,
    parse_scenario_document,
    portfolio_report_to_dict,
    report_to_dict,
    roc_csv,
    roc_payload,
    roc_samples,
    scenario_to_dict,
    validate_points,
)
from raglight.engine import Verdict, determine
from raglight.errors import ValidationError
from raglight.signal_model import GaussianSignalModel


def scenario_doc(**overrides):
    doc = {
        "model": {"theta0": 0.0, "theta1": 2.0, "sigma": 1.0},
        "costs": {"c_tp": 0.0, "c_fn": 1.0, "c_fp": 1.0, "c_tn": 0.0},
        "rates": {"p0": 0.5, "p1": 0.5},
        "tolerances": {"epsilon1": 0.01, "epsilon0": 0.01},
    }
    doc.update(overrides)
    return doc


class TestFormatNumber:
    def test_short_decimals_stay_short(self):
        assert format_number(0.5) == "0.5"
        assert format_number(1.0) == "1"

    def test_integers(self):
        assert format_number(3) == "3"

    def test_seventeen_digits(self):
        assert format_number(1.0 / 3.0) == "0.33333333333333331"

    @given(st.floats(allow_nan=False, allow_infinity=False))
    @settings(max_examples=300, deadline=None)
    def test_round_trips_any_double(self, x):
        assert float(format_number(x)) == x

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError, match="finite"):
            format_number(math.inf)

    def test_bool_rejected(self):
        with pytest.raises(TypeError):
            format_number(True)


class TestCanonicalJson:
    def test_scalars(self):
        assert canonical_json(None) == "null"
        assert canonical_json(True) == "true"
        assert canonical_json("a\"b") == '"a\\"b"'
        assert canonical_json(2) == "2"

    def test_empty_containers(self):
        assert canonical_json({}) == "{}"
        assert canonical_json([]) == "[]"

    def test_indentation_and_key_order(self):
        text = canonical_json({"b": 1, "a": [1.5, {"x": None}]})
        assert text == (
            '{\n  "b": 1,\n  "a": [\n    1.5,\n    {\n      "x": null\n'
            "    }\n  ]\n}"
        )

    def test_parses_back_equal(self):
        payload = {"v": [0.1, 2.0 / 3.0], "flag": False, "name": "x"}
        assert json.loads(canonical_json(payload)) == payload

    def test_deterministic(self):
        payload = {"a": 1.0 / 7.0, "b": [math.pi]}
        assert canonical_json(payload) == canonical_json(payload)

    def test_unserializable_type_rejected(self):
        with pytest.raises(TypeError):
            canonical_json({"x": object()})


class TestParseScenarioDocument:
    def test_valid(self):
        sc = parse_scenario_document(scenario_doc())
        assert sc.model.theta1 == 2.0
        assert sc.rates.p0 == 0.5

    def test_counts_accepted(self):
        doc = scenario_doc()
        del doc["rates"]
        doc["counts"] = {"tp": 40, "fn": 10, "fp": 5, "tn": 45}
        sc = parse_scenario_document(doc)
        assert sc.rates.p0 == 0.5

    def test_missing_section_path(self):
        doc = scenario_doc()
        del doc["model"]
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(doc)
        assert exc.value.field == "/model"

    def test_constructor_error_is_retagged(self):
        doc = scenario_doc(rates={"p0": 1.2, "p1": -0.2})
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(doc)
        assert exc.value.field == "/rates/p0"

    def test_nested_prefix(self):
        doc = scenario_doc()
        doc["model"]["sigma"] = 0.0
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(doc, path="/scenario")
        assert exc.value.field == "/scenario/model/sigma"

    def test_nested_prefix_on_helper_errors(self):
        doc = scenario_doc()
        del doc["model"]["sigma"]
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(doc, path="/scenario")
        assert exc.value.field == "/scenario/model/sigma"

    def test_both_rates_and_counts_rejected(self):
        doc = scenario_doc(counts={"tp": 1, "fn": 1, "fp": 1, "tn": 1})
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(doc)
        assert exc.value.field == "/counts"
        assert "not both" in exc.value.message

    def test_neither_rates_nor_counts(self):
        doc = scenario_doc()
        del doc["rates"]
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(doc)
        assert exc.value.field == "/rates"

    def test_unknown_top_level_key(self):
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(scenario_doc(extra=1))
        assert exc.value.field == "/extra"

    def test_unknown_nested_key(self):
        doc = scenario_doc(model={"theta0": 0.0, "theta1": 1.0, "sigma": 1.0,
                                  "skew": 2.0})
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(doc)
        assert exc.value.field == "/model/skew"

    def test_missing_field_path(self):
        doc = scenario_doc(costs={"c_tp": 0.0, "c_fn": 1.0, "c_fp": 1.0})
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(doc)
        assert exc.value.field == "/costs/c_tn"

    def test_wrong_type_path(self):
        doc = scenario_doc(tolerances={"epsilon1": "small", "epsilon0": 0.01})
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(doc)
        assert exc.value.field == "/tolerances/epsilon1"
        assert "expected a number" in exc.value.message

    def test_bool_is_not_a_number(self):
        doc = scenario_doc(rates={"p0": True, "p1": 0.5})
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(doc)
        assert exc.value.field == "/rates/p0"

    def test_float_count_rejected_with_path(self):
        doc = scenario_doc()
        del doc["rates"]
        doc["counts"] = {"tp": 40.5, "fn": 10, "fp": 5, "tn": 45}
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(doc)
        assert exc.value.field == "/counts/tp"

    def test_section_must_be_object(self):
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(scenario_doc(model=[1, 2, 3]))
        assert exc.value.field == "/model"

    def test_document_must_be_object(self):
        with pytest.raises(ValidationError):
            parse_scenario_document([])

    def test_nonfinite_cost_kept_as_protected_value_error(self):
        doc = scenario_doc(costs={"c_tp": 0.0, "c_fn": math.inf, "c_fp": 1.0,
                                  "c_tn": 0.0})
        with pytest.raises(ValidationError) as exc:
            parse_scenario_document(doc)
        assert exc.value.field == "/costs/c_fn"
        assert "protected value" in exc.value.message

    def test_round_trip_through_dict(self):
        sc = parse_scenario_document(scenario_doc())
        again = parse_scenario_document(scenario_to_dict(sc))
        assert again == sc


class TestParsePortfolioDocument:
    def doc(self):
        return {
            "model": {"theta0": 0.0, "theta1": 2.0, "sigma": 1.0},
            "rates": {"p0": 0.5, "p1": 0.5},
            "tolerances": {"epsilon1": 0.05, "epsilon0": 0.05},
            "interventions": [
                {"id": "a", "label": "one",
                 "costs": {"c_tp": 0.0, "c_fn": 1.0, "c_fp": 1.0, "c_tn": 0.0},
                 "net_social_benefit": 1.0},
                {"id": "b", "label": "two",
                 "costs": {"c_tp": 0.0, "c_fn": 2.0, "c_fp": 0.5, "c_tn": 0.0},
                 "net_social_benefit": -1.0},
            ],
        }

    def test_valid(self):
        inputs = parse_portfolio_document(self.doc())
        assert len(inputs.interventions) == 2
        assert inputs.combinations is False

    def test_interventions_required(self):
        doc = self.doc()
        del doc["interventions"]
        with pytest.raises(ValidationError) as exc:
            parse_portfolio_document(doc)
        assert exc.value.field == "/interventions"

    def test_empty_array_rejected(self):
        doc = self.doc()
        doc["interventions"] = []
        with pytest.raises(ValidationError, match="nonempty"):
            parse_portfolio_document(doc)

    def test_item_error_carries_index(self):
        doc = self.doc()
        doc["interventions"][1]["costs"]["c_fp"] = 0.0
        with pytest.raises(ValidationError) as exc:
            parse_portfolio_document(doc)
        assert exc.value.field == "/interventions/1/costs/c_fp"

    def test_missing_item_field(self):
        doc = self.doc()
        del doc["interventions"][0]["label"]
        with pytest.raises(ValidationError) as exc:
            parse_portfolio_document(doc)
        assert exc.value.field == "/interventions/0/label"

    def test_duplicate_ids(self):
        doc = self.doc()
        doc["interventions"][1]["id"] = "a"
        with pytest.raises(ValidationError) as exc:
            parse_portfolio_document(doc)
        assert exc.value.field == "/interventions/1/id"

    def test_combinations_flag_must_be_bool(self):
        doc = self.doc()
        doc["combinations"] = "yes"
        with pytest.raises(ValidationError) as exc:
            parse_portfolio_document(doc)
        assert exc.value.field == "/combinations"

    def test_build_expands_when_flagged(self):
        doc = self.doc()
        doc["combinations"] = True
        portfolio = build_portfolio(parse_portfolio_document(doc))
        assert len(portfolio.interventions) == 3

    def test_build_expands_on_explicit_request(self):
        portfolio = build_portfolio(
            parse_portfolio_document(self.doc()), combinations=True
        )
        assert len(portfolio.interventions) == 3


class TestReportDicts:
    def test_report_key_order(self):
        report = determine(parse_scenario_document(scenario_doc()))
        payload = report_to_dict(report)
        assert list(payload) == [
            "verdict", "degenerate", "cutoff", "point", "cost_ratio",
            "expected_cost", "dist_red", "dist_green", "surprise_red",
            "surprise_green", "delta1", "delta0",
        ]
        assert payload["verdict"] == "AmberLight"
        assert payload["point"] == {"fpr": report.point.fpr,
                                    "tpr": report.point.tpr}

    def test_degenerate_report_serializes_null_cutoff(self):
        doc = scenario_doc(model={"theta0": 1.0, "theta1": 1.0, "sigma": 1.0})
        payload = report_to_dict(determine(parse_scenario_document(doc)))
        assert payload["cutoff"] is None
        assert payload["degenerate"] is True
        assert '"cutoff": null' in canonical_json(payload)

    def test_verdict_values_are_wire_names(self):
        assert Verdict.RED.value == "RedLight"
        assert Verdict.AMBER.value == "AmberLight"
        assert Verdict.GREEN.value == "GreenLight"

    def test_portfolio_report_shape(self, load_fixture):
        inputs = parse_portfolio_document(load_fixture("portfolio.json"))
        payload = portfolio_report_to_dict(build_portfolio(inputs))
        assert [row["id"] for row in payload["interventions"]] == [
            "ban", "audit", "screen", "filter"
        ]
        assert payload["feasible"] == ["screen", "filter"]
        assert payload["critical"] == "screen"
        assert payload["selected"] == "screen"
        row = payload["interventions"][0]
        assert list(row) == [
            "id", "label", "members", "net_social_benefit", "verdict",
            "degenerate", "cutoff", "cost_ratio", "expected_cost",
            "dist_red", "dist_green",
        ]
        assert row["members"] == ["ban"]

    def test_portfolio_report_nulls(self, load_fixture):
        inputs = parse_portfolio_document(load_fixture("portfolio_empty.json"))
        payload = portfolio_report_to_dict(build_portfolio(inputs))
        assert payload["feasible"] == []
        assert payload["critical"] is None
        assert payload["selected"] is None

    def test_error_payload(self):
        exc = ValidationError("p0 must lie strictly inside (0,1), got 1.2",
                              field="/rates/p0")
        assert error_to_dict(exc) == {
            "error": {"field": "/rates/p0",
                      "message": "p0 must lie strictly inside (0,1), got 1.2"}
        }

    def test_error_payload_without_field(self):
        exc = ValidationError("malformed")
        assert error_to_dict(exc)["error"]["field"] == ""


class TestRocExport:
    MODEL = GaussianSignalModel(0.0, 2.0, 1.0)

    def test_three_point_sweep(self):
        rows = roc_samples(self.MODEL, 3)
        cutoffs = [row[0] for row in rows]
        assert cutoffs == [-6.0, 1.0, 8.0]  # ends plus the exact midpoint
        assert rows[1][1] == pytest.approx(0.1586552539314571, abs=1e-12)
        assert rows[1][3] == pytest.approx(1.0, rel=1e-15)

    def test_fpr_strictly_decreasing(self):
        rows = roc_samples(self.MODEL, 201)
        fprs = [row[1] for row in rows]
        assert all(a > b for a, b in zip(fprs, fprs[1:]))

    def test_degenerate_ratio_column_is_one(self):
        rows = roc_samples(GaussianSignalModel(1.0, 1.0, 1.0), 5)
        assert all(row[3] == 1.0 for row in rows)

    def test_validate_points_bounds(self):
        assert validate_points(2) == 2
        assert validate_points(MAX_ROC_POINTS) == MAX_ROC_POINTS
        for bad in (1, 0, -5, MAX_ROC_POINTS + 1):
            with pytest.raises(ValidationError) as exc:
                validate_points(bad)
            assert exc.value.field == "/points"
        with pytest.raises(ValidationError):
            validate_points(True)
        with pytest.raises(ValidationError):
            validate_points(2.0)

    def test_csv_layout(self, load_fixture):
        sc = parse_scenario_document(load_fixture("amber.json"))
        text = roc_csv(sc, 3)
        lines = text.splitlines()
        assert lines[0] == "cutoff,fpr,tpr,likelihood_ratio"
        assert len(lines) == 4
        assert lines[2].startswith("1,")
        assert text.endswith("\n")

    def test_csv_tangent_block(self, load_fixture):
        sc = parse_scenario_document(load_fixture("amber.json"))
        lines = roc_csv(sc, 3, tangent=True).splitlines()
        assert lines[4] == "# tangent"
        assert lines[5] == "# cutoff,1"
        point = lines[6].split(",")
        assert point[0] == "# point"
        assert float(point[1]) == pytest.approx(0.1586552539314571, abs=1e-12)
        assert lines[7] == "# slope,1"
        intercept = float(lines[8].split(",")[1])
        assert intercept == pytest.approx(
            0.841344746068543 - 0.1586552539314571, abs=1e-12
        )

    def test_csv_inf_ratio_cell(self):
        # a huge separation overflows the density ratio at the far end
        doc = scenario_doc(model={"theta0": 0.0, "theta1": 80.0, "sigma": 1.0})
        sc = parse_scenario_document(doc)
        text = roc_csv(sc, 3)
        assert ",inf" in text
        for line in text.splitlines()[1:]:
            assert "Infinity" not in line

    def test_payload_shape(self):
        payload = roc_payload(self.MODEL, 3)
        assert payload == [
            {"cutoff": row[0], "fpr": row[1], "tpr": row[2]}
            for row in roc_samples(self.MODEL, 3)
        ]
