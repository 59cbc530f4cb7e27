/**
 * Portfolio tab: paste a portfolio document, get the ranked table back.
 * Parsing stops at JSON.parse; all judgement comes from /portfolio.
 */

import { api, ApiError } from "./api";
import type { PortfolioDocument, PortfolioReport } from "./types";
import { VERDICT_TEXT } from "./types";
import { formatValue } from "./roc_view";

export interface PortfolioHandles {
  root: HTMLElement;
  submit(): Promise<void>;
}

export function createPortfolioView(): PortfolioHandles {
  const root = document.createElement("section");
  root.className = "portfolio-view";

  const input = document.createElement("textarea");
  input.dataset.role = "portfolio-input";
  input.rows = 12;
  input.placeholder = '{"model": ..., "interventions": [...]}';

  const combinations = document.createElement("input");
  combinations.type = "checkbox";
  combinations.dataset.role = "portfolio-combinations";
  const combinationsLabel = document.createElement("label");
  combinationsLabel.append(combinations, " expand member combinations");

  const runButton = document.createElement("button");
  runButton.type = "button";
  runButton.dataset.role = "portfolio-run";
  runButton.textContent = "rank interventions";

  const errorLine = document.createElement("p");
  errorLine.className = "field-error";
  errorLine.dataset.role = "portfolio-error";

  const table = document.createElement("table");
  table.dataset.role = "portfolio-table";
  table.innerHTML =
    "<thead><tr><th>id</th><th>members</th><th>verdict</th>" +
    "<th>cost ratio</th><th>dist to red</th><th>net benefit</th>" +
    "</tr></thead><tbody></tbody>";

  const summary = document.createElement("p");
  summary.dataset.role = "portfolio-summary";

  root.append(
    input,
    combinationsLabel,
    runButton,
    errorLine,
    table,
    summary,
  );

  const renderReport = (report: PortfolioReport) => {
    const body = table.querySelector("tbody") as HTMLElement;
    body.textContent = "";
    for (const row of report.interventions) {
      const tr = document.createElement("tr");
      tr.dataset.interventionId = row.id;
      for (const cell of [
        row.id,
        row.members.join(", "),
        VERDICT_TEXT[row.verdict],
        formatValue(row.cost_ratio),
        formatValue(row.dist_red),
        formatValue(row.net_social_benefit),
      ]) {
        const td = document.createElement("td");
        td.textContent = cell;
        tr.append(td);
      }
      body.append(tr);
    }
    const feasible =
      report.feasible.length > 0 ? report.feasible.join(", ") : "none";
    summary.textContent =
      `feasible: ${feasible}; critical: ${report.critical ?? "none"}; ` +
      `selected: ${report.selected ?? "none"}`;
  };

  const submit = async () => {
    errorLine.textContent = "";
    let doc: PortfolioDocument;
    try {
      doc = JSON.parse(input.value) as PortfolioDocument;
    } catch (error) {
      errorLine.textContent = `document is not valid JSON: ${String(error)}`;
      return;
    }
    if (combinations.checked) doc.combinations = true;
    try {
      renderReport(await api.portfolio(doc));
    } catch (error) {
      if (error instanceof ApiError) {
        errorLine.textContent = `${error.field}: ${error.message}`;
      } else {
        errorLine.textContent = `request failed: ${String(error)}`;
      }
    }
  };

  runButton.addEventListener("click", () => {
    void submit();
  });

  return { root, submit };
}
