/**
 * Scenario editor: one numeric widget per document field, p1 derived,
 * inline errors keyed by the same JSON-pointer paths the API uses, and
 * an export button that emits the exact document JSON.
 */

import type { ScenarioDocument } from "./types";
import type { FieldError } from "./validate";

interface FieldSpec {
  path: string;
  label: string;
}

const SECTIONS: Array<{ legend: string; fields: FieldSpec[] }> = [
  {
    legend: "signal",
    fields: [
      { path: "/model/theta0", label: "benign mean θ₀" },
      { path: "/model/theta1", label: "harmful mean θ₁" },
      { path: "/model/sigma", label: "noise σ" },
    ],
  },
  {
    legend: "costs",
    fields: [
      { path: "/costs/c_tp", label: "true positive c_tp" },
      { path: "/costs/c_fn", label: "false negative c_fn" },
      { path: "/costs/c_fp", label: "false positive c_fp" },
      { path: "/costs/c_tn", label: "true negative c_tn" },
    ],
  },
  {
    legend: "base rates",
    fields: [{ path: "/rates/p0", label: "benign prevalence p₀" }],
  },
  {
    legend: "tolerances",
    fields: [
      { path: "/tolerances/epsilon1", label: "red surprise bound ε₁" },
      { path: "/tolerances/epsilon0", label: "green surprise bound ε₀" },
    ],
  },
];

export interface EditorHandles {
  root: HTMLElement;
  readDocument(): ScenarioDocument;
  setDocument(doc: ScenarioDocument): void;
  showErrors(errors: FieldError[]): void;
  exportJson(): string;
  onEdit(callback: () => void): void;
}

function parseInput(raw: string): number {
  const trimmed = raw.trim();
  if (trimmed === "") return Number.NaN;
  return Number(trimmed);
}

export function createEditor(initial: ScenarioDocument): EditorHandles {
  const root = document.createElement("form");
  root.className = "editor";
  root.dataset.role = "editor";
  root.addEventListener("submit", (event) => event.preventDefault());

  const inputs = new Map<string, HTMLInputElement>();
  const errorSlots = new Map<string, HTMLElement>();

  for (const section of SECTIONS) {
    const fieldset = document.createElement("fieldset");
    const legend = document.createElement("legend");
    legend.textContent = section.legend;
    fieldset.append(legend);
    for (const field of section.fields) {
      const row = document.createElement("label");
      row.className = "field";
      const caption = document.createElement("span");
      caption.textContent = field.label;
      const input = document.createElement("input");
      input.type = "text";
      input.inputMode = "decimal";
      input.dataset.field = field.path;
      const error = document.createElement("span");
      error.className = "field-error";
      error.dataset.errorFor = field.path;
      row.append(caption, input, error);
      fieldset.append(row);
      inputs.set(field.path, input);
      errorSlots.set(field.path, error);
    }
    if (section.legend === "base rates") {
      const derived = document.createElement("p");
      derived.className = "derived";
      derived.innerHTML =
        'harmful prevalence p₁ = <span data-role="p1-display"></span>';
      fieldset.append(derived);
    }
    root.append(fieldset);
  }

  const generalErrors = document.createElement("div");
  generalErrors.className = "field-error";
  generalErrors.dataset.role = "editor-errors";
  root.append(generalErrors);

  const exportButton = document.createElement("button");
  exportButton.type = "button";
  exportButton.dataset.role = "export";
  exportButton.textContent = "export scenario JSON";
  root.append(exportButton);

  const p1Display = root.querySelector(
    '[data-role="p1-display"]',
  ) as HTMLElement;

  const value = (path: string): number =>
    parseInput((inputs.get(path) as HTMLInputElement).value);

  const refreshDerived = () => {
    const p0 = value("/rates/p0");
    p1Display.textContent = Number.isFinite(p0) ? String(1 - p0) : "?";
  };

  const readDocument = (): ScenarioDocument => {
    const p0 = value("/rates/p0");
    return {
      model: {
        theta0: value("/model/theta0"),
        theta1: value("/model/theta1"),
        sigma: value("/model/sigma"),
      },
      costs: {
        c_tp: value("/costs/c_tp"),
        c_fn: value("/costs/c_fn"),
        c_fp: value("/costs/c_fp"),
        c_tn: value("/costs/c_tn"),
      },
      rates: { p0, p1: 1 - p0 },
      tolerances: {
        epsilon1: value("/tolerances/epsilon1"),
        epsilon0: value("/tolerances/epsilon0"),
      },
    };
  };

  const setDocument = (doc: ScenarioDocument) => {
    const flat: Array<[string, number]> = [
      ["/model/theta0", doc.model.theta0],
      ["/model/theta1", doc.model.theta1],
      ["/model/sigma", doc.model.sigma],
      ["/costs/c_tp", doc.costs.c_tp],
      ["/costs/c_fn", doc.costs.c_fn],
      ["/costs/c_fp", doc.costs.c_fp],
      ["/costs/c_tn", doc.costs.c_tn],
      ["/rates/p0", doc.rates.p0],
      ["/tolerances/epsilon1", doc.tolerances.epsilon1],
      ["/tolerances/epsilon0", doc.tolerances.epsilon0],
    ];
    for (const [path, number] of flat) {
      (inputs.get(path) as HTMLInputElement).value = String(number);
    }
    refreshDerived();
  };

  const showErrors = (errors: FieldError[]) => {
    for (const slot of errorSlots.values()) slot.textContent = "";
    for (const input of inputs.values()) input.classList.remove("invalid");
    generalErrors.textContent = "";
    for (const error of errors) {
      const slot = errorSlots.get(error.field);
      if (slot) {
        slot.textContent = error.message;
        inputs.get(error.field)?.classList.add("invalid");
      } else {
        // path without a widget (whole-document problems, API echoes)
        generalErrors.textContent = `${error.field}: ${error.message}`;
      }
    }
  };

  const exportJson = () => JSON.stringify(readDocument(), null, 2);

  exportButton.addEventListener("click", () => {
    const text = exportJson();
    if (typeof URL.createObjectURL !== "function") return;
    const url = URL.createObjectURL(
      new Blob([text], { type: "application/json" }),
    );
    const anchor = document.createElement("a");
    anchor.href = url;
    anchor.download = "scenario.json";
    anchor.click();
    URL.revokeObjectURL(url);
  });

  const editCallbacks: Array<() => void> = [];
  root.addEventListener("input", () => {
    refreshDerived();
    for (const callback of editCallbacks) callback();
  });

  setDocument(initial);

  return {
    root,
    readDocument,
    setDocument,
    showErrors,
    exportJson,
    onEdit: (callback) => editCallbacks.push(callback),
  };
}
