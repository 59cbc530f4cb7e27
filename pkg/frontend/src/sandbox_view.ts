/**
 * Harm-cost sweep tab: drag the miss-cost multiplier, watch the verdict
 * move through green, amber, red. Every verdict in the sweep is a
 * /determine response; the client only builds the scaled documents.
 */

import { api } from "./api";
import { DEBOUNCE_MS, debounce } from "./debounce";
import { RequestSequencer } from "./state";
import type { ScenarioDocument, VerdictWire } from "./types";
import { VERDICT_TEXT } from "./types";
import { formatValue } from "./roc_view";

/** Scale the miss-cost increment (c_fn - c_tp) by `scale`, keeping the
 *  rest of the document as-is. Mirrors the server's harm scaling. */
export function scaleHarmIncrement(
  doc: ScenarioDocument,
  scale: number,
): ScenarioDocument {
  return {
    model: { ...doc.model },
    costs: {
      ...doc.costs,
      c_fn: doc.costs.c_tp + (doc.costs.c_fn - doc.costs.c_tp) * scale,
    },
    rates: { ...doc.rates },
    tolerances: { ...doc.tolerances },
  };
}

export interface SweepTransition {
  from: VerdictWire;
  to: VerdictWire;
  /** last scale still showing `from` */
  lower: number;
  /** first scale showing `to` */
  upper: number;
}

export interface SweepResult {
  scales: number[];
  verdicts: VerdictWire[];
  transitions: SweepTransition[];
}

/** Run /determine across the given scale grid, in order. */
export async function sweepHarmScale(
  doc: ScenarioDocument,
  scales: number[],
): Promise<SweepResult> {
  const verdicts: VerdictWire[] = [];
  for (const scale of scales) {
    const report = await api.determine(scaleHarmIncrement(doc, scale));
    verdicts.push(report.verdict);
  }
  const transitions: SweepTransition[] = [];
  for (let i = 1; i < verdicts.length; i++) {
    const from = verdicts[i - 1]!;
    const to = verdicts[i]!;
    if (from !== to) {
      transitions.push({ from, to, lower: scales[i - 1]!, upper: scales[i]! });
    }
  }
  return { scales, verdicts, transitions };
}

export function defaultScaleGrid(): number[] {
  // three orders of magnitude, 61 log-spaced steps
  const scales: number[] = [];
  for (let i = 0; i <= 60; i++) {
    scales.push(Math.pow(10, -1.5 + (3 * i) / 60));
  }
  return scales;
}

export interface SandboxHandles {
  root: HTMLElement;
  runSweep(doc: ScenarioDocument, scales?: number[]): Promise<SweepResult>;
  setDocument(doc: ScenarioDocument): void;
}

export function createSandboxView(initial: ScenarioDocument): SandboxHandles {
  const root = document.createElement("section");
  root.className = "sandbox-view";
  let baseDocument = initial;

  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "-1.5";
  slider.max = "1.5";
  slider.step = "0.05";
  slider.value = "0";
  slider.dataset.role = "scale-slider";

  const readout = document.createElement("p");
  readout.dataset.role = "scale-readout";
  const light = document.createElement("span");
  light.dataset.role = "sandbox-verdict";

  const sweepButton = document.createElement("button");
  sweepButton.type = "button";
  sweepButton.dataset.role = "run-sweep";
  sweepButton.textContent = "sweep the whole range";

  const transitionsList = document.createElement("ul");
  transitionsList.dataset.role = "sweep-transitions";

  root.append(slider, readout, light, sweepButton, transitionsList);

  const sequencer = new RequestSequencer();

  const probe = async () => {
    const scale = Math.pow(10, Number(slider.value));
    readout.textContent = `scale ${formatValue(scale)}`;
    const seq = sequencer.next();
    try {
      const report = await api.determine(
        scaleHarmIncrement(baseDocument, scale),
      );
      if (!sequencer.accept(seq)) return;
      light.textContent = VERDICT_TEXT[report.verdict];
    } catch {
      if (!sequencer.accept(seq)) return;
      light.textContent = "?";
    }
  };
  const debouncedProbe = debounce(probe, DEBOUNCE_MS);
  slider.addEventListener("input", () => debouncedProbe());

  const renderTransitions = (result: SweepResult) => {
    transitionsList.textContent = "";
    if (result.transitions.length === 0) {
      const item = document.createElement("li");
      item.textContent = "no verdict change across the range";
      transitionsList.append(item);
      return;
    }
    for (const transition of result.transitions) {
      const item = document.createElement("li");
      item.textContent =
        `${VERDICT_TEXT[transition.from]} -> ${VERDICT_TEXT[transition.to]} ` +
        `between scale ${formatValue(transition.lower)} and ` +
        `${formatValue(transition.upper)}`;
      transitionsList.append(item);
    }
  };

  const runSweep = async (doc: ScenarioDocument, scales?: number[]) => {
    const result = await sweepHarmScale(doc, scales ?? defaultScaleGrid());
    renderTransitions(result);
    return result;
  };

  sweepButton.addEventListener("click", () => {
    void runSweep(baseDocument);
  });

  return {
    root,
    runSweep,
    setDocument: (doc) => {
      baseDocument = doc;
    },
  };
}
