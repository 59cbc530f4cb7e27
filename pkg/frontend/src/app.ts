/**
 * Wires the editor, chart, portfolio, and sweep tabs into the what-if
 * loop: edits are validated locally, debounced, sent to /determine and
 * /roc, and acknowledged responses drive the display. Responses that
 * arrive out of order are dropped; failures keep the last good state
 * on screen behind a stale banner with a retry button.
 */

import { api, ApiError } from "./api";
import { DEBOUNCE_MS, debounce } from "./debounce";
import { createEditor, type EditorHandles } from "./editor";
import { createPortfolioView, type PortfolioHandles } from "./portfolio_view";
import { createRocView, type RocViewHandles } from "./roc_view";
import { createSandboxView, type SandboxHandles } from "./sandbox_view";
import { RequestSequencer, Store } from "./state";
import type { ScenarioDocument } from "./types";
import { validateScenario } from "./validate";

export const DEFAULT_DOCUMENT: ScenarioDocument = {
  model: { theta0: 0.0, theta1: 2.0, sigma: 1.0 },
  costs: { c_tp: 0.0, c_fn: 1.0, c_fp: 1.0, c_tn: 0.0 },
  rates: { p0: 0.5, p1: 0.5 },
  tolerances: { epsilon1: 0.01, epsilon0: 0.01 },
};

const ROC_POINTS = 201;

export interface App {
  root: HTMLElement;
  store: Store;
  editor: EditorHandles;
  rocView: RocViewHandles;
  sandbox: SandboxHandles;
  portfolio: PortfolioHandles;
  /** validate + submit immediately, skipping the debounce window */
  submitNow(): Promise<void>;
}

export function mountApp(
  container: HTMLElement,
  initial: ScenarioDocument = DEFAULT_DOCUMENT,
): App {
  const store = new Store(initial);
  const sequencer = new RequestSequencer();
  const editor = createEditor(initial);
  const rocView = createRocView();
  const sandbox = createSandboxView(initial);
  const portfolio = createPortfolioView();

  const root = document.createElement("div");
  root.className = "app";

  const staleBanner = document.createElement("div");
  staleBanner.className = "stale-banner";
  staleBanner.dataset.role = "stale-banner";
  const staleText = document.createElement("span");
  staleText.textContent = "results are stale";
  const retryButton = document.createElement("button");
  retryButton.type = "button";
  retryButton.dataset.role = "retry";
  retryButton.textContent = "retry";
  staleBanner.append(staleText, retryButton);

  const pendingMarker = document.createElement("span");
  pendingMarker.dataset.role = "pending";
  pendingMarker.textContent = "…";

  // tabs
  const nav = document.createElement("nav");
  const panes: Array<[string, HTMLElement]> = [
    ["explorer", rocView.root],
    ["portfolio", portfolio.root],
    ["sandbox", sandbox.root],
  ];
  const explorerPane = document.createElement("div");
  explorerPane.append(editor.root, rocView.root);
  panes[0] = ["explorer", explorerPane];
  for (const [name, pane] of panes) {
    const button = document.createElement("button");
    button.type = "button";
    button.textContent = name;
    button.dataset.tab = name;
    button.addEventListener("click", () => {
      for (const [other, otherPane] of panes) {
        otherPane.hidden = other !== name;
      }
    });
    nav.append(button);
    pane.hidden = name !== "explorer";
  }

  root.append(nav, staleBanner, pendingMarker, explorerPane);
  root.append(portfolio.root, sandbox.root);
  container.append(root);

  const submitNow = async (): Promise<void> => {
    const doc = editor.readDocument();
    const errors = validateScenario(doc);
    editor.showErrors(errors);
    if (errors.length > 0) return; // invalid input never reaches the API

    const seq = sequencer.next();
    store.update({ pending: true, lastError: null });
    try {
      const [report, roc] = await Promise.all([
        api.determine(doc),
        api.roc(doc, ROC_POINTS),
      ]);
      if (!sequencer.accept(seq)) return;
      store.update({
        document: doc,
        report,
        roc,
        pending: false,
        stale: false,
        lastError: null,
      });
      sandbox.setDocument(doc);
    } catch (error) {
      if (!sequencer.accept(seq)) return;
      if (error instanceof ApiError) {
        // server rejected the document: mirror the field path inline
        editor.showErrors([{ field: error.field, message: error.message }]);
        store.update({ pending: false, stale: true });
      } else {
        store.update({
          pending: false,
          stale: true,
          lastError: String(error),
        });
      }
    }
  };

  const debouncedSubmit = debounce(() => {
    void submitNow();
  }, DEBOUNCE_MS);

  editor.onEdit(() => {
    store.update({ stale: true }); // inputs now ahead of the display
    debouncedSubmit();
  });

  retryButton.addEventListener("click", () => {
    void submitNow();
  });

  store.subscribe((state) => {
    staleBanner.hidden = !state.stale;
    staleText.textContent = state.lastError
      ? `results are stale (last attempt failed: ${state.lastError})`
      : "results are stale";
    retryButton.hidden = state.lastError === null;
    pendingMarker.hidden = !state.pending;
    if (state.report) {
      rocView.render(state.report, state.roc);
    }
  });

  return { root, store, editor, rocView, sandbox, portfolio, submitNow };
}
