/**
 * Explorer state and response reconciliation.
 *
 * One mutable record behind a subscribe/update store; network requests
 * are tagged with monotonically increasing sequence numbers and a
 * response is applied only if nothing newer has been applied already.
 * That is the whole concurrency model: single rendering thread, late
 * responses dropped.
 */

import type {
  DeterminationReport,
  PortfolioDocument,
  PortfolioReport,
  RocRow,
  ScenarioDocument,
} from "./types";

export interface ExplorerState {
  /** document whose widgets are on screen */
  document: ScenarioDocument;
  /** last acknowledged server report, or null before the first one */
  report: DeterminationReport | null;
  roc: RocRow[];
  portfolioDocument: PortfolioDocument | null;
  portfolioReport: PortfolioReport | null;
  /** a request is in flight */
  pending: boolean;
  /** displayed results lag the displayed inputs */
  stale: boolean;
  /** transport-level failure message, cleared on the next attempt */
  lastError: string | null;
}

export function initialState(document: ScenarioDocument): ExplorerState {
  return {
    document,
    report: null,
    roc: [],
    portfolioDocument: null,
    portfolioReport: null,
    pending: false,
    stale: true,
    lastError: null,
  };
}

export type Listener = (state: ExplorerState) => void;

export class Store {
  private state: ExplorerState;
  private listeners: Listener[] = [];

  constructor(document: ScenarioDocument) {
    this.state = initialState(document);
  }

  get(): ExplorerState {
    return this.state;
  }

  update(patch: Partial<ExplorerState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}

export class RequestSequencer {
  private issued = 0;
  private applied = 0;

  /** Tag for a new request. */
  next(): number {
    return ++this.issued;
  }

  /** True if a response with this tag may be applied; consumes the tag.
   *  Anything at or below an already-applied tag is stale. */
  accept(seq: number): boolean {
    if (seq <= this.applied) return false;
    this.applied = seq;
    return true;
  }
}
