/**
 * Wire types for the /api/v1 JSON endpoints. These mirror the server's
 * document and report schemas field for field; the client never adds,
 * renames, or recomputes anything in them.
 */

export interface ModelParams {
  theta0: number;
  theta1: number;
  sigma: number;
}

export interface Costs {
  c_tp: number;
  c_fn: number;
  c_fp: number;
  c_tn: number;
}

export interface Rates {
  p0: number;
  p1: number;
}

export interface ToleranceBounds {
  epsilon1: number;
  epsilon0: number;
}

export interface ScenarioDocument {
  model: ModelParams;
  costs: Costs;
  rates: Rates;
  tolerances: ToleranceBounds;
}

export type VerdictWire = "RedLight" | "AmberLight" | "GreenLight";

export interface OperatingPoint {
  fpr: number;
  tpr: number;
}

export interface DeterminationReport {
  verdict: VerdictWire;
  degenerate: boolean;
  cutoff: number | null;
  point: OperatingPoint;
  cost_ratio: number;
  expected_cost: number;
  dist_red: number;
  dist_green: number;
  surprise_red: number;
  surprise_green: number;
  delta1: number;
  delta0: number;
}

export interface RocRow {
  cutoff: number;
  fpr: number;
  tpr: number;
}

export interface InterventionDoc {
  id: string;
  label: string;
  costs: Costs;
  net_social_benefit: number;
}

export interface PortfolioDocument {
  model: ModelParams;
  rates: Rates;
  tolerances: ToleranceBounds;
  interventions: InterventionDoc[];
  combinations?: boolean;
}

export interface PortfolioRow {
  id: string;
  label: string;
  members: string[];
  net_social_benefit: number;
  verdict: VerdictWire;
  degenerate: boolean;
  cutoff: number | null;
  cost_ratio: number;
  expected_cost: number;
  dist_red: number;
  dist_green: number;
}

export interface PortfolioReport {
  interventions: PortfolioRow[];
  feasible: string[];
  critical: string | null;
  selected: string | null;
}

export interface HealthReport {
  status: string;
  version: string;
}

/** Display text for each wire verdict; the DOM always carries this
 *  text alongside the colored light (accessibility contract). */
export const VERDICT_TEXT: Record<VerdictWire, string> = {
  RedLight: "RED",
  AmberLight: "AMBER",
  GreenLight: "GREEN",
};
