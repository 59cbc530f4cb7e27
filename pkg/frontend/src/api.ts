/**
 * Thin typed client for the documented /api/v1 endpoints.
 *
 * Validation failures (HTTP 4xx with an error envelope) surface as
 * ApiError carrying the server's JSON-pointer field path so the editor
 * can highlight the exact widget. Transport failures propagate as
 * whatever fetch threw; callers treat those as retryable.
 */

import type {
  DeterminationReport,
  HealthReport,
  PortfolioDocument,
  PortfolioReport,
  RocRow,
  ScenarioDocument,
} from "./types";

export class ApiError extends Error {
  readonly field: string;
  readonly status: number;

  constructor(message: string, field: string, status: number) {
    super(message);
    this.name = "ApiError";
    this.field = field;
    this.status = status;
  }
}

async function post<T>(path: string, body: unknown): Promise<T> {
  const response = await fetch(path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!response.ok) {
    let message = `HTTP ${response.status}`;
    let field = "";
    try {
      const envelope = (await response.json()) as {
        error?: { message?: string; field?: string };
      };
      message = envelope.error?.message ?? message;
      field = envelope.error?.field ?? "";
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new ApiError(message, field, response.status);
  }
  return (await response.json()) as T;
}

export const api = {
  async health(): Promise<HealthReport> {
    const response = await fetch("/api/v1/health");
    if (!response.ok) {
      throw new ApiError(`HTTP ${response.status}`, "", response.status);
    }
    return (await response.json()) as HealthReport;
  },

  determine(document: ScenarioDocument): Promise<DeterminationReport> {
    return post<DeterminationReport>("/api/v1/determine", document);
  },

  roc(scenario: ScenarioDocument, points: number): Promise<RocRow[]> {
    return post<RocRow[]>("/api/v1/roc", { scenario, points });
  },

  portfolio(document: PortfolioDocument): Promise<PortfolioReport> {
    return post<PortfolioReport>("/api/v1/portfolio", document);
  },
};
