/** Fetch stubbing for the UI tests. Responses are recorded server
 *  output from the fixtures; the mock only routes and replays. */

import { vi } from "vitest";

export type RouteHandler = (body: unknown) => Response | Promise<Response>;

export interface Routes {
  determine?: RouteHandler;
  roc?: RouteHandler;
  portfolio?: RouteHandler;
}

export function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export function errorResponse(
  message: string,
  field: string,
  status: number,
): Response {
  return jsonResponse({ error: { message, field } }, status);
}

export function stubFetch(routes: Routes) {
  const mock = vi.fn(
    async (url: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
      const path = String(url);
      const body =
        init?.body !== undefined ? JSON.parse(String(init.body)) : undefined;
      if (path.endsWith("/api/v1/determine") && routes.determine) {
        return routes.determine(body);
      }
      if (path.endsWith("/api/v1/roc") && routes.roc) {
        return routes.roc(body);
      }
      if (path.endsWith("/api/v1/portfolio") && routes.portfolio) {
        return routes.portfolio(body);
      }
      throw new TypeError(`no route for ${path}`);
    },
  );
  vi.stubGlobal("fetch", mock);
  return mock;
}

/** A deferred the test resolves by hand, for ordering experiments. */
export function deferred<T>() {
  let resolve!: (value: T) => void;
  let reject!: (reason?: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

/** Let queued microtasks run. */
export function flushMicrotasks(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
