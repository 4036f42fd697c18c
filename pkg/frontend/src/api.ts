// Typed client for the /v1 JSON API.  check() keeps at most one request in
// flight: a newer call aborts the one it supersedes.

import type {
  CheckConfigJson, CheckResponse, DocumentJson, ExampleIndexEntry,
  ExampleResponse, VerdictJson,
} from "./types.js";

export class ApiError extends Error {
  constructor(message: string, readonly status: number,
              readonly detail: Record<string, unknown> = {}) {
    super(message);
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  private inflight: AbortController | null = null;

  constructor(readonly base: string,
              private readonly fetchImpl: FetchLike = fetch) {}

  private async post<T>(path: string, body: unknown,
                        signal?: AbortSignal): Promise<T> {
    const resp = await this.fetchImpl(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    const payload = await resp.json();
    if (!resp.ok) {
      const err = (payload as { error?: { message?: string } }).error ?? {};
      throw new ApiError(err.message ?? `HTTP ${resp.status}`, resp.status,
                         err as Record<string, unknown>);
    }
    return payload as T;
  }

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchImpl(this.base + path);
    const payload = await resp.json();
    if (!resp.ok) {
      const err = (payload as { error?: { message?: string } }).error ?? {};
      throw new ApiError(err.message ?? `HTTP ${resp.status}`, resp.status);
    }
    return payload as T;
  }

  async parseFormula(formula: string) {
    return this.post<{ version: "v1"; ast: unknown }>(
      "/v1/parse", { version: "v1", formula });
  }

  /** Check a document; a superseded in-flight request is cancelled. */
  async check(document: DocumentJson, config?: CheckConfigJson,
              maxDomain?: number): Promise<CheckResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const body: Record<string, unknown> = { version: "v1", document };
    if (config && Object.keys(config).length) body.config = config;
    if (maxDomain !== undefined) body.max_domain = maxDomain;
    try {
      return await this.post<CheckResponse>("/v1/check", body, controller.signal);
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }

  async checkText(text: string, config?: CheckConfigJson): Promise<CheckResponse> {
    const body: Record<string, unknown> = { version: "v1", text };
    if (config && Object.keys(config).length) body.config = config;
    return this.post<CheckResponse>("/v1/check", body);
  }

  async countermodel(premises: string[], conclusion: string,
                     maxDomain = 3): Promise<VerdictJson> {
    const resp = await this.post<{ version: "v1"; verdict: VerdictJson }>(
      "/v1/countermodel",
      { version: "v1", premises, conclusion, max_domain: maxDomain });
    return resp.verdict;
  }

  async examples(): Promise<ExampleIndexEntry[]> {
    const resp = await this.get<{ version: "v1"; examples: ExampleIndexEntry[] }>(
      "/v1/examples");
    return resp.examples;
  }

  async example(id: string): Promise<ExampleResponse> {
    return this.get<ExampleResponse>(`/v1/examples/${id}`);
  }
}

export function isAbortError(e: unknown): boolean {
  return e instanceof DOMException ? e.name === "AbortError"
    : e instanceof Error && e.name === "AbortError";
}
