/**
 * Typed client for the scholargraph REST API.
 *
 * All network access in the app funnels through this module, so tests can
 * intercept it with a fake fetch implementation.
 */

import type {
  ApiErrorBody,
  ComparisonTable,
  ExportFormat,
  Health,
  NodeRef,
  Paper,
  PaperDetail,
  PaperPayload,
  SimilarResponse,
  Subgraph,
} from "./types.js";

export class ApiRequestError extends Error {
  constructor(
    message: string,
    public status: number,
    public body: ApiErrorBody | null,
  ) {
    super(message);
    this.name = "ApiRequestError";
  }

  get code(): string | undefined {
    return this.body?.code;
  }
}

export interface ApiClientOptions {
  baseUrl: string;
  fetchImpl?: typeof fetch;
  writeToken?: string;
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: typeof fetch;
  private readonly writeToken: string | undefined;

  constructor(options: ApiClientOptions) {
    this.baseUrl = options.baseUrl.replace(/\/$/, "");
    this.fetchImpl = options.fetchImpl ?? fetch;
    this.writeToken = options.writeToken;
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const headers = new Headers(init?.headers);
    if (init?.method === "POST") {
      headers.set("Content-Type", "application/json");
      if (this.writeToken) {
        headers.set("X-Write-Token", this.writeToken);
      }
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      ...init,
      headers,
    });
    if (!response.ok) {
      const body = (await response.json().catch(() => null)) as ApiErrorBody | null;
      throw new ApiRequestError(
        body?.message ?? `request failed with status ${response.status}`,
        response.status,
        body,
      );
    }
    return response;
  }

  private async getJson<T>(path: string): Promise<T> {
    return (await this.request(path)).json() as Promise<T>;
  }

  private async postJson<T>(path: string, payload: unknown): Promise<T> {
    const response = await this.request(path, {
      method: "POST",
      body: JSON.stringify(payload),
    });
    return response.json() as Promise<T>;
  }

  health(): Promise<Health> {
    return this.getJson("/api/health");
  }

  searchPredicates(query: string, limit = 10): Promise<NodeRef[]> {
    const q = encodeURIComponent(query);
    return this.getJson(`/api/predicates?q=${q}&limit=${limit}`);
  }

  searchResources(query: string, limit = 10): Promise<NodeRef[]> {
    const q = encodeURIComponent(query);
    return this.getJson(`/api/resources?q=${q}&limit=${limit}`);
  }

  createPaper(payload: PaperPayload): Promise<Paper> {
    return this.postJson("/api/papers", payload);
  }

  getPaper(paperId: string): Promise<PaperDetail> {
    return this.getJson(`/api/papers/${encodeURIComponent(paperId)}`);
  }

  getSubgraph(contributionId: string, depth?: number): Promise<Subgraph> {
    const suffix = depth === undefined ? "" : `?depth=${depth}`;
    return this.getJson(
      `/api/contributions/${encodeURIComponent(contributionId)}/subgraph${suffix}`,
    );
  }

  getComparison(contributionIds: string[], threshold?: number): Promise<ComparisonTable> {
    const params = new URLSearchParams({ contributions: contributionIds.join(",") });
    if (threshold !== undefined) {
      params.set("threshold", String(threshold));
    }
    return this.getJson(`/api/comparison?${params.toString()}`);
  }

  async saveComparison(contributionIds: string[], threshold?: number): Promise<string> {
    const body: Record<string, unknown> = { contribution_ids: contributionIds };
    if (threshold !== undefined) {
      body.threshold = threshold;
    }
    const saved = await this.postJson<{ short_id: string }>("/api/comparisons", body);
    return saved.short_id;
  }

  getSavedComparison(shortId: string): Promise<ComparisonTable> {
    return this.getJson(`/api/comparisons/${encodeURIComponent(shortId)}`);
  }

  /** Raw export bytes; the UI must never re-render these. */
  async exportComparison(shortId: string, format: ExportFormat): Promise<Uint8Array> {
    const response = await this.request(
      `/api/comparisons/${encodeURIComponent(shortId)}/export?format=${format}`,
    );
    return new Uint8Array(await response.arrayBuffer());
  }

  getSimilar(contributionId: string, k = 5): Promise<SimilarResponse> {
    return this.getJson(
      `/api/contributions/${encodeURIComponent(contributionId)}/similar?k=${k}`,
    );
  }
}
