/** Thin typed client for the portal HTTP API. All errors surface as
 * ApiError carrying the service's flat {code, message, details} body;
 * transport failures map to code "unreachable" so views can show one banner.
 */

import type {
  ApiErrorBody,
  AssessmentDoc,
  CubeResponse,
  NetworkDocument,
  NetworkSummary,
  Page,
  SearchResponse,
  SiteDoc,
  SummaryMetrics,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly details: unknown;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.name = "ApiError";
    this.status = status;
    this.code = body.code;
    this.details = body.details;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface ApiClientOptions {
  baseUrl?: string;
  token?: string | null;
  fetchImpl?: FetchLike;
}

interface CubeRequest {
  dimensions: string[];
  measures: string[];
  filter?: Record<string, string>;
}

export class ApiClient {
  baseUrl: string;
  token: string | null;
  private readonly fetchImpl: FetchLike;

  constructor(options: ApiClientOptions = {}) {
    this.baseUrl = (options.baseUrl ?? "").replace(/\/+$/, "");
    this.token = options.token ?? null;
    this.fetchImpl = options.fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const headers: Record<string, string> = {};
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    if (body !== undefined) headers["Content-Type"] = "application/json";
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, {
        method,
        headers,
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (cause) {
      throw new ApiError(0, {
        code: "unreachable",
        message: `API unreachable at ${this.baseUrl || "same origin"}`,
        details: String(cause),
      });
    }
    if (!response.ok) {
      let payload: ApiErrorBody;
      try {
        payload = (await response.json()) as ApiErrorBody;
      } catch {
        payload = {
          code: "http_error",
          message: `API answered ${response.status}`,
          details: null,
        };
      }
      throw new ApiError(response.status, payload);
    }
    return (await response.json()) as T;
  }

  listNetworks(pageSize = 200): Promise<Page<NetworkSummary>> {
    return this.request("GET", `/networks?page_size=${pageSize}`);
  }

  getNetwork(id: string): Promise<NetworkDocument> {
    return this.request("GET", `/networks/${encodeURIComponent(id)}`);
  }

  getSite(id: string): Promise<SiteDoc> {
    return this.request("GET", `/sites/${encodeURIComponent(id)}`);
  }

  /** queryString is prebuilt by the search form module, without a leading ?. */
  search(queryString: string): Promise<SearchResponse> {
    const suffix = queryString ? `?${queryString}` : "";
    return this.request("GET", `/search${suffix}`);
  }

  getAssessment(id: string): Promise<AssessmentDoc> {
    return this.request("GET", `/networks/${encodeURIComponent(id)}/assessment`);
  }

  runAssessment(id: string): Promise<AssessmentDoc> {
    return this.request("POST", `/networks/${encodeURIComponent(id)}/assess`);
  }

  publishNetwork(id: string): Promise<NetworkSummary> {
    return this.request("POST", `/networks/${encodeURIComponent(id)}/publish`);
  }

  summary(): Promise<SummaryMetrics> {
    return this.request("GET", "/analytics/summary");
  }

  cube(body: CubeRequest): Promise<CubeResponse> {
    return this.request("POST", "/analytics/cube", body);
  }
}
