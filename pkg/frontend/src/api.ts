import {
  CorrelationRequest,
  CorrelationResponse,
  ModelDescriptor,
  RelatednessRequest,
  RelatednessResponse,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Error carrying the service's machine-readable {code, message} body. */
export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

export class ApiClient {
  private baseUrl: string;
  private fetchLike: FetchLike;

  constructor(baseUrl = "", fetchLike?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchLike = fetchLike ?? ((input, init) => fetch(input, init));
  }

  setBaseUrl(url: string): void {
    this.baseUrl = url.trim().replace(/\/$/, "");
  }

  relatedness(request: RelatednessRequest, signal?: AbortSignal): Promise<RelatednessResponse> {
    return this.post("/relatedness", request, signal);
  }

  correlation(request: CorrelationRequest, signal?: AbortSignal): Promise<CorrelationResponse> {
    return this.post("/correlation", request, signal);
  }

  languages(): Promise<string[]> {
    return this.request("/languages", {});
  }

  models(): Promise<ModelDescriptor[]> {
    return this.request("/models", {});
  }

  private post<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    return this.request(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
  }

  private async request<T>(path: string, init: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchLike(this.baseUrl + path, init);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") {
        throw err;
      }
      throw new ApiError("unreachable", `cannot reach the service: ${String(err)}`, 0);
    }
    let payload: unknown = null;
    try {
      payload = await response.json();
    } catch {
      payload = null;
    }
    if (!response.ok) {
      const body = (payload ?? {}) as { code?: string; message?: string };
      throw new ApiError(
        body.code ?? "error",
        body.message ?? `request failed with status ${response.status}`,
        response.status,
      );
    }
    return payload as T;
  }
}
