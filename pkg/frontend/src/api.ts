import type {
  DrillRequest,
  DrillResponse,
  EntityPayload,
  SearchPayload,
  TreePayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
    this.name = "ApiError";
  }
}

/** Thin typed client over the read-only query service. */
export class ApiClient {
  constructor(readonly baseUrl: string, private fetchFn: typeof fetch = fetch) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(`service unreachable: ${String(err)}`);
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { error?: string };
        if (body.error) detail = body.error;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(detail, response.status);
    }
    return (await response.json()) as T;
  }

  search(query: string): Promise<SearchPayload> {
    return this.request(`/search?q=${encodeURIComponent(query)}`);
  }

  entity(id: number): Promise<EntityPayload> {
    return this.request(`/entity/${id}`);
  }

  neighborhood(id: number, depth = 1): Promise<TreePayload> {
    return this.request(`/entity/${id}/neighborhood?depth=${depth}`);
  }

  drill(body: DrillRequest): Promise<DrillResponse> {
    return this.request("/drill", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }
}
