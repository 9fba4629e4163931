// Thin client for the linkgame session API.

import type {
  AnalysisPayload,
  CreateRequest,
  HintPayload,
  Resolution,
  StatePayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class StaleVersionError extends ApiError {
  constructor(message: string) {
    super(409, message);
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!response.ok) {
      const body = await response.text();
      if (response.status === 409) throw new StaleVersionError(body);
      throw new ApiError(response.status, body);
    }
    return (await response.json()) as T;
  }

  createSession(req: CreateRequest): Promise<StatePayload> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify(req),
    });
  }

  getState(session: string): Promise<StatePayload> {
    return this.request(`/sessions/${session}`);
  }

  postMove(
    session: string,
    crossing: number,
    resolution: Resolution,
    version: number,
  ): Promise<StatePayload> {
    return this.request(`/sessions/${session}/moves`, {
      method: "POST",
      body: JSON.stringify({ crossing, resolution, version }),
    });
  }

  getHint(session: string): Promise<HintPayload> {
    return this.request(`/sessions/${session}/hint`);
  }

  getAnalysis(session: string): Promise<AnalysisPayload> {
    return this.request(`/sessions/${session}/analysis`);
  }
}
