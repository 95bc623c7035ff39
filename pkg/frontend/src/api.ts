// Typed client for the session service. All reasoning happens server-side;
// this module only moves payloads.

import type {
  Catalog,
  CreateSessionResponse,
  MapDraft,
  MapResponse,
  PathResponse,
  PathViolation,
  PracticeResponse,
  SessionState,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly detail: unknown = null,
  ) {
    super(message);
  }
}

export class SessionApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const detail = body && typeof body === "object" ? (body as any).detail : body;
      throw new ApiError(`${path} failed (${response.status})`, response.status, detail);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  catalogs(): Promise<Catalog[]> {
    return this.request<Catalog[]>("/catalogs");
  }

  createSession(catalogId: string, seed = 0): Promise<CreateSessionResponse> {
    return this.post<CreateSessionResponse>("/sessions", {
      catalog_id: catalogId,
      seed,
    });
  }

  state(token: string): Promise<SessionState> {
    return this.request<SessionState>(`/sessions/${token}/state`);
  }

  submitMap(token: string, draft: MapDraft): Promise<MapResponse> {
    return this.post<MapResponse>(`/sessions/${token}/map`, draft);
  }

  practice(token: string, goal: string): Promise<PracticeResponse> {
    return this.post<PracticeResponse>(`/sessions/${token}/practice`, { goal });
  }

  async selectPath(
    token: string,
    selections: string[],
  ): Promise<PathResponse | PathViolation> {
    try {
      return await this.post<PathResponse>(`/sessions/${token}/path`, { selections });
    } catch (err) {
      if (err instanceof ApiError && err.status === 422 && err.detail) {
        return err.detail as PathViolation;
      }
      throw err;
    }
  }

  eventsUrl(token: string, lastEventId: number | null): string {
    const suffix = lastEventId === null ? "" : `?last_event_id=${lastEventId}`;
    return `${this.baseUrl}/sessions/${token}/events${suffix}`;
  }
}
