/**
 * Typed client for the review service HTTP API.
 *
 * Every call sends the bearer token; non-2xx responses raise ApiError
 * with the HTTP status so views can distinguish conflicts (409) from
 * validation problems (400) and missing entities (404).
 */

import type {
  AnomalyFlag,
  Heatmap,
  OverrideResult,
  TeamDetail,
  TeamSummary,
  Timeline,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
  }
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly token: string;

  constructor(baseUrl: string, token: string) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.token = token;
  }

  private async request<T>(
    method: "GET" | "POST",
    path: string,
    body?: unknown,
  ): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: {
        Authorization: `Bearer ${this.token}`,
        ...(body !== undefined ? { "Content-Type": "application/json" } : {}),
      },
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    const text = await response.text();
    if (!response.ok) {
      let detail = text;
      try {
        detail = (JSON.parse(text) as { error?: string }).error ?? text;
      } catch {
        // non-JSON error body; keep the raw text
      }
      throw new ApiError(response.status, detail);
    }
    return JSON.parse(text) as T;
  }

  health(): Promise<{ status: string; teams: number }> {
    return this.request("GET", "/health");
  }

  getTeams(): Promise<TeamSummary[]> {
    return this.request("GET", "/teams");
  }

  getTeam(teamId: string): Promise<TeamDetail> {
    return this.request("GET", `/teams/${encodeURIComponent(teamId)}`);
  }

  getHeatmap(teamId: string): Promise<Heatmap> {
    return this.request("GET", `/teams/${encodeURIComponent(teamId)}/heatmap`);
  }

  getTimeline(teamId: string): Promise<Timeline> {
    return this.request(
      "GET",
      `/teams/${encodeURIComponent(teamId)}/timeline`,
    );
  }

  getFlags(status?: "open" | "resolved"): Promise<AnomalyFlag[]> {
    const query = status ? `?status=${status}` : "";
    return this.request("GET", `/flags${query}`);
  }

  postOverride(
    flagId: string,
    delta: number,
    note: string,
  ): Promise<OverrideResult> {
    return this.request(
      "POST",
      `/flags/${encodeURIComponent(flagId)}/override`,
      { delta, note },
    );
  }

  approveTeam(teamId: string): Promise<{ team_id: string }> {
    return this.request(
      "POST",
      `/teams/${encodeURIComponent(teamId)}/approve`,
      {},
    );
  }

  exportUrl(): string {
    return `${this.baseUrl}/export.csv`;
  }
}
