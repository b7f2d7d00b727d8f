import type {
  ApiErrorDetail,
  ContextData,
  RegisterData,
  ReportRow,
  RiskData,
  ScoreData,
  WhatIfData,
  WhatIfOverrides,
} from "./types.js";

export class ApiError extends Error {
  status: number;
  errors: ApiErrorDetail[];

  constructor(status: number, errors: ApiErrorDetail[]) {
    super(errors.map((e) => e.message).join("; ") || `request failed (${status})`);
    this.status = status;
    this.errors = errors;
  }

  /** First error message attached to a given field path, if any. */
  forField(fieldPath: string): string | null {
    const hit = this.errors.find((e) => e.field_path === fieldPath);
    return hit ? hit.message : null;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/**
 * Thin typed client over the assessment API. Every number the workbench
 * displays comes back through one of these calls.
 */
export class ApiClient {
  private base: string;
  private fetchFn: FetchLike;

  constructor(base = "", fetchFn?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(`${this.base}${path}`, init);
    if (!response.ok) {
      let errors: ApiErrorDetail[] = [];
      try {
        const payload = await response.json();
        if (payload && Array.isArray(payload.errors)) errors = payload.errors;
      } catch {
        // non-JSON error body; fall through with the bare status
      }
      throw new ApiError(response.status, errors);
    }
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  getRegister(): Promise<RegisterData> {
    return this.request("GET", "/register");
  }

  putContext(context: unknown): Promise<ContextData> {
    return this.request("PUT", "/context", context);
  }

  createRisk(risk: unknown): Promise<RiskData> {
    return this.request("POST", "/risks", risk);
  }

  updateRisk(riskId: string, risk: unknown): Promise<RiskData> {
    return this.request("PUT", `/risks/${encodeURIComponent(riskId)}`, risk);
  }

  deleteRisk(riskId: string): Promise<void> {
    return this.request("DELETE", `/risks/${encodeURIComponent(riskId)}`);
  }

  getScore(riskId: string): Promise<ScoreData> {
    return this.request("GET", `/risks/${encodeURIComponent(riskId)}/score`);
  }

  whatIf(riskId: string, overrides: WhatIfOverrides): Promise<WhatIfData> {
    return this.request("POST", "/whatif", { risk_id: riskId, overrides });
  }

  getReport(): Promise<ReportRow[]> {
    return this.request("GET", "/report?format=json");
  }
}
