/**
 * Typed client for the fcmtrust service.
 *
 * Trust is never computed here: every number in the UI is a field of a
 * service response. Inference requests go through a single-flight gate so a
 * newer what-if run aborts the one still in the air.
 */
import {
  InferenceConfigDoc,
  PredictionDoc,
  ScaleDoc,
  SurveyDocument,
  TrustReportDoc,
  ValidationDoc,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly errorName: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function decode<T>(response: Response): Promise<T> {
  const body = (await response.json()) as Record<string, unknown>;
  if (!response.ok) {
    throw new ServiceError(
      String(body["error"] ?? "ServiceError"),
      String(body["message"] ?? response.statusText),
      response.status,
    );
  }
  return body as T;
}

/** Keeps at most one request in flight; starting a new one aborts the old. */
export class SingleFlight {
  private controller: AbortController | null = null;

  async run<T>(task: (signal: AbortSignal) => Promise<T>): Promise<T> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    try {
      return await task(controller.signal);
    } finally {
      if (this.controller === controller) this.controller = null;
    }
  }
}

export class ServiceClient {
  private readonly inference = new SingleFlight();

  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async post<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    return decode<T>(response);
  }

  async scales(): Promise<ScaleDoc[]> {
    const response = await this.fetchImpl(this.baseUrl + "/scales");
    const body = await decode<{ scales: ScaleDoc[] }>(response);
    return body.scales;
  }

  async validateSurvey(survey: SurveyDocument): Promise<ValidationDoc> {
    return this.post<ValidationDoc>("/survey/validate", survey);
  }

  /** What-if inference; aborts any previous trust request still running. */
  async trust(
    survey: SurveyDocument,
    config?: InferenceConfigDoc,
    trustInitial?: number,
  ): Promise<TrustReportDoc> {
    const body =
      config || trustInitial !== undefined
        ? { survey, ...(config ? { config } : {}), ...(trustInitial !== undefined ? { trust_initial: trustInitial } : {}) }
        : survey;
    return this.inference.run((signal) => this.post<TrustReportDoc>("/trust", body, signal));
  }

  async classifyRules(
    rules: string,
    records: { record_id: string; features: Record<string, number> }[],
  ): Promise<PredictionDoc[]> {
    const body = await this.post<{ predictions: PredictionDoc[] }>("/rules/classify", {
      rules,
      records,
    });
    return body.predictions;
  }
}
