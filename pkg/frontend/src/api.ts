// Thin typed client for the local tokenlab service. Every successful
// response is returned verbatim; the caller keys panels by content_hash.

import type {
  CompareResponse,
  EpochSummary,
  MatrixResponse,
  MetricsResponse,
  PresetInfo,
  RecommendResponse,
  SimulateResponse,
  ValidateResponse,
} from "./types";

const BASE = "/api/v1";

export class ApiError extends Error {
  status: number;
  body: unknown;

  constructor(status: number, body: unknown) {
    super(`api error ${status}`);
    this.status = status;
    this.body = body;
  }
}

async function post<T>(path: string, body: unknown): Promise<T> {
  const response = await fetch(`${BASE}${path}`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  const payload = await response.json();
  if (!response.ok && response.status !== 422) {
    throw new ApiError(response.status, payload);
  }
  return payload as T;
}

async function get<T>(path: string): Promise<T> {
  const response = await fetch(`${BASE}${path}`);
  const payload = await response.json();
  if (!response.ok) {
    throw new ApiError(response.status, payload);
  }
  return payload as T;
}

// 422 carries the findings payload itself, so validation "failures" are data.
export function validateDocument(document: unknown): Promise<ValidateResponse> {
  return post<ValidateResponse>("/validate", { document });
}

export function metricsFromEntries(
  entries: Array<[string, number | string]>,
  topK = 10,
): Promise<MetricsResponse> {
  return post<MetricsResponse>("/metrics", { entries, top_k: topK });
}

export function metricsFromCsv(csv: string, topK = 10): Promise<MetricsResponse> {
  return post<MetricsResponse>("/metrics", { csv, top_k: topK });
}

export interface SimulateRequest {
  scenario?: unknown;
  preset?: string;
  spec?: unknown;
  epochs?: number;
  seed?: number;
}

export function simulate(request: SimulateRequest): Promise<SimulateResponse> {
  return post<SimulateResponse>("/simulate", request);
}

// Streaming run: NDJSON lines of {epoch_summary} and a final {done, result}.
export async function simulateStream(
  request: SimulateRequest,
  onEpoch: (summary: EpochSummary) => void,
): Promise<SimulateResponse> {
  const response = await fetch(`${BASE}/simulate?stream=true`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(request),
  });
  if (!response.ok) {
    throw new ApiError(response.status, await response.json());
  }
  if (!response.body) {
    throw new ApiError(0, "streaming not supported");
  }
  const reader = response.body.getReader();
  const decoder = new TextDecoder();
  let result: SimulateResponse | null = null;
  for await (const line of ndjsonLines(reader, decoder)) {
    if (line.epoch_summary) {
      onEpoch(line.epoch_summary as EpochSummary);
    } else if (line.done) {
      result = line.result as SimulateResponse;
    } else if (line.error) {
      throw new ApiError(0, line.error);
    }
  }
  if (!result) {
    throw new ApiError(0, "stream ended without a result");
  }
  return result;
}

// Incremental NDJSON parsing over arbitrary chunk boundaries.
export async function* ndjsonLines(
  reader: { read(): Promise<{ done: boolean; value?: Uint8Array }> },
  decoder: TextDecoder,
): AsyncGenerator<Record<string, unknown>> {
  let buffer = "";
  for (;;) {
    const { done, value } = await reader.read();
    if (value) {
      buffer += decoder.decode(value, { stream: true });
    }
    let newline = buffer.indexOf("\n");
    while (newline >= 0) {
      const line = buffer.slice(0, newline).trim();
      buffer = buffer.slice(newline + 1);
      if (line) {
        yield JSON.parse(line) as Record<string, unknown>;
      }
      newline = buffer.indexOf("\n");
    }
    if (done) {
      const rest = buffer.trim();
      if (rest) {
        yield JSON.parse(rest) as Record<string, unknown>;
      }
      return;
    }
  }
}

export function compare(a: unknown, b: unknown): Promise<CompareResponse> {
  return post<CompareResponse>("/compare", { a, b });
}

export function recommend(
  require: Record<string, number>,
  prefer: string[],
): Promise<RecommendResponse> {
  return post<RecommendResponse>("/recommend", { require, prefer });
}

export function matrix(): Promise<MatrixResponse> {
  return get<MatrixResponse>("/matrix");
}

export function presets(): Promise<{ presets: PresetInfo[] }> {
  return get<{ presets: PresetInfo[] }>("/presets");
}

export function fixtures(): Promise<{ fixtures: string[] }> {
  return get<{ fixtures: string[] }>("/fixtures");
}

export function fixture(name: string): Promise<{ name: string; document: unknown }> {
  return get<{ name: string; document: unknown }>(`/fixtures/${name}`);
}
