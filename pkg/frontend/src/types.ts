// JSON shapes of the /api/v1 contract. The workbench never recomputes any
// of these values; it only renders what the service returns.

export type Severity = "error" | "warning" | "info";

export interface Finding {
  severity: Severity;
  rule: string;
  message: string;
  path: string;
}

export interface ValidateResponse {
  name?: string;
  valid: boolean;
  findings: Finding[];
  normalized?: string;
  content_hash?: string;
}

export interface TopKShare {
  k: number;
  share: number;
}

export interface MetricsResponse {
  gini: number;
  nakamoto: number;
  total_weight: string;
  holder_count: number;
  top_k_shares: TopKShare[];
  content_hash: string;
}

export interface EpochSummary {
  epoch: number;
  circulating: string;
  price: string;
  gini_voting: number;
  nakamoto_voting: number;
  capture: boolean;
  events?: string[];
  gini_balances?: number;
  nakamoto_balances?: number;
  tracked_share?: number;
}

export interface RunSummary {
  min_nakamoto_voting: number;
  max_nakamoto_voting: number;
  max_drawdown: number;
  capture: boolean;
  capture_epochs: number[];
  proposals_passed: number;
  proposals_failed: number;
  truncations: number;
  final_supply: string;
}

export interface SimulateSummary {
  scenario: string;
  spec: string;
  epochs: number;
  seed: number;
  summary: RunSummary;
  per_epoch: EpochSummary[];
  events: string[];
}

export interface SimulateResponse {
  report: unknown;
  summary: SimulateSummary;
  content_hash: string;
}

export interface ComparisonRow {
  label: string;
  a: string;
  b: string;
  identical: boolean;
}

export interface ComparisonPillar {
  pillar: string;
  rows: ComparisonRow[];
}

export interface CompareResponse {
  comparison: {
    a: string;
    b: string;
    identical: boolean;
    pillars: ComparisonPillar[];
  };
  text: string;
  content_hash: string;
}

export interface RecommendResponse {
  require: Record<string, number>;
  prefer: string[];
  candidates: string[];
  no_candidate: boolean;
  content_hash: string;
}

export interface MatrixCell {
  score: number;
  basis: string;
  note: string;
}

export interface MatrixResponse {
  properties: string[];
  scores: Record<string, number>;
  families: Record<string, Record<string, MatrixCell>>;
}

export interface PresetInfo {
  name: string;
  description: string;
}
