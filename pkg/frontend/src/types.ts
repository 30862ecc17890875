export interface RelatednessRequest {
  main_term: string;
  target_set: string[];
  language: string;
  measure: string;
  model_kind: string;
}

export interface ScoredTarget {
  target: string;
  score: number;
  raw: number;
}

export interface FailedTarget {
  target: string;
  error: string;
}

export type TargetResult = ScoredTarget | FailedTarget;

export function isScored(result: TargetResult): result is ScoredTarget {
  return (result as ScoredTarget).score !== undefined;
}

export interface RelatednessResponse {
  main_term: string;
  language: string;
  measure: string;
  model_kind: string;
  results: TargetResult[];
}

export interface CorrelationRequest {
  dataset: string;
  language: string;
  measure: string;
  model_kind: string;
  oov_policy: string;
}

export interface CorrelationResponse {
  rho: number;
  n_scored: number;
  n_skipped: number;
  dataset: string;
  language: string;
  measure: string;
  model_kind: string;
  oov_policy?: string;
}

export interface ModelDescriptor {
  language: string;
  kind: string;
  fingerprint: string;
  corpus_id: string;
  created_at: string;
  file_path: string;
}

/** Shared selector state both panels read when building requests. */
export interface QueryContext {
  language: string;
  measure: string;
  model_kind: string;
}

export const MEASURES = ["cosine", "euclidean", "correlation"] as const;
export const DATASETS = ["ws353", "rg", "mc"] as const;
