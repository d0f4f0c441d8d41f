/** Shapes of the service's JSON responses, mirrored 1:1. */

export interface ApiErrorBody {
  code: string;
  message: string;
}

export interface NetworkEntry {
  network_id: string;
  display_name: string;
  file_path: string;
  quality_configured: boolean;
  element_summary: Record<string, number> | null;
}

export interface Retrieval {
  doc_id: string;
  score: number;
  rank: number;
}

export interface Envelope {
  status: 'ok' | 'error' | 'timeout';
  result?: unknown;
  traceback?: string;
  stdout_excerpt: string;
  wall_time_ms: number;
}

export interface AttemptView {
  function_block: string;
  eval_line: string;
  attempt_index: number;
  prompt_hashes: Record<string, string>;
  envelope: Envelope;
  timings_ms: Record<string, number>;
}

export interface RunConfigView {
  prompt_level: string;
  max_retries: number;
  top_k: number;
  embedder_id: string;
  template_version: string;
}

/** A finished run as served by GET /api/runs/{id}. */
export interface RunView {
  run_id: string;
  query: string;
  network_id: string;
  config: RunConfigView;
  retrievals: Retrieval[];
  attempts: AttemptView[];
  final_status: 'answered' | 'failed';
  answer: unknown;
  failure_cause: string | null;
  started_at: string;
  finished_at: string;
}

/** A run that is still executing. */
export interface RunInProgress {
  run_id: string;
  final_status: 'in_progress';
  stage: string;
}

export type RunStatus = RunView | RunInProgress;

export function isFinished(run: RunStatus): run is RunView {
  return run.final_status !== 'in_progress';
}

/** The override whitelist; maps 1:1 to the console's config controls. */
export interface Overrides {
  prompt_level?: 'basic' | 'complex';
  max_retries?: number;
  top_k?: number;
}

export interface QuerySubmission {
  network_id: string;
  query: string;
  overrides?: Overrides;
}

export type PromptTexts = Record<string, { system: string; user: string; kind: string }>;
