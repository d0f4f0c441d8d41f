import {
  ApiErrorBody,
  NetworkEntry,
  PromptTexts,
  QuerySubmission,
  RunStatus,
  RunView,
  isFinished,
} from './types';

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message || body.code);
    this.status = status;
    this.code = body.code;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

const POLL_INTERVAL_MS = 750;
const POLL_BACKOFF = 1.5;
const POLL_INTERVAL_CAP_MS = 5000;

export interface PollOptions {
  intervalMs?: number;
  deadlineMs?: number;
  sleep?: (ms: number) => Promise<void>;
  onStage?: (stage: string) => void;
}

function defaultSleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/**
 * Thin typed client over the service HTTP API. The fetch implementation is
 * injectable so tests run against canned responses without a server.
 */
export class ApiClient {
  private readonly base: string;
  private readonly fetcher: FetchLike;

  constructor(base = '', fetcher: FetchLike = fetch) {
    this.base = base.replace(/\/$/, '');
    this.fetcher = fetcher;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { 'Content-Type': 'application/json' } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const resp = await this.fetcher(this.base + path, init);
    const payload = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, payload as ApiErrorBody);
    }
    return payload as T;
  }

  submitQuery(submission: QuerySubmission): Promise<{ run_id: string }> {
    return this.request('POST', '/api/query', submission);
  }

  getRun(runId: string): Promise<RunStatus> {
    return this.request('GET', `/api/runs/${encodeURIComponent(runId)}`);
  }

  getRunPrompts(runId: string): Promise<PromptTexts> {
    return this.request('GET', `/api/runs/${encodeURIComponent(runId)}/prompts`);
  }

  listNetworks(): Promise<NetworkEntry[]> {
    return this.request('GET', '/api/networks');
  }

  /**
   * Poll a run until it reaches a terminal state. Interval starts at 750 ms
   * and backs off by 1.5x per poll, capped at 5 s.
   */
  async pollRun(runId: string, options: PollOptions = {}): Promise<RunView> {
    const sleep = options.sleep ?? defaultSleep;
    const deadline = Date.now() + (options.deadlineMs ?? 120_000);
    let interval = options.intervalMs ?? POLL_INTERVAL_MS;
    for (;;) {
      const run = await this.getRun(runId);
      if (isFinished(run)) return run;
      if (options.onStage) options.onStage(run.stage);
      if (Date.now() >= deadline) {
        throw new ApiError(408, { code: 'POLL_TIMEOUT', message: `run ${runId} still in progress` });
      }
      await sleep(interval);
      interval = Math.min(interval * POLL_BACKOFF, POLL_INTERVAL_CAP_MS);
    }
  }
}
