import { ApiClient, ApiError } from './api';
import { Overrides, RunView } from './types';

export type EntryState = 'pending' | 'answered' | 'failed' | 'error';

export interface ChatEntry {
  query: string;
  runId: string | null;
  state: EntryState;
  stage?: string;
  answer?: unknown;
  failureReason?: string;
  /** Machine-readable code when the API itself rejected the submission. */
  errorCode?: string;
  attempts?: number;
  run?: RunView;
}

export interface SessionControls {
  promptLevel: 'basic' | 'complex';
  maxRetries: number;
  topK: number;
}

export const DEFAULT_CONTROLS: SessionControls = {
  promptLevel: 'complex',
  maxRetries: 5,
  topK: 8,
};

/**
 * Client-side chat state: an ordered list of query/answer entries plus the
 * selected network and config controls. Nothing here is persisted; a reload
 * rebuilds finished entries from run ids via the API.
 */
export class ChatSession {
  readonly entries: ChatEntry[] = [];
  networkId: string;
  controls: SessionControls;
  private readonly client: ApiClient;

  constructor(client: ApiClient, networkId: string, controls: SessionControls = DEFAULT_CONTROLS) {
    this.client = client;
    this.networkId = networkId;
    this.controls = { ...controls };
  }

  private overrides(): Overrides {
    return {
      prompt_level: this.controls.promptLevel,
      max_retries: this.controls.maxRetries,
      top_k: this.controls.topK,
    };
  }

  /**
   * Submit a query and poll to completion. The entry is appended
   * immediately in pending state and updated in place, so a renderer can
   * redraw after every state change.
   */
  async submit(query: string, onUpdate?: (entry: ChatEntry) => void): Promise<ChatEntry> {
    const entry: ChatEntry = { query, runId: null, state: 'pending' };
    this.entries.push(entry);
    const notify = () => onUpdate?.(entry);
    notify();
    try {
      const { run_id } = await this.client.submitQuery({
        network_id: this.networkId,
        query,
        overrides: this.overrides(),
      });
      entry.runId = run_id;
      notify();
      const run = await this.client.pollRun(run_id, {
        onStage: (stage) => {
          entry.stage = stage;
          notify();
        },
      });
      entry.run = run;
      entry.attempts = run.attempts.length;
      if (run.final_status === 'answered') {
        entry.state = 'answered';
        entry.answer = run.answer;
      } else {
        entry.state = 'failed';
        entry.failureReason = run.failure_cause ?? 'unknown failure';
      }
    } catch (err) {
      entry.state = 'error';
      if (err instanceof ApiError) {
        entry.errorCode = err.code;
        entry.failureReason = err.message;
      } else {
        entry.errorCode = 'CLIENT_ERROR';
        entry.failureReason = String(err);
      }
    }
    notify();
    return entry;
  }

  /** Re-fetch finished entries by run id (reload reconstruction). */
  async reconcile(runIds: string[]): Promise<void> {
    for (const runId of runIds) {
      try {
        const run = await this.client.pollRun(runId, { deadlineMs: 0 });
        this.entries.push({
          query: run.query,
          runId: run.run_id,
          state: run.final_status === 'answered' ? 'answered' : 'failed',
          answer: run.answer,
          failureReason: run.failure_cause ?? undefined,
          attempts: run.attempts.length,
          run,
        });
      } catch (err) {
        if (err instanceof ApiError && (err.code === 'RUN_UNKNOWN' || err.code === 'POLL_TIMEOUT')) {
          continue;
        }
        throw err;
      }
    }
  }
}
