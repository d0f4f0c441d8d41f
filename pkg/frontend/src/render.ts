import { ChatEntry } from './session';
import { AttemptView, NetworkEntry, RunView } from './types';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
    .replace(/'/g, '&#39;');
}

export function formatAnswer(answer: unknown): string {
  if (answer === null || answer === undefined) return '(no value)';
  if (typeof answer === 'number' || typeof answer === 'boolean') return String(answer);
  if (typeof answer === 'string') return answer;
  return JSON.stringify(answer);
}

export function renderAnswerBubble(entry: ChatEntry): string {
  const query = escapeHtml(entry.query);
  switch (entry.state) {
    case 'pending': {
      const stage = entry.stage ? ` (${escapeHtml(entry.stage)})` : '';
      return `<div class="bubble pending"><div class="query">${query}</div><div class="status">working${stage}…</div></div>`;
    }
    case 'answered': {
      const trace = entry.runId
        ? ` <a class="trace-link" data-run-id="${escapeHtml(entry.runId)}" href="#trace/${escapeHtml(entry.runId)}">trace</a>`
        : '';
      return `<div class="bubble answered"><div class="query">${query}</div><div class="answer">${escapeHtml(formatAnswer(entry.answer))}</div>${trace}</div>`;
    }
    case 'failed': {
      const attempts = entry.attempts ?? 0;
      const noun = attempts === 1 ? 'attempt' : 'attempts';
      const trace = entry.runId
        ? ` <a class="trace-link" data-run-id="${escapeHtml(entry.runId)}" href="#trace/${escapeHtml(entry.runId)}">trace</a>`
        : '';
      return `<div class="bubble failed"><div class="query">${query}</div><div class="failure">failed after ${attempts} ${noun}: ${escapeHtml(entry.failureReason ?? '')}</div>${trace}</div>`;
    }
    case 'error':
      return `<div class="bubble error"><div class="query">${query}</div><span class="error-chip">${escapeHtml(entry.errorCode ?? 'ERROR')}</span> ${escapeHtml(entry.failureReason ?? '')}</div>`;
  }
}

function renderEnvelope(attempt: AttemptView): string {
  const env = attempt.envelope;
  if (env.status === 'ok') {
    return `<div class="envelope ok">ok → <code>${escapeHtml(formatAnswer(env.result))}</code> (${env.wall_time_ms} ms)</div>`;
  }
  if (env.status === 'timeout') {
    return `<div class="envelope timeout">timed out after ${env.wall_time_ms} ms</div>`;
  }
  const traceback = escapeHtml(env.traceback ?? '');
  return `<div class="envelope error"><details><summary>error (${env.wall_time_ms} ms)</summary><pre class="traceback">${traceback}</pre></details></div>`;
}

function renderAttempt(attempt: AttemptView): string {
  const hashes = Object.entries(attempt.prompt_hashes)
    .map(([stage, hash]) => `<span class="hash" data-hash="${escapeHtml(hash)}">${escapeHtml(stage)}: ${escapeHtml(hash.slice(0, 12))}</span>`)
    .join(' ');
  const isRepair = attempt.attempt_index > 0;
  return [
    `<section class="attempt${isRepair ? ' repair' : ''}" data-attempt="${attempt.attempt_index}">`,
    `<h4>attempt ${attempt.attempt_index}${isRepair ? ' (repair)' : ''}</h4>`,
    `<div class="hashes">${hashes}</div>`,
    `<pre class="code">${escapeHtml(attempt.function_block)}</pre>`,
    `<pre class="code eval">${escapeHtml(attempt.eval_line)}</pre>`,
    renderEnvelope(attempt),
    '</section>',
  ].join('\n');
}

/**
 * Full trace view of one finished run: retrievals with scores, every
 * attempt's code and envelope, and the run configuration. Everything shown
 * is a verbatim API field; the console computes nothing of its own.
 */
export function renderTrace(run: RunView): string {
  const retrievals = run.retrievals
    .map((r) => `<li><code>${escapeHtml(r.doc_id)}</code> <span class="score">${r.score.toFixed(4)}</span></li>`)
    .join('\n');
  const attempts = run.attempts.map(renderAttempt).join('\n');
  const outcome =
    run.final_status === 'answered'
      ? `<div class="outcome answered">answer: <code>${escapeHtml(formatAnswer(run.answer))}</code></div>`
      : `<div class="outcome failed">failed: ${escapeHtml(run.failure_cause ?? '')}</div>`;
  return [
    `<article class="trace" data-run-id="${escapeHtml(run.run_id)}">`,
    `<header><h3>${escapeHtml(run.query)}</h3>`,
    `<div class="meta">network ${escapeHtml(run.network_id)} · ${escapeHtml(run.config.prompt_level)} · retries ${run.config.max_retries} · top-k ${run.config.top_k} · templates ${escapeHtml(run.config.template_version)}</div></header>`,
    `<h4>retrieved methods</h4><ol class="retrievals">${retrievals}</ol>`,
    attempts,
    outcome,
    '</article>',
  ].join('\n');
}

export function renderNotFound(runId: string): string {
  return `<article class="trace not-found">no run <code>${escapeHtml(runId)}</code></article>`;
}

export function renderNetworkPicker(networks: NetworkEntry[], selected: string): string {
  const options = networks
    .map((n) => {
      const sel = n.network_id === selected ? ' selected' : '';
      const quality = n.quality_configured ? ' (quality)' : '';
      return `<option value="${escapeHtml(n.network_id)}"${sel}>${escapeHtml(n.display_name)}${quality}</option>`;
    })
    .join('');
  return `<select id="network-picker">${options}</select>`;
}

export function renderSession(entries: ChatEntry[]): string {
  return `<div class="chat">${entries.map(renderAnswerBubble).join('\n')}</div>`;
}
