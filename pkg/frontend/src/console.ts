import { ChatSession, SessionControls } from './session';
import { NetworkEntry } from './types';
import { escapeHtml, renderNetworkPicker, renderSession } from './render';

const STYLES = `
  body { font: 14px system-ui, sans-serif; margin: 0; background: #f4f6f8; color: #1c2733; }
  .console { max-width: 860px; margin: 0 auto; padding: 16px; }
  .controls { display: flex; gap: 12px; align-items: center; padding: 8px 0; }
  .controls label { color: #5a6b7c; }
  .bubble { border-radius: 8px; padding: 10px 14px; margin: 8px 0; background: #fff; box-shadow: 0 1px 2px rgba(0,0,0,.08); }
  .bubble .query { font-weight: 600; margin-bottom: 4px; }
  .bubble.failed .failure { color: #b4232a; }
  .bubble.error .error-chip { background: #b4232a; color: #fff; border-radius: 4px; padding: 1px 6px; font-size: 12px; }
  .bubble.pending .status { color: #5a6b7c; font-style: italic; }
  .trace .code { background: #0b1020; color: #dfe7ff; padding: 8px; border-radius: 6px; overflow-x: auto; }
  .trace .traceback { background: #fbeaea; color: #7a1e22; padding: 8px; border-radius: 6px; overflow-x: auto; }
  .trace .hash { font-family: monospace; font-size: 12px; color: #5a6b7c; margin-right: 8px; }
  .attempt.repair { border-left: 3px solid #eec643; padding-left: 10px; }
  .outcome.answered code { color: #1e7a3c; }
  .ask-form { display: flex; gap: 8px; margin-top: 12px; }
  .ask-form input[type=text] { flex: 1; padding: 8px; border: 1px solid #c8d2dc; border-radius: 6px; }
`;

export interface PageState {
  session: ChatSession;
  networks: NetworkEntry[];
  /** Pre-filled query text, used by the re-ask-with-modification button. */
  draft?: string;
}

function renderControls(controls: SessionControls): string {
  return [
    '<div class="controls">',
    `<label>prompt <select id="prompt-level">` +
      `<option value="basic"${controls.promptLevel === 'basic' ? ' selected' : ''}>basic</option>` +
      `<option value="complex"${controls.promptLevel === 'complex' ? ' selected' : ''}>complex</option>` +
      '</select></label>',
    `<label>retries <input id="max-retries" type="number" min="0" max="10" value="${controls.maxRetries}"></label>`,
    `<label>top-k <input id="top-k" type="number" min="1" value="${controls.topK}"></label>`,
    '</div>',
  ].join('\n');
}

/**
 * Assemble the whole console page as one HTML string. There is no client
 * side framework; the host page wires up the form and re-renders on each
 * session update.
 */
export function renderPage(state: PageState): string {
  const draft = escapeHtml(state.draft ?? '');
  return [
    '<!doctype html>',
    '<html lang="en">',
    '<head>',
    '<meta charset="utf-8">',
    '<title>hydroquery console</title>',
    `<style>${STYLES}</style>`,
    '</head>',
    '<body>',
    '<main class="console">',
    '<h2>hydroquery</h2>',
    renderNetworkPicker(state.networks, state.session.networkId),
    renderControls(state.session.controls),
    renderSession(state.session.entries),
    '<form class="ask-form" id="ask-form">',
    `<input type="text" id="query" placeholder="Ask about the network…" value="${draft}">`,
    '<button type="submit">Ask</button>',
    '</form>',
    '</main>',
    '</body>',
    '</html>',
  ].join('\n');
}

/** The "what if" affordance: pre-fill the previous query for editing. */
export function reaskDraft(session: ChatSession): string | undefined {
  const last = session.entries[session.entries.length - 1];
  return last?.query;
}
