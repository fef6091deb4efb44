/** DOM wiring for the workbench page. The service base URL comes from
 * `window.MOLRULES_SERVICE_URL`, a `?service=` query parameter, or
 * defaults to same-origin. */

import { ApiClient, ParseError } from './api.js';
import {
  renderHistory,
  renderParseError,
  renderPredictionCard,
  renderRuleTable,
  renderTaskOptions,
  renderWhatIfDiff,
} from './render.js';
import { SessionState } from './store.js';

declare global {
  interface Window {
    MOLRULES_SERVICE_URL?: string;
  }
}

function serviceUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get('service');
  return (fromQuery ?? window.MOLRULES_SERVICE_URL ?? '').replace(/\/$/, '');
}

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

export async function startApp(): Promise<void> {
  const api = new ApiClient(serviceUrl());
  const state = new SessionState();

  const taskSelect = element<HTMLSelectElement>('task-select');
  const smilesInput = element<HTMLInputElement>('smiles-input');
  const errorSlot = element<HTMLDivElement>('error-slot');
  const resultSlot = element<HTMLDivElement>('result-slot');
  const rulesSlot = element<HTMLDivElement>('rules-slot');
  const historySlot = element<HTMLDivElement>('history-slot');
  const compareSlot = element<HTMLDivElement>('compare-slot');
  const compareA = element<HTMLSelectElement>('compare-a');
  const compareB = element<HTMLSelectElement>('compare-b');
  const jobSlot = element<HTMLDivElement>('job-slot');

  const tasks = await api.listTasks();
  taskSelect.innerHTML = renderTaskOptions(tasks, tasks[0]?.id ?? null);
  if (tasks[0]) {
    state.selectTask(tasks[0].id);
    await refreshRules();
  }

  async function refreshRules(): Promise<void> {
    if (!state.taskId) {
      rulesSlot.innerHTML = '<p class="empty">no task selected</p>';
      return;
    }
    const sortByP = element<HTMLInputElement>('sort-by-p').checked;
    const { rules } = await api.taskRules(state.taskId);
    rulesSlot.innerHTML = rules.length
      ? renderRuleTable(rules, sortByP)
      : '<p class="empty">task has no rules</p>';
  }

  function refreshHistory(): void {
    historySlot.innerHTML = renderHistory(state.history);
    const options = state.history
      .map((entry) => `<option value="${entry.index}">#${entry.index} ${entry.smiles}</option>`)
      .join('');
    compareA.innerHTML = options;
    compareB.innerHTML = options;
    element<HTMLButtonElement>('compare-button').disabled = !state.compareEnabled;
  }

  element<HTMLFormElement>('predict-form').addEventListener('submit', async (event) => {
    event.preventDefault();
    if (!state.taskId) {
      return;
    }
    state.setSmiles(smilesInput.value.trim());
    errorSlot.innerHTML = '';
    try {
      const response = await api.predict(state.currentSmiles, state.taskId);
      state.record(response);
      resultSlot.innerHTML = renderPredictionCard(response);
      refreshHistory();
    } catch (err) {
      if (err instanceof ParseError) {
        errorSlot.innerHTML = renderParseError(err.failure);
      } else {
        errorSlot.innerHTML =
          `<div class="network-error">request failed &mdash; ` +
          `<button id="retry-button">retry</button></div>`;
        element<HTMLButtonElement>('retry-button').addEventListener('click', () =>
          element<HTMLFormElement>('predict-form').requestSubmit(),
        );
      }
    }
  });

  taskSelect.addEventListener('change', async () => {
    state.selectTask(taskSelect.value);
    await refreshRules();
  });
  element<HTMLInputElement>('sort-by-p').addEventListener('change', refreshRules);

  element<HTMLButtonElement>('compare-button').addEventListener('click', () => {
    if (!state.compareEnabled) {
      return;
    }
    const a = state.entry(Number(compareA.value));
    const b = state.entry(Number(compareB.value));
    compareSlot.innerHTML = renderWhatIfDiff(a, b);
  });

  async function launchJob(kind: 'synthesize' | 'infer'): Promise<void> {
    if (!state.taskId) {
      return;
    }
    const ticket = kind === 'synthesize' ? await api.synthesize(state.taskId) : await api.infer(state.taskId);
    jobSlot.textContent = `${kind}: queued (${ticket.job_id})`;
    const poll = window.setInterval(async () => {
      const status = await api.jobStatus(ticket.job_id);
      jobSlot.textContent = `${kind}: ${status.status}${status.error ? ` (${status.error})` : ''}`;
      if (status.status === 'done' || status.status === 'error') {
        window.clearInterval(poll);
        if (status.status === 'done') {
          await refreshRules();
        }
      }
    }, 1000);
  }

  element<HTMLButtonElement>('synthesize-button').addEventListener('click', () => launchJob('synthesize'));
  element<HTMLButtonElement>('infer-button').addEventListener('click', () => launchJob('infer'));
}

if (typeof document !== 'undefined' && document.getElementById('predict-form')) {
  startApp().catch((err) => {
    document.body.insertAdjacentHTML(
      'beforeend',
      `<div class="network-error">failed to reach the service: ${String(err)}</div>`,
    );
  });
}
