/** Pure view renderers: service JSON in, HTML strings out.
 *
 * No scientific computation happens here; every displayed figure is
 * formatted straight from a service response (the what-if delta is the
 * one presentational subtraction, computed from two displayed values).
 */

import type { ParseFailure, PredictResponse, RuleEntry, TaskSummary } from './api.js';
import type { HistoryEntry } from './store.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

const pct = (importance: number): string => `${(importance * 100).toFixed(1)}%`;
const num = (value: number): string =>
  Number.isInteger(value) ? String(value) : value.toFixed(4).replace(/0+$/, '').replace(/\.$/, '');

export function renderTaskOptions(tasks: TaskSummary[], selected: string | null): string {
  return tasks
    .map(
      (task) =>
        `<option value="${escapeHtml(task.id)}"${task.id === selected ? ' selected' : ''}>` +
        `${escapeHtml(task.id)} (${task.kind}, ${task.n_rules} rules)</option>`,
    )
    .join('');
}

export function renderPredictionCard(response: PredictResponse): string {
  const label =
    response.probability === null
      ? `value ${num(response.prediction)}`
      : `label ${num(response.prediction)} &middot; probability ${num(response.probability)}`;
  const bars = response.contributions
    .map(
      (c) => `
    <div class="contribution" data-rule="${escapeHtml(c.rule_id)}">
      <span class="rule-id">${escapeHtml(c.rule_id)}</span>
      <code class="dsl">${escapeHtml(c.dsl)}</code>
      <span class="value">${num(c.value)}</span>
      <div class="bar"><div class="fill" style="width:${pct(c.importance)}"></div></div>
      <span class="importance">${pct(c.importance)}</span>
    </div>`,
    )
    .join('');
  const notice = response.notice
    ? `<p class="notice">${escapeHtml(response.notice)}</p>`
    : '';
  return `
<article class="prediction-card" data-smiles="${escapeHtml(response.smiles)}">
  <header><code>${escapeHtml(response.smiles)}</code> &rarr; <strong>${label}</strong></header>
  <section class="contributions">${bars}</section>
  <section class="explanation">${escapeHtml(response.explanation)}</section>
  ${notice}
</article>`;
}

export function renderParseError(failure: ParseFailure): string {
  const caret =
    failure.position === null
      ? ''
      : `<pre class="caret">${escapeHtml(failure.smiles)}\n${' '.repeat(failure.position)}^</pre>`;
  return `
<div class="parse-error" role="alert">
  <p>${escapeHtml(failure.error)}</p>
  ${caret}
</div>`;
}

const VERDICT_BADGES: Record<string, string> = {
  'significant+supported': 'badge-supported',
  'significant+not-found': 'badge-not-found',
  insignificant: 'badge-insignificant',
  'significant+unreviewed': 'badge-unreviewed',
};

export function verdictBadge(rule: RuleEntry): string {
  if (!rule.verdict) {
    return '<span class="badge badge-unvalidated">unvalidated</span>';
  }
  const cls = VERDICT_BADGES[rule.verdict.category] ?? 'badge-unvalidated';
  return `<span class="badge ${cls}">${escapeHtml(rule.verdict.category)}</span>`;
}

export function renderRuleTable(rules: RuleEntry[], sortByP = false): string {
  const ordered = [...rules];
  if (sortByP) {
    ordered.sort((a, b) => {
      const pa = a.verdict ? a.verdict.p_value : Number.POSITIVE_INFINITY;
      const pb = b.verdict ? b.verdict.p_value : Number.POSITIVE_INFINITY;
      return pa - pb;
    });
  }
  const rows = ordered
    .map(
      (rule) => `
    <tr data-rule="${escapeHtml(rule.id)}">
      <td>${escapeHtml(rule.id)}</td>
      <td><code>${escapeHtml(rule.dsl)}</code></td>
      <td><span class="badge badge-${escapeHtml(rule.provenance)}">${escapeHtml(rule.provenance)}</span></td>
      <td>${pct(rule.importance)}</td>
      <td>${rule.verdict ? num(rule.verdict.p_value) : '&mdash;'}</td>
      <td>${verdictBadge(rule)}</td>
      <td class="source">${escapeHtml(rule.source_text)}</td>
    </tr>`,
    )
    .join('');
  return `
<table class="rule-table">
  <thead>
    <tr><th>id</th><th>expression</th><th>provenance</th><th>importance</th><th>p-value</th><th>verdict</th><th>original text</th></tr>
  </thead>
  <tbody>${rows}</tbody>
</table>`;
}

export function renderWhatIfDiff(a: HistoryEntry, b: HistoryEntry): string {
  const byRule = new Map(b.response.contributions.map((c) => [c.rule_id, c]));
  const rows = a.response.contributions
    .map((left) => {
      const right = byRule.get(left.rule_id);
      if (!right) {
        return '';
      }
      const delta = right.value - left.value;
      const cls = delta === 0 ? 'delta-zero' : 'delta-nonzero';
      const sign = delta > 0 ? '+' : '';
      return `
    <tr data-rule="${escapeHtml(left.rule_id)}" class="${cls}">
      <td><code>${escapeHtml(left.dsl)}</code></td>
      <td>${num(left.value)}</td>
      <td>${num(right.value)}</td>
      <td class="delta">${sign}${num(delta)}</td>
    </tr>`;
    })
    .join('');
  const header = (entry: HistoryEntry): string => {
    const p = entry.response.probability;
    return `<code>${escapeHtml(entry.smiles)}</code>${p === null ? '' : ` (p=${num(p)})`}`;
  };
  return `
<section class="what-if">
  <header>${header(a)} vs ${header(b)}</header>
  <table class="diff-table">
    <thead><tr><th>rule</th><th>A</th><th>B</th><th>&Delta;</th></tr></thead>
    <tbody>${rows}</tbody>
  </table>
</section>`;
}

export function renderHistory(entries: readonly HistoryEntry[]): string {
  const items = entries
    .map((entry) => {
      const p = entry.response.probability;
      return `<li data-index="${entry.index}"><code>${escapeHtml(entry.smiles)}</code>${
        p === null ? '' : ` &rarr; ${num(p)}`
      }</li>`;
    })
    .join('');
  return `<ol class="history">${items}</ol>`;
}
