import { readFileSync } from 'node:fs';
import { join } from 'node:path';
import { describe, expect, it } from 'vitest';

import type { ParseFailure, PredictResponse, RuleEntry, TaskSummary } from '../src/api.js';
import {
  renderHistory,
  renderParseError,
  renderPredictionCard,
  renderRuleTable,
  renderTaskOptions,
  renderWhatIfDiff,
  verdictBadge,
} from '../src/render.js';
import { SessionState } from '../src/store.js';

function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(__dirname, 'fixtures', name), 'utf-8')) as T;
}

const tasks = fixture<TaskSummary[]>('tasks.json');
const rules = fixture<{ task_id: string; rules: RuleEntry[] }>('rules.json').rules;
const ethanol = fixture<PredictResponse>('predict_ethanol.json');
const acetaldehyde = fixture<PredictResponse>('predict_acetaldehyde.json');
const invalid = fixture<ParseFailure>('predict_invalid.json');

describe('prediction card', () => {
  it('renders one contribution bar per contribution, importance-sorted', () => {
    const html = renderPredictionCard(ethanol);
    const bars = html.match(/class="contribution"/g) ?? [];
    expect(bars.length).toBe(ethanol.contributions.length);
    const importances = ethanol.contributions.map((c) => c.importance);
    expect(importances).toEqual([...importances].sort((a, b) => b - a));
  });

  it('shows only numbers taken from the recorded response', () => {
    const html = renderPredictionCard(ethanol);
    expect(html).toContain(ethanol.smiles);
    expect(html).toContain((ethanol.probability as number).toFixed(4).replace(/0+$/, ''));
    for (const contribution of ethanol.contributions) {
      expect(html).toContain(contribution.rule_id);
      expect(html).toContain(`${(contribution.importance * 100).toFixed(1)}%`);
    }
  });

  it('includes the service explanation text verbatim', () => {
    expect(renderPredictionCard(ethanol)).toContain('Prediction for CCO');
  });

  it('escapes markup in service strings', () => {
    const hostile = { ...ethanol, explanation: '<script>alert(1)</script>' };
    const html = renderPredictionCard(hostile);
    expect(html).not.toContain('<script>alert');
    expect(html).toContain('&lt;script&gt;');
  });
});

describe('parse errors', () => {
  it('shows the diagnostic and a caret at the reported position', () => {
    const html = renderParseError(invalid);
    expect(html).toContain('unclosed ring closure 1');
    const caretLine = html.split('\n').find((line) => /^\s*\^/.test(line));
    expect(caretLine).toBeDefined();
    expect((caretLine as string).indexOf('^')).toBe(invalid.position);
  });
});

describe('rule table', () => {
  it('renders every rule with provenance and verdict badges', () => {
    const html = renderRuleTable(rules);
    expect(rules.length).toBeGreaterThanOrEqual(5);
    for (const rule of rules) {
      expect(html).toContain(`data-rule="${rule.id}"`);
    }
    expect(html).toContain('badge-synthesized');
    expect(html).toContain('badge-inferred');
    expect(html).toContain('badge-supported');
    expect(html).toContain('badge-not-found');
    expect(html).toContain('badge-insignificant');
  });

  it('covers all four verdict states plus unvalidated', () => {
    const unvalidated: RuleEntry = { ...(rules[0] as RuleEntry), id: 'x', verdict: null };
    expect(verdictBadge(unvalidated)).toContain('unvalidated');
    const categories = new Set(rules.map((r) => r.verdict?.category).filter(Boolean));
    expect(categories).toContain('significant+supported');
    expect(categories).toContain('significant+not-found');
    expect(categories).toContain('insignificant');
  });

  it('sorts by p-value when asked', () => {
    const html = renderRuleTable(rules, true);
    const ids = [...html.matchAll(/data-rule="([^"]+)"/g)].map((m) => m[1]);
    const ps = ids.map((id) => {
      const rule = rules.find((r) => r.id === id) as RuleEntry;
      return rule.verdict ? rule.verdict.p_value : Number.POSITIVE_INFINITY;
    });
    expect(ps).toEqual([...ps].sort((a, b) => a - b));
  });
});

describe('what-if diff', () => {
  function history(): SessionState {
    const state = new SessionState();
    state.record(ethanol);
    state.record(acetaldehyde);
    return state;
  }

  it('identical entries give all-zero deltas', () => {
    const state = new SessionState();
    state.record(ethanol);
    state.record(ethanol);
    const html = renderWhatIfDiff(state.entry(0), state.entry(1));
    expect(html).not.toContain('delta-nonzero');
  });

  it('ethanol vs acetaldehyde flags the carbonyl rule', () => {
    const state = history();
    const html = renderWhatIfDiff(state.entry(0), state.entry(1));
    const carbonyl = ethanol.contributions.find((c) => c.dsl === 'count(C=O)');
    expect(carbonyl).toBeDefined();
    const row = html
      .split('<tr')
      .find((chunk) => chunk.includes(`data-rule="${(carbonyl as { rule_id: string }).rule_id}"`));
    expect(row).toBeDefined();
    expect(row).toContain('delta-nonzero');
    expect(row).toContain('+1');
  });

  it('uses the recorded values on both sides', () => {
    const state = history();
    const html = renderWhatIfDiff(state.entry(0), state.entry(1));
    expect(html).toContain(ethanol.smiles);
    expect(html).toContain(acetaldehyde.smiles);
  });
});

describe('task options and history', () => {
  it('lists the fixture task', () => {
    const html = renderTaskOptions(tasks, 'bbbp');
    expect(html).toContain('value="bbbp"');
    expect(html).toContain('selected');
  });

  it('history renders entries in order', () => {
    const state = new SessionState();
    state.record(ethanol);
    state.record(acetaldehyde);
    const html = renderHistory(state.history);
    expect(html.indexOf('CCO')).toBeLessThan(html.indexOf('CC=O'));
  });
});
