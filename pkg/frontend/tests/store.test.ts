import { readFileSync } from 'node:fs';
import { join } from 'node:path';
import { describe, expect, it } from 'vitest';

import type { PredictResponse } from '../src/api.js';
import { SessionState } from '../src/store.js';

const ethanol = JSON.parse(
  readFileSync(join(__dirname, 'fixtures', 'predict_ethanol.json'), 'utf-8'),
) as PredictResponse;

describe('session state', () => {
  it('history is append-only and indexed', () => {
    const state = new SessionState();
    const first = state.record(ethanol);
    const second = state.record(ethanol);
    expect(first.index).toBe(0);
    expect(second.index).toBe(1);
    expect(state.history.length).toBe(2);
    expect(state.lastResponse).toBe(ethanol);
  });

  it('compare stays disabled until two entries exist', () => {
    const state = new SessionState();
    expect(state.compareEnabled).toBe(false);
    state.record(ethanol);
    expect(state.compareEnabled).toBe(false);
    state.record(ethanol);
    expect(state.compareEnabled).toBe(true);
  });

  it('smiles stays editable independently of history', () => {
    const state = new SessionState();
    state.setSmiles('CC(');
    state.record(ethanol);
    expect(state.currentSmiles).toBe('CC(');
  });

  it('missing entries raise', () => {
    expect(() => new SessionState().entry(0)).toThrow(RangeError);
  });
});
