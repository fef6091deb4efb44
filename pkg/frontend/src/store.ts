/** Per-session state: task selection, the SMILES under edit, and the
 * append-only prediction history the what-if comparison draws from. */

import type { PredictResponse } from './api.js';

export interface HistoryEntry {
  index: number;
  smiles: string;
  response: PredictResponse;
}

export class SessionState {
  taskId: string | null = null;
  currentSmiles = '';
  lastResponse: PredictResponse | null = null;
  private readonly entries: HistoryEntry[] = [];

  selectTask(taskId: string): void {
    this.taskId = taskId;
  }

  setSmiles(smiles: string): void {
    this.currentSmiles = smiles;
  }

  /** Record a successful prediction; failures never enter the history. */
  record(response: PredictResponse): HistoryEntry {
    const entry: HistoryEntry = {
      index: this.entries.length,
      smiles: response.smiles,
      response,
    };
    this.entries.push(entry);
    this.lastResponse = response;
    return entry;
  }

  get history(): readonly HistoryEntry[] {
    return this.entries;
  }

  get compareEnabled(): boolean {
    return this.entries.length >= 2;
  }

  entry(index: number): HistoryEntry {
    const found = this.entries[index];
    if (!found) {
      throw new RangeError(`no history entry ${index}`);
    }
    return found;
  }
}
