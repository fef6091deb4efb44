/** Typed client for the molrules HTTP service. All numbers the UI shows
 * come from these response payloads; the client never computes any. */

export interface TaskMetrics {
  [partition: string]: unknown;
}

export interface TaskSummary {
  id: string;
  kind: 'classification' | 'regression';
  n_rules: number;
  metrics: TaskMetrics;
}

export interface RuleVerdict {
  p_value: number;
  statistic: number | null;
  method: string;
  significant: boolean;
  literature_supported: boolean | null;
  category: string;
}

export interface RuleEntry {
  id: string;
  dsl: string;
  provenance: 'synthesized' | 'inferred' | 'manual';
  source_text: string;
  importance: number;
  verdict: RuleVerdict | null;
}

export interface Contribution {
  rule_id: string;
  dsl: string;
  value: number;
  importance: number;
}

export interface PredictResponse {
  task_id: string;
  smiles: string;
  prediction: number;
  probability: number | null;
  contributions: Contribution[];
  explanation: string;
  generator: string;
  notice: string;
}

export interface ParseFailure {
  error: string;
  position: number | null;
  smiles: string;
}

export interface JobTicket {
  job_id: string;
}

export interface JobStatus {
  id: string;
  kind: string;
  status: 'queued' | 'running' | 'done' | 'error';
  error?: string;
  result?: Record<string, unknown>;
}

export class ParseError extends Error {
  constructor(public readonly failure: ParseFailure) {
    super(failure.error);
  }
}

export class ServiceError extends Error {
  constructor(message: string, public readonly status: number) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path);
    if (!response.ok) {
      throw new ServiceError(`GET ${path} failed (${response.status})`, response.status);
    }
    return (await response.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (response.status === 422) {
      throw new ParseError((await response.json()) as ParseFailure);
    }
    if (!response.ok) {
      throw new ServiceError(`POST ${path} failed (${response.status})`, response.status);
    }
    return (await response.json()) as T;
  }

  listTasks(): Promise<TaskSummary[]> {
    return this.get('/tasks');
  }

  taskRules(taskId: string): Promise<{ task_id: string; rules: RuleEntry[] }> {
    return this.get(`/tasks/${encodeURIComponent(taskId)}/rules`);
  }

  predict(smiles: string, taskId: string, k = 5): Promise<PredictResponse> {
    return this.post('/predict', { smiles, task_id: taskId, k });
  }

  synthesize(taskId: string): Promise<JobTicket> {
    return this.post('/synthesize', { task_id: taskId });
  }

  infer(taskId: string): Promise<JobTicket> {
    return this.post('/infer', { task_id: taskId });
  }

  jobStatus(jobId: string): Promise<JobStatus> {
    return this.get(`/jobs/${encodeURIComponent(jobId)}`);
  }
}
