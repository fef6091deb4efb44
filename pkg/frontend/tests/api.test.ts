import { readFileSync } from 'node:fs';
import { join } from 'node:path';
import { describe, expect, it } from 'vitest';

import { ApiClient, ParseError, ServiceError } from '../src/api.js';

function fixtureText(name: string): string {
  return readFileSync(join(__dirname, 'fixtures', name), 'utf-8');
}

function stubFetch(routes: Record<string, { status: number; body: string }>) {
  const calls: { url: string; init?: RequestInit }[] = [];
  const impl = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    const route = routes[url];
    if (!route) {
      return new Response('not found', { status: 404 });
    }
    return new Response(route.body, {
      status: route.status,
      headers: { 'Content-Type': 'application/json' },
    });
  };
  return { impl, calls };
}

describe('api client', () => {
  it('fetches tasks from the configured base url', async () => {
    const { impl, calls } = stubFetch({
      'http://svc/tasks': { status: 200, body: fixtureText('tasks.json') },
    });
    const client = new ApiClient('http://svc', impl);
    const tasks = await client.listTasks();
    expect(tasks[0]?.id).toBe('bbbp');
    expect(calls[0]?.url).toBe('http://svc/tasks');
  });

  it('posts predictions and resolves the payload unchanged', async () => {
    const body = fixtureText('predict_ethanol.json');
    const { impl, calls } = stubFetch({ 'http://svc/predict': { status: 200, body } });
    const client = new ApiClient('http://svc', impl);
    const response = await client.predict('CCO', 'bbbp', 25);
    expect(JSON.stringify(response)).toBe(JSON.stringify(JSON.parse(body)));
    expect(JSON.parse(calls[0]?.init?.body as string)).toEqual({
      smiles: 'CCO',
      task_id: 'bbbp',
      k: 25,
    });
  });

  it('turns 422 into ParseError with the diagnostic payload', async () => {
    const { impl } = stubFetch({
      'http://svc/predict': { status: 422, body: fixtureText('predict_invalid.json') },
    });
    const client = new ApiClient('http://svc', impl);
    await expect(client.predict('C1CC', 'bbbp')).rejects.toSatisfy((err: unknown) => {
      expect(err).toBeInstanceOf(ParseError);
      expect((err as ParseError).failure.position).toBe(1);
      return true;
    });
  });

  it('other failures become ServiceError with the status', async () => {
    const { impl } = stubFetch({});
    const client = new ApiClient('http://svc', impl);
    await expect(client.listTasks()).rejects.toSatisfy((err: unknown) => {
      expect(err).toBeInstanceOf(ServiceError);
      expect((err as ServiceError).status).toBe(404);
      return true;
    });
  });
});
