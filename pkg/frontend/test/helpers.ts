import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { FetchLike } from '../src/api';
import { RunView } from '../src/types';

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, 'fixtures', name), 'utf-8')) as T;
}

export function runFixture(name: string): RunView {
  return fixture<RunView>(`${name}.json`);
}

export interface CannedResponse {
  status: number;
  body: unknown;
}

export interface SeenRequest {
  url: string;
  method: string;
  body: unknown;
}

/** A fetch stub fed from an ordered script of responses. */
export function makeFetch(script: CannedResponse[], seen: SeenRequest[] = []): FetchLike {
  return async (url, init) => {
    seen.push({
      url,
      method: init?.method ?? 'GET',
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    const next = script.shift();
    if (!next) throw new Error(`unexpected request: ${url}`);
    return new Response(JSON.stringify(next.body), {
      status: next.status,
      headers: { 'Content-Type': 'application/json' },
    });
  };
}

export const instantSleep = async (_ms: number): Promise<void> => {};
