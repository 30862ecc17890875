import { FetchLike } from "../src/api.js";
import { QueryContext } from "../src/types.js";

export interface Deferred<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (reason?: unknown) => void;
}

export function deferred<T>(): Deferred<T> {
  let resolve!: (value: T) => void;
  let reject!: (reason?: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export interface RecordedCall {
  url: string;
  init?: RequestInit;
  body?: unknown;
}

/**
 * fetch stub driven by a handler; records every call with its parsed body.
 */
export function mockFetch(
  handler: (url: string, init?: RequestInit) => Response | Promise<Response>,
): { fetchLike: FetchLike; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const fetchLike: FetchLike = async (url, init) => {
    const body = typeof init?.body === "string" ? JSON.parse(init.body) : undefined;
    calls.push({ url, init, body });
    return handler(url, init);
  };
  return { fetchLike, calls };
}

export const testContext = (): QueryContext => ({
  language: "en",
  measure: "cosine",
  model_kind: "esa",
});

export function flushMicrotasks(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
