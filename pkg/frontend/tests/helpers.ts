/**
 * Test fetch stub replaying responses recorded from the real HTTP service
 * (tests/fixtures/sessions.json). The stub only ever string-matches URLs and
 * request bodies, so every choice list, lock reason, and rendered surface the
 * stores see in tests is a verbatim server response — the UI has no grammar
 * of its own to fall back on.
 */
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type {
  HistoryPage,
  OptionsResponse,
  TranslationRecord,
} from "../src/api.js";
import type { FetchLike } from "../src/api.js";

export interface Fixture {
  sessions: {
    seed: number;
    steps: { slot: string; lexeme_id: string }[];
    final_surface: string;
  }[];
  responses: Record<string, OptionsResponse>;
  translations: { swim: TranslationRecord; migrate: TranslationRecord };
  history: HistoryPage;
}

const here = dirname(fileURLToPath(import.meta.url));

export const fixture: Fixture = JSON.parse(
  readFileSync(join(here, "fixtures", "sessions.json"), "utf-8"),
);

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/** Fetch stub backed by the recorded fixture. */
export function fixtureFetch(): FetchLike {
  return async (url, init) => {
    if (url.startsWith("/api/options")) {
      const query = url.includes("?") ? url.slice(url.indexOf("?") + 1) : "";
      const response = fixture.responses[query];
      if (!response) throw new Error(`no recorded response for "${query}"`);
      return json(response);
    }
    if (url === "/api/translate/en2ovp" && init?.method === "POST") {
      const body = JSON.parse(String(init.body));
      for (const record of Object.values(fixture.translations)) {
        if (record.input === body.text) return json(record);
      }
      return json({ detail: `could not segment input: ${body.text}` }, 422);
    }
    if (url.startsWith("/api/history")) {
      return json(fixture.history);
    }
    throw new Error(`unexpected request: ${url}`);
  };
}

/** Fetch stub whose responses resolve only when the test says so, for
 * exercising out-of-order (stale) completions. */
export function deferredFetch(): {
  fetch: FetchLike;
  requests: { url: string; resolve: (body: unknown) => void }[];
} {
  const requests: { url: string; resolve: (body: unknown) => void }[] = [];
  const fetch: FetchLike = (url) =>
    new Promise((resolvePromise) => {
      requests.push({
        url,
        resolve: (body) => resolvePromise(json(body)),
      });
    });
  return { fetch, requests };
}

export function failingFetch(status: number, detail: string): FetchLike {
  return async () => json({ detail }, status);
}
