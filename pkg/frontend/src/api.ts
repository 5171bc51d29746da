/**
 * Typed client for the ovp-toolkit HTTP service.
 *
 * The UI never computes grammar locally: every choice list, lock reason,
 * validation status, and rendered surface shown to the user comes from
 * these endpoints verbatim.
 */

export const SLOT_ORDER = [
  "subject",
  "subject_suffix",
  "verb",
  "verb_tense",
  "object",
  "object_suffix",
  "object_pronoun",
] as const;

export type Slot = (typeof SLOT_ORDER)[number];

export interface LexemeOut {
  id: string;
  surface: string;
  gloss: string;
  category: string;
  proximity?: string;
  plurality?: string;
}

export interface SlotChoices {
  slot: Slot;
  choices: LexemeOut[];
  required: boolean;
  locked_reason: string | null;
}

export interface OptionsResponse {
  slots: SlotChoices[];
  status: string;
  selections: Partial<Record<Slot, string>>;
  surface?: string;
}

export interface TranslationRecord {
  input: string;
  simples: unknown[];
  comparators: string[];
  ovp_surfaces: string[];
  backwards: string[];
  scores?: { simple: number; comparator: number; backwards: number };
  model_name?: string;
  timestamp?: string;
}

export interface HistoryPage {
  total: number;
  records: TranslationRecord[];
}

export interface RandomSentence {
  selections: Partial<Record<Slot, string>>;
  surface: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }

  /** 502 means the chat backend is down; the service says to retry. */
  get retryable(): boolean {
    return this.status === 502;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Serialize selections in fixed slot order so identical states produce
 * identical URLs (used as cache/fixture keys). */
export function selectionsQuery(
  selections: Partial<Record<Slot, string>>,
): string {
  const parts: string[] = [];
  for (const slot of SLOT_ORDER) {
    const id = selections[slot];
    if (id) parts.push(`${slot}=${id}`);
  }
  return parts.join("&");
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (typeof body.detail === "string") detail = body.detail;
    else if (body.detail) detail = JSON.stringify(body.detail);
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, detail);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  options(selections: Partial<Record<Slot, string>>): Promise<OptionsResponse> {
    const query = selectionsQuery(selections);
    return this.get(`/api/options${query ? `?${query}` : ""}`);
  }

  translateOvp2En(
    selections: Partial<Record<Slot, string>>,
    continuousPast = false,
  ): Promise<{ surface: string; structured: unknown[]; english: string }> {
    return this.post("/api/translate/ovp2en", {
      selections,
      continuous_past: continuousPast,
    });
  }

  translateEn2Ovp(text: string, score = true): Promise<TranslationRecord> {
    return this.post("/api/translate/en2ovp", { text, score });
  }

  history(limit = 50, offset = 0): Promise<HistoryPage> {
    return this.get(`/api/history?limit=${limit}&offset=${offset}`);
  }

  random(seed: number): Promise<RandomSentence> {
    return this.get(`/api/random?seed=${seed}`);
  }

  healthz(): Promise<{ status: string }> {
    return this.get("/healthz");
  }
}
