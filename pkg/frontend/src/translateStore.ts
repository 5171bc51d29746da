/**
 * English → OVP translation panel state. Submits text to the service,
 * keeps the returned record, and classifies each similarity score against
 * the unrelated-sentence baseline threshold (mean + 3·std, as reported by
 * `ovp eval baseline`; the default is the all-MiniLM-L6-v2 figure).
 */
import { ApiClient, ApiError, TranslationRecord } from "./api.js";

export const DEFAULT_RELATEDNESS_THRESHOLD = 0.757;

export type Badge = "related" | "unrelated";

export function scoreBadge(
  score: number,
  threshold: number = DEFAULT_RELATEDNESS_THRESHOLD,
): Badge {
  return score > threshold ? "related" : "unrelated";
}

export interface TranslateState {
  text: string;
  record: TranslationRecord | null;
  pending: boolean;
  error: string | null;
  /** True when the failure was a 502 and the service asked us to retry. */
  retryable: boolean;
}

type Listener = (state: TranslateState) => void;

export class TranslateStore {
  private state: TranslateState = {
    text: "",
    record: null,
    pending: false,
    error: null,
    retryable: false,
  };
  private listeners: Listener[] = [];
  private requestToken = 0;

  constructor(
    private readonly api: ApiClient,
    readonly threshold: number = DEFAULT_RELATEDNESS_THRESHOLD,
  ) {}

  getState(): TranslateState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private setState(patch: Partial<TranslateState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  setText(text: string): void {
    this.setState({ text });
  }

  get canSubmit(): boolean {
    return this.state.text.trim().length > 0 && !this.state.pending;
  }

  badges(): Record<string, Badge> | null {
    const scores = this.state.record?.scores;
    if (!scores) return null;
    const out: Record<string, Badge> = {};
    for (const [name, value] of Object.entries(scores)) {
      out[name] = scoreBadge(value, this.threshold);
    }
    return out;
  }

  async submit(): Promise<void> {
    if (!this.canSubmit) return;
    const token = ++this.requestToken;
    this.setState({ pending: true, error: null, retryable: false });
    try {
      const record = await this.api.translateEn2Ovp(this.state.text.trim());
      if (token !== this.requestToken) return;
      this.setState({ record, pending: false });
    } catch (err) {
      if (token !== this.requestToken) return;
      if (err instanceof ApiError) {
        this.setState({
          pending: false,
          error: err.message,
          retryable: err.retryable,
        });
      } else {
        this.setState({
          pending: false,
          error: "service unreachable",
          retryable: true,
        });
      }
    }
  }
}
