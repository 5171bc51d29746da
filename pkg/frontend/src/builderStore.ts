/**
 * Builder state: current selections plus the server's latest word on which
 * choices are valid. All constraint logic lives on the server; this store
 * only tracks selections, forwards them, and mirrors the response.
 *
 * Because every selection triggers a round trip, a slow response for an old
 * state can arrive after a newer one. Each request gets a token and any
 * response that is not the latest token is discarded, so the UI never shows
 * choices for a state the user has already left.
 */
import {
  ApiClient,
  ApiError,
  OptionsResponse,
  Slot,
  SlotChoices,
} from "./api.js";

export interface BuilderState {
  selections: Partial<Record<Slot, string>>;
  slots: SlotChoices[];
  status: string;
  /** Server-rendered surface; present only when the sentence is complete. */
  surface: string | null;
  pending: boolean;
  error: string | null;
}

type Listener = (state: BuilderState) => void;

export class BuilderStore {
  private state: BuilderState = {
    selections: {},
    slots: [],
    status: "incomplete",
    surface: null,
    pending: false,
    error: null,
  };
  private listeners: Listener[] = [];
  private requestToken = 0;

  constructor(private readonly api: ApiClient) {}

  getState(): BuilderState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private setState(patch: Partial<BuilderState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  /** Fetch options for the current selections; stale responses are dropped. */
  private async refresh(): Promise<void> {
    const token = ++this.requestToken;
    this.setState({ pending: true, error: null });
    let response: OptionsResponse;
    try {
      response = await this.api.options(this.state.selections);
    } catch (err) {
      if (token !== this.requestToken) return; // superseded; ignore
      const message =
        err instanceof ApiError ? err.message : "service unreachable";
      this.setState({ pending: false, error: message });
      return;
    }
    if (token !== this.requestToken) return; // superseded; ignore
    this.setState({
      // adopt the server's view of the selections, not our optimistic one
      selections: response.selections,
      slots: response.slots,
      status: response.status,
      surface: response.surface ?? null,
      pending: false,
    });
  }

  load(): Promise<void> {
    return this.refresh();
  }

  select(slot: Slot, lexemeId: string): Promise<void> {
    this.setState({
      selections: { ...this.state.selections, [slot]: lexemeId },
    });
    return this.refresh();
  }

  clear(slot: Slot): Promise<void> {
    const selections = { ...this.state.selections };
    delete selections[slot];
    this.setState({ selections });
    return this.refresh();
  }

  reset(): Promise<void> {
    this.setState({ selections: {} });
    return this.refresh();
  }

  get complete(): boolean {
    return this.state.status === "complete";
  }
}
