import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import {
  DEFAULT_RELATEDNESS_THRESHOLD,
  TranslateStore,
  scoreBadge,
} from "../src/translateStore.js";
import { failingFetch, fixture, fixtureFetch } from "./helpers.js";

function newStore() {
  return new TranslateStore(new ApiClient("", fixtureFetch()));
}

describe("scoreBadge", () => {
  it("classifies against mean + 3·std", () => {
    expect(scoreBadge(0.9)).toBe("related");
    expect(scoreBadge(0.5)).toBe("unrelated");
    expect(scoreBadge(DEFAULT_RELATEDNESS_THRESHOLD)).toBe("unrelated"); // boundary
    expect(scoreBadge(0.9, 0.95)).toBe("unrelated"); // custom threshold
  });
});

describe("submit", () => {
  it("blocks empty and whitespace-only input", async () => {
    const store = newStore();
    expect(store.canSubmit).toBe(false);
    store.setText("   ");
    expect(store.canSubmit).toBe(false);
    await store.submit();
    expect(store.getState().record).toBeNull();
  });

  it("stores the server record and badges for the swim example", async () => {
    const store = newStore();
    store.setText("I am swimming.");
    await store.submit();
    const state = store.getState();
    expect(state.record?.ovp_surfaces).toEqual(["nüü pahabi-ti."]);
    expect(store.badges()).toEqual({
      simple: "related",
      comparator: "related",
      backwards: "related",
    });
  });

  it("badges mixed scores on the migrate example", async () => {
    const store = newStore();
    store.setText(fixture.translations.migrate.input);
    await store.submit();
    const badges = store.badges()!;
    expect(badges.simple).toBe("related"); // 0.761 > 0.757
    expect(badges.comparator).toBe("unrelated");
    expect(badges.backwards).toBe("unrelated");
  });

  it("marks 502 failures retryable and keeps the text", async () => {
    const store = new TranslateStore(
      new ApiClient("", failingFetch(502, "chat backend unavailable, retry later")),
    );
    store.setText("I am swimming.");
    await store.submit();
    const state = store.getState();
    expect(state.retryable).toBe(true);
    expect(state.error).toContain("retry");
    expect(state.text).toBe("I am swimming.");
  });

  it("marks 422 segmentation failures as not retryable", async () => {
    const store = newStore();
    store.setText("Colorless green ideas?");
    await store.submit();
    expect(store.getState().retryable).toBe(false);
    expect(store.getState().error).toContain("segment");
  });
});
