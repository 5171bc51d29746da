// @vitest-environment happy-dom
import { describe, expect, it } from "vitest";

import { ApiClient, Slot } from "../src/api.js";
import { BuilderStore } from "../src/builderStore.js";
import { TranslateStore } from "../src/translateStore.js";
import { highlightPlaceholders, renderBuilder, renderTranslatePanel } from "../src/view.js";
import { failingFetch, fixture, fixtureFetch } from "./helpers.js";

function builderWithDom() {
  const store = new BuilderStore(new ApiClient("", fixtureFetch()));
  const root = document.createElement("section");
  store.subscribe(() => renderBuilder(root, store));
  return { store, root };
}

function translateWithDom(fetchImpl = fixtureFetch()) {
  const store = new TranslateStore(new ApiClient("", fetchImpl));
  const root = document.createElement("section");
  store.subscribe(() => renderTranslatePanel(root, store));
  renderTranslatePanel(root, store);
  return { store, root };
}

describe("builder view", () => {
  it("disables object controls after an intransitive verb", async () => {
    const { store, root } = builderWithDom();
    await store.load();
    await store.select("verb", "iv:katü");
    for (const slot of ["object", "object_suffix", "object_pronoun"]) {
      const select = root.querySelector<HTMLSelectElement>(`#slot-${slot}`)!;
      expect(select.disabled).toBe(true);
      const reason = root.querySelector(
        `[data-slot="${slot}"] .locked-reason`,
      )!;
      expect(reason.textContent).toBeTruthy();
    }
    // the verb select itself stays enabled
    expect(root.querySelector<HTMLSelectElement>("#slot-verb")!.disabled).toBe(
      false,
    );
  });

  it("offers only u/ui pronouns after the -oka object suffix", async () => {
    const { store, root } = builderWithDom();
    await store.load();
    await store.select("object", "n:tüba");
    await store.select("object_suffix", "os:oka");
    const select = root.querySelector<HTMLSelectElement>(
      "#slot-object_pronoun",
    )!;
    const labels = Array.from(select.options)
      .filter((o) => o.value)
      .map((o) => o.textContent!.split(" ")[0]);
    expect(new Set(labels)).toEqual(new Set(["u", "ui"]));
  });

  it("shows the server-rendered preview for all 20 recorded sessions", async () => {
    for (const session of fixture.sessions) {
      const { store, root } = builderWithDom();
      await store.load();
      for (const step of session.steps) {
        await store.select(step.slot as Slot, step.lexeme_id);
      }
      const preview = root.querySelector(".preview")!;
      expect(preview.textContent).toBe(session.final_surface);
      expect(root.querySelector(".builder-status")!.textContent).toBe(
        "complete",
      );
    }
  });

  it("keeps the preview empty until the sentence is complete", async () => {
    const { store, root } = builderWithDom();
    await store.load();
    await store.select("verb", "iv:pahabi");
    expect(root.querySelector(".preview")!.textContent).toBe("");
  });
});

describe("translate panel view", () => {
  it("disables the submit button for empty input", () => {
    const { root } = translateWithDom();
    const button = root.querySelector<HTMLButtonElement>("button.submit")!;
    expect(button.disabled).toBe(true);
  });

  it("renders record card with score badges for the swim example", async () => {
    const { store, root } = translateWithDom();
    store.setText("I am swimming.");
    await store.submit();
    expect(root.querySelector(".ovp")!.textContent).toBe("nüü pahabi-ti.");
    const badges = root.querySelectorAll("dd.badge");
    expect(badges.length).toBe(3);
    for (const badge of badges) {
      expect(badge.className).toContain("badge-related");
    }
  });

  it("highlights bracketed placeholders in OVP and backwards text", async () => {
    const { store, root } = translateWithDom();
    store.setText(fixture.translations.migrate.input);
    await store.submit();
    const marks = Array.from(
      root.querySelectorAll("mark.placeholder"),
      (m) => m.textContent,
    );
    expect(marks).toContain("[migrate]");
    expect(marks).toContain("[return]");
  });

  it("shows a retry banner on 502", async () => {
    const { store, root } = translateWithDom(
      failingFetch(502, "chat backend unavailable, retry later"),
    );
    store.setText("I am swimming.");
    await store.submit();
    const banner = root.querySelector(".error-banner.retryable")!;
    expect(banner.textContent).toContain("try again");
  });
});

describe("highlightPlaceholders", () => {
  it("splits text around brackets without losing characters", () => {
    const span = highlightPlaceholders(document, "[migrate]-wei tsiipa-uu.");
    expect(span.textContent).toBe("[migrate]-wei tsiipa-uu.");
    expect(span.querySelectorAll("mark").length).toBe(1);
  });

  it("leaves plain text untouched", () => {
    const span = highlightPlaceholders(document, "nüü pahabi-ti.");
    expect(span.querySelectorAll("mark").length).toBe(0);
  });
});
