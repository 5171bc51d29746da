import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, selectionsQuery } from "../src/api.js";
import { failingFetch, fixtureFetch } from "./helpers.js";

describe("selectionsQuery", () => {
  it("serializes in fixed slot order regardless of insertion order", () => {
    const query = selectionsQuery({
      verb_tense: "ts:ti",
      subject: "sp:nüü",
      verb: "iv:pahabi",
    });
    expect(query).toBe("subject=sp:nüü&verb=iv:pahabi&verb_tense=ts:ti");
  });

  it("omits empty selections", () => {
    expect(selectionsQuery({})).toBe("");
  });
});

describe("ApiClient", () => {
  it("fetches options for the empty state", async () => {
    const client = new ApiClient("", fixtureFetch());
    const response = await client.options({});
    expect(response.status).toBe("incomplete");
    expect(response.slots.map((s) => s.slot)).toContain("subject");
  });

  it("maps 502 to a retryable ApiError", async () => {
    const client = new ApiClient(
      "",
      failingFetch(502, "chat backend unavailable, retry later"),
    );
    const err = await client.translateEn2Ovp("x").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(502);
    expect(err.retryable).toBe(true);
    expect(err.message).toContain("retry");
  });

  it("maps 422 to a non-retryable ApiError", async () => {
    const client = new ApiClient("", fixtureFetch());
    const err = await client
      .translateEn2Ovp("Colorless green ideas?")
      .catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.retryable).toBe(false);
  });
});
