import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Selectors } from "../src/selectors.js";
import { ModelDescriptor } from "../src/types.js";
import { jsonResponse, mockFetch } from "./helpers.js";

const LANGUAGES = ["en", "pt", "de", "es", "fr", "sv", "it", "nl", "zh", "ru", "ar", "fa"];

function descriptor(language: string, kind: string): ModelDescriptor {
  return {
    language,
    kind,
    fingerprint: "abc123",
    corpus_id: "corpus",
    created_at: "2024-01-01T00:00:00+00:00",
    file_path: `${language}-${kind}-abc123.dsm`,
  };
}

function makeSelectors(models: ModelDescriptor[]) {
  const { fetchLike, calls } = mockFetch((url) => {
    if (url.endsWith("/languages")) {
      return jsonResponse(LANGUAGES);
    }
    if (url.endsWith("/models")) {
      return jsonResponse(models);
    }
    throw new Error(`unexpected request: ${url}`);
  });
  const api = new ApiClient("", fetchLike);
  document.body.innerHTML = `
    <select id="language"></select>
    <select id="model"></select>
    <select id="measure"></select>
  `;
  const selectors = new Selectors(
    {
      language: document.getElementById("language") as HTMLSelectElement,
      model: document.getElementById("model") as HTMLSelectElement,
      measure: document.getElementById("measure") as HTMLSelectElement,
    },
    api,
  );
  return { selectors, calls, api };
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("selectors", () => {
  it("offers the twelve languages", async () => {
    const { selectors } = makeSelectors([descriptor("en", "esa")]);
    await selectors.populate();
    const values = Array.from(selectors.elements.language.options).map((o) => o.value);
    expect(values).toEqual(LANGUAGES);
    expect(values.length).toBe(12);
  });

  it("shows a no-models state for an empty registry", async () => {
    const { selectors } = makeSelectors([]);
    await selectors.populate();
    expect(selectors.elements.model.disabled).toBe(true);
    expect(selectors.elements.model.options[0].textContent).toBe("no models");
    expect(selectors.context()).toBeNull();
  });

  it("lists model kinds for the selected language only", async () => {
    const { selectors } = makeSelectors([
      descriptor("en", "esa"),
      descriptor("en", "ri"),
      descriptor("de", "lsa"),
    ]);
    await selectors.populate();
    selectors.elements.language.value = "en";
    selectors.refreshModelOptions();
    let kinds = Array.from(selectors.elements.model.options).map((o) => o.value);
    expect(kinds).toEqual(["esa", "ri"]);
    selectors.elements.language.value = "de";
    selectors.refreshModelOptions();
    kinds = Array.from(selectors.elements.model.options).map((o) => o.value);
    expect(kinds).toEqual(["lsa"]);
  });

  it("round-trips selector values verbatim into request JSON", async () => {
    const { selectors, api } = makeSelectors([descriptor("pt", "lsa")]);
    await selectors.populate();
    selectors.elements.language.value = "pt";
    selectors.refreshModelOptions();
    selectors.elements.measure.value = "correlation";
    const context = selectors.context();
    expect(context).toEqual({ language: "pt", model_kind: "lsa", measure: "correlation" });

    // The context flows into a request body untouched.
    const { fetchLike, calls } = mockFetch(() =>
      jsonResponse({ main_term: "m", language: "pt", measure: "correlation", model_kind: "lsa", results: [] }),
    );
    const recordingApi = new ApiClient("", fetchLike);
    await recordingApi.relatedness({ main_term: "mãe", target_set: ["filho"], ...context! });
    expect(calls[0].body).toEqual({
      main_term: "mãe",
      target_set: ["filho"],
      language: "pt",
      measure: "correlation",
      model_kind: "lsa",
    });
  });

  it("prefers a language that has models", async () => {
    const { selectors } = makeSelectors([descriptor("de", "esa")]);
    await selectors.populate();
    expect(selectors.elements.language.value).toBe("de");
    expect(selectors.context()).not.toBeNull();
  });
});
