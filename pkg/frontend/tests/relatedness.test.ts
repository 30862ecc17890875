import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { RelatednessPanel } from "../src/relatedness.js";
import { RelatednessResponse } from "../src/types.js";
import { deferred, flushMicrotasks, jsonResponse, mockFetch, testContext } from "./helpers.js";

const RESPONSE: RelatednessResponse = {
  main_term: "mother",
  language: "en",
  measure: "cosine",
  model_kind: "esa",
  results: [
    { target: "wife", score: 0.41, raw: 0.41 },
    { target: "child", score: 0.87, raw: 0.87 },
    { target: "love", score: 0.63, raw: 0.63 },
  ],
};

function makePanel(handler: Parameters<typeof mockFetch>[0], context = testContext) {
  const { fetchLike, calls } = mockFetch(handler);
  const api = new ApiClient("", fetchLike);
  const root = document.createElement("div");
  document.body.append(root);
  const panel = new RelatednessPanel(root, api, context);
  return { panel, calls, root };
}

function fillForm(panel: RelatednessPanel, main: string, targets: string[]) {
  panel.mainInput.value = main;
  panel.mainInput.dispatchEvent(new Event("input"));
  const first = panel.targetList.querySelector<HTMLInputElement>(".target-term")!;
  first.value = targets[0] ?? "";
  first.dispatchEvent(new Event("input"));
  for (const value of targets.slice(1)) {
    panel.addTargetInput(value);
  }
  panel.refreshSubmitState();
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("relatedness panel", () => {
  it("renders one bar per target in response order", async () => {
    const { panel } = makePanel(() => jsonResponse(RESPONSE));
    fillForm(panel, "mother", ["wife", "child", "love"]);
    await panel.submit();

    const rows = Array.from(panel.resultsContainer.querySelectorAll(".bar-row"));
    expect(rows.length).toBe(3);
    // DOM order follows the response entry order exactly.
    expect(rows.map((row) => (row as HTMLElement).dataset.target)).toEqual([
      "wife",
      "child",
      "love",
    ]);
  });

  it("arranges bars visually by descending score via flex order", async () => {
    const { panel } = makePanel(() => jsonResponse(RESPONSE));
    fillForm(panel, "mother", ["wife", "child", "love"]);
    await panel.submit();

    const rows = Array.from(
      panel.resultsContainer.querySelectorAll<HTMLElement>(".bar-row"),
    );
    const byVisualOrder = [...rows].sort(
      (a, b) => Number(a.style.order) - Number(b.style.order),
    );
    expect(byVisualOrder.map((row) => row.dataset.target)).toEqual([
      "child",
      "love",
      "wife",
    ]);
  });

  it("never renders a value that is not in the response body", async () => {
    const { panel } = makePanel(() => jsonResponse(RESPONSE));
    fillForm(panel, "mother", ["wife", "child", "love"]);
    await panel.submit();

    const allowed = new Set(
      RESPONSE.results.map((r) => ("score" in r ? String(r.score) : "")),
    );
    const rendered = Array.from(
      panel.resultsContainer.querySelectorAll<HTMLElement>("[data-score]"),
    ).map((row) => row.dataset.score);
    expect(rendered.length).toBeGreaterThan(0);
    for (const value of rendered) {
      expect(allowed.has(value!)).toBe(true);
    }
    // Visible labels are formatted from those same values.
    for (const row of panel.resultsContainer.querySelectorAll<HTMLElement>(".bar-row:not(.bar-error)")) {
      const shown = row.querySelector(".bar-value")!.textContent!;
      expect(Number(row.dataset.score).toFixed(3)).toBe(shown);
    }
  });

  it("sends user-entered terms verbatim, without casefolding", async () => {
    const { panel, calls } = makePanel(() => jsonResponse(RESPONSE));
    fillForm(panel, "Mother", ["WIFE", "Child "]);
    await panel.submit();

    expect(calls.length).toBe(1);
    expect(calls[0].body).toEqual({
      main_term: "Mother",
      target_set: ["WIFE", "Child "],
      language: "en",
      measure: "cosine",
      model_kind: "esa",
    });
  });

  it("disables submit while required fields are empty", () => {
    const { panel } = makePanel(() => jsonResponse(RESPONSE));
    expect(panel.submitButton.disabled).toBe(true);
    fillForm(panel, "mother", []);
    expect(panel.submitButton.disabled).toBe(true);
    fillForm(panel, "mother", ["wife"]);
    expect(panel.submitButton.disabled).toBe(false);
  });

  it("disables submit when no model is selected", () => {
    const { panel } = makePanel(() => jsonResponse(RESPONSE), () => null);
    fillForm(panel, "mother", ["wife"]);
    expect(panel.submitButton.disabled).toBe(true);
  });

  it("drops stale responses when a newer request is in flight", async () => {
    const first = deferred<Response>();
    const second = deferred<Response>();
    const pending = [first, second];
    const { panel } = makePanel(() => pending.shift()!.promise);

    fillForm(panel, "mother", ["wife"]);
    const firstSubmit = panel.submit();
    fillForm(panel, "father", ["son"]);
    const secondSubmit = panel.submit();

    // The newer response arrives first...
    second.resolve(
      jsonResponse({
        ...RESPONSE,
        main_term: "father",
        results: [{ target: "son", score: 0.9, raw: 0.9 }],
      }),
    );
    await secondSubmit;
    // ...and the stale first response must not overwrite it.
    first.resolve(jsonResponse(RESPONSE));
    await firstSubmit;
    await flushMicrotasks();

    const rows = Array.from(
      panel.resultsContainer.querySelectorAll<HTMLElement>(".bar-row"),
    );
    expect(rows.map((row) => row.dataset.target)).toEqual(["son"]);
    expect(panel.resultsContainer.textContent).toContain("father");
  });

  it("renders per-target errors inline without discarding scored rows", async () => {
    const { panel } = makePanel(() =>
      jsonResponse({
        ...RESPONSE,
        results: [
          { target: "wife", score: 0.41, raw: 0.41 },
          { target: "zzzqqq", error: "term not found: 'zzzqqq'" },
        ],
      }),
    );
    fillForm(panel, "mother", ["wife", "zzzqqq"]);
    await panel.submit();

    const rows = panel.resultsContainer.querySelectorAll(".bar-row");
    expect(rows.length).toBe(2);
    expect(rows[1].classList.contains("bar-error")).toBe(true);
    expect(rows[1].textContent).toContain("term not found");
    expect(rows[0].querySelector(".bar-fill")).not.toBeNull();
  });

  it("keeps the previous result and form state when the server fails", async () => {
    let fail = false;
    const { panel } = makePanel(() =>
      fail
        ? jsonResponse({ code: "model_not_found", message: "no such model" }, 404)
        : jsonResponse(RESPONSE),
    );
    fillForm(panel, "mother", ["wife", "child", "love"]);
    await panel.submit();
    expect(panel.resultsContainer.querySelectorAll(".bar-row").length).toBe(3);

    fail = true;
    await panel.submit();

    expect(panel.errorBanner.hidden).toBe(false);
    expect(panel.errorBanner.textContent).toContain("model_not_found");
    // Previous result still visible, inputs untouched.
    expect(panel.resultsContainer.querySelectorAll(".bar-row").length).toBe(3);
    expect(panel.mainInput.value).toBe("mother");
    expect(panel.targets()).toEqual(["wife", "child", "love"]);
  });
});
