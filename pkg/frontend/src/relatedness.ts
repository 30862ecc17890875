import { ApiClient, ApiError } from "./api.js";
import { QueryContext, RelatednessResponse, isScored } from "./types.js";

/**
 * Relatedness explorer: one main term against a dynamic target list.
 *
 * Result rows are appended in response order so every bar is traceable to
 * its response entry; the visual descending-by-score arrangement is done
 * with flexbox ordering, not by reordering the DOM. The previous result
 * stays on screen until a newer response replaces it, so consecutive
 * queries can be compared.
 *
 * At most one request is live per panel: submitting aborts the previous
 * request, and every response is matched to its sequence number with stale
 * ones dropped.
 */
export class RelatednessPanel {
  private seq = 0;
  private controller: AbortController | null = null;

  readonly mainInput: HTMLInputElement;
  readonly targetList: HTMLElement;
  readonly addTargetButton: HTMLButtonElement;
  readonly submitButton: HTMLButtonElement;
  readonly errorBanner: HTMLElement;
  readonly resultsContainer: HTMLElement;

  constructor(
    readonly root: HTMLElement,
    private api: ApiClient,
    private context: () => QueryContext | null,
  ) {
    root.innerHTML = `
      <h2>Semantic relatedness</h2>
      <form class="relatedness-form">
        <label>Main term <input type="text" class="main-term" autocomplete="off"></label>
        <div class="target-list"></div>
        <div class="form-actions">
          <button type="button" class="add-target">+ target</button>
          <button type="submit" class="submit" disabled>Compare</button>
        </div>
      </form>
      <div class="error-banner" hidden></div>
      <div class="results" aria-live="polite"></div>
    `;
    this.mainInput = root.querySelector(".main-term") as HTMLInputElement;
    this.targetList = root.querySelector(".target-list") as HTMLElement;
    this.addTargetButton = root.querySelector(".add-target") as HTMLButtonElement;
    this.submitButton = root.querySelector(".submit") as HTMLButtonElement;
    this.errorBanner = root.querySelector(".error-banner") as HTMLElement;
    this.resultsContainer = root.querySelector(".results") as HTMLElement;

    this.addTargetInput();
    this.addTargetButton.addEventListener("click", () => this.addTargetInput());
    this.mainInput.addEventListener("input", () => this.refreshSubmitState());
    (root.querySelector("form") as HTMLFormElement).addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
  }

  addTargetInput(value = ""): HTMLInputElement {
    const row = document.createElement("div");
    row.className = "target-row";
    const input = document.createElement("input");
    input.type = "text";
    input.className = "target-term";
    input.value = value;
    input.autocomplete = "off";
    input.addEventListener("input", () => this.refreshSubmitState());
    const remove = document.createElement("button");
    remove.type = "button";
    remove.className = "remove-target";
    remove.textContent = "x";
    remove.addEventListener("click", () => {
      row.remove();
      this.refreshSubmitState();
    });
    row.append(input, remove);
    this.targetList.append(row);
    this.refreshSubmitState();
    return input;
  }

  /** Target terms exactly as typed; the server does all normalization. */
  targets(): string[] {
    return Array.from(
      this.targetList.querySelectorAll<HTMLInputElement>(".target-term"),
      (input) => input.value,
    ).filter((value) => value.trim() !== "");
  }

  refreshSubmitState(): void {
    const ready =
      this.mainInput.value.trim() !== "" &&
      this.targets().length > 0 &&
      this.context() !== null;
    this.submitButton.disabled = !ready;
  }

  async submit(): Promise<void> {
    const context = this.context();
    if (context === null || this.mainInput.value.trim() === "") {
      return;
    }
    const requestId = ++this.seq;
    this.controller?.abort();
    this.controller = new AbortController();
    this.root.classList.add("loading");
    try {
      const response = await this.api.relatedness(
        {
          main_term: this.mainInput.value,
          target_set: this.targets(),
          ...context,
        },
        this.controller.signal,
      );
      if (requestId !== this.seq) {
        return; // a newer request superseded this one
      }
      this.errorBanner.hidden = true;
      this.render(response);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") {
        return;
      }
      if (requestId !== this.seq) {
        return;
      }
      this.showError(err);
    } finally {
      if (requestId === this.seq) {
        this.root.classList.remove("loading");
      }
    }
  }

  private showError(err: unknown): void {
    const message = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    this.errorBanner.textContent = message;
    this.errorBanner.hidden = false;
    // Form state and the previous result both stay untouched.
  }

  render(response: RelatednessResponse): void {
    const container = this.resultsContainer;
    container.innerHTML = "";
    const heading = document.createElement("div");
    heading.className = "results-heading";
    heading.textContent =
      `${response.main_term} (${response.model_kind}, ${response.measure}, ${response.language})`;
    container.append(heading);

    const list = document.createElement("div");
    list.className = "bar-list";
    const scoredRanks = response.results
      .map((result, index) => ({ index, score: isScored(result) ? result.score : -1 }))
      .sort((a, b) => b.score - a.score)
      .map((entry) => entry.index);

    response.results.forEach((result, index) => {
      const row = document.createElement("div");
      // Visual order: descending score; DOM order: response order.
      row.style.order = String(scoredRanks.indexOf(index));
      row.dataset.target = result.target;
      if (isScored(result)) {
        row.className = "bar-row";
        row.dataset.score = String(result.score);
        row.dataset.raw = String(result.raw);
        const pct = Math.round(result.score * 1000) / 10;
        row.innerHTML = `
          <span class="bar-label"></span>
          <span class="bar-track"><span class="bar-fill" style="width:${pct}%"></span></span>
          <span class="bar-value">${result.score.toFixed(3)}</span>
        `;
        (row.querySelector(".bar-label") as HTMLElement).textContent = result.target;
      } else {
        row.className = "bar-row bar-error";
        row.innerHTML = `<span class="bar-label"></span><span class="bar-message"></span>`;
        (row.querySelector(".bar-label") as HTMLElement).textContent = result.target;
        (row.querySelector(".bar-message") as HTMLElement).textContent = result.error;
      }
      list.append(row);
    });
    container.append(list);
  }
}
