import { ApiClient, ApiError } from "./api.js";
import { CorrelationResponse, DATASETS, QueryContext } from "./types.js";

/**
 * Correlation dashboard: evaluate the selected model against a gold
 * dataset and keep a session-local comparison table so successive runs
 * (different measures, models, datasets) can be contrasted.
 */
export class CorrelationPanel {
  private seq = 0;
  private controller: AbortController | null = null;
  readonly history: CorrelationResponse[] = [];

  readonly datasetSelect: HTMLSelectElement;
  readonly policySelect: HTMLSelectElement;
  readonly submitButton: HTMLButtonElement;
  readonly errorBanner: HTMLElement;
  readonly rhoCard: HTMLElement;
  readonly comparisonBody: HTMLElement;

  constructor(
    readonly root: HTMLElement,
    private api: ApiClient,
    private context: () => QueryContext | null,
  ) {
    root.innerHTML = `
      <h2>Correlation</h2>
      <form class="correlation-form">
        <label>Dataset
          <select class="dataset">
            ${DATASETS.map((name) => `<option value="${name}">${name}</option>`).join("")}
          </select>
        </label>
        <label>OOV policy
          <select class="oov-policy">
            <option value="skip">skip</option>
            <option value="zero">zero</option>
          </select>
        </label>
        <button type="submit" class="submit" disabled>Evaluate</button>
      </form>
      <div class="error-banner" hidden></div>
      <div class="rho-card" hidden></div>
      <table class="comparison" hidden>
        <thead>
          <tr><th>dataset</th><th>model</th><th>measure</th><th>policy</th>
              <th>rho</th><th>scored</th><th>skipped</th></tr>
        </thead>
        <tbody></tbody>
      </table>
    `;
    this.datasetSelect = root.querySelector(".dataset") as HTMLSelectElement;
    this.policySelect = root.querySelector(".oov-policy") as HTMLSelectElement;
    this.submitButton = root.querySelector(".submit") as HTMLButtonElement;
    this.errorBanner = root.querySelector(".error-banner") as HTMLElement;
    this.rhoCard = root.querySelector(".rho-card") as HTMLElement;
    this.comparisonBody = root.querySelector("tbody") as HTMLElement;

    (root.querySelector("form") as HTMLFormElement).addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
  }

  refreshSubmitState(): void {
    this.submitButton.disabled = this.context() === null;
  }

  async submit(): Promise<void> {
    const context = this.context();
    if (context === null) {
      return;
    }
    const requestId = ++this.seq;
    this.controller?.abort();
    this.controller = new AbortController();
    try {
      const response = await this.api.correlation(
        {
          dataset: this.datasetSelect.value,
          oov_policy: this.policySelect.value,
          ...context,
        },
        this.controller.signal,
      );
      if (requestId !== this.seq) {
        return;
      }
      this.errorBanner.hidden = true;
      this.history.push(response);
      this.render(response);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") {
        return;
      }
      if (requestId !== this.seq) {
        return;
      }
      const message = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
      this.errorBanner.textContent = message;
      this.errorBanner.hidden = false;
    }
  }

  render(response: CorrelationResponse): void {
    this.rhoCard.hidden = false;
    this.rhoCard.dataset.rho = String(response.rho);
    this.rhoCard.innerHTML = `
      <div class="rho-value">${response.rho.toFixed(4)}</div>
      <div class="rho-detail">Spearman rho on ${response.dataset} (${response.language}),
        ${response.model_kind} / ${response.measure};
        ${response.n_scored} pairs scored, ${response.n_skipped} skipped</div>
    `;
    const row = document.createElement("tr");
    for (const value of [
      response.dataset,
      response.model_kind,
      response.measure,
      response.oov_policy ?? "skip",
      response.rho.toFixed(4),
      String(response.n_scored),
      String(response.n_skipped),
    ]) {
      const cell = document.createElement("td");
      cell.textContent = value;
      row.append(cell);
    }
    row.dataset.rho = String(response.rho);
    this.comparisonBody.append(row);
    (this.root.querySelector(".comparison") as HTMLElement).hidden = false;
  }
}
