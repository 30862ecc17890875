import { ApiClient } from "./api.js";
import { DEFAULT_API_BASE } from "./config.js";
import { CorrelationPanel } from "./correlation.js";
import { RelatednessPanel } from "./relatedness.js";
import { Selectors } from "./selectors.js";

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) {
    throw new Error(`missing element #${id}`);
  }
  return element as T;
}

const api = new ApiClient(DEFAULT_API_BASE);

const selectors = new Selectors(
  {
    language: byId<HTMLSelectElement>("language-select"),
    model: byId<HTMLSelectElement>("model-select"),
    measure: byId<HTMLSelectElement>("measure-select"),
  },
  api,
  () => {
    relatednessPanel.refreshSubmitState();
    correlationPanel.refreshSubmitState();
  },
);

const context = () => selectors.context();
const relatednessPanel = new RelatednessPanel(byId("relatedness-panel"), api, context);
const correlationPanel = new CorrelationPanel(byId("correlation-panel"), api, context);

const baseInput = byId<HTMLInputElement>("api-base");
baseInput.value = DEFAULT_API_BASE;
byId<HTMLButtonElement>("api-base-apply").addEventListener("click", () => {
  api.setBaseUrl(baseInput.value);
  void selectors.populate().catch(showStartupError);
});

function showStartupError(err: unknown): void {
  const banner = byId("startup-error");
  banner.textContent = `cannot load service metadata: ${String(err)}`;
  banner.hidden = false;
}

void selectors.populate().catch(showStartupError);
