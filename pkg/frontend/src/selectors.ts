import { ApiClient } from "./api.js";
import { MEASURES, ModelDescriptor, QueryContext } from "./types.js";

export interface SelectorElements {
  language: HTMLSelectElement;
  model: HTMLSelectElement;
  measure: HTMLSelectElement;
}

/**
 * Shared language / model / measure selectors, populated from the
 * discovery endpoints. Option values go into request JSON verbatim.
 */
export class Selectors {
  private models: ModelDescriptor[] = [];

  constructor(
    readonly elements: SelectorElements,
    private api: ApiClient,
    private onChange: () => void = () => {},
  ) {
    elements.language.addEventListener("change", () => {
      this.refreshModelOptions();
      this.onChange();
    });
    elements.model.addEventListener("change", () => this.onChange());
    elements.measure.addEventListener("change", () => this.onChange());
  }

  async populate(): Promise<void> {
    const [languages, models] = await Promise.all([this.api.languages(), this.api.models()]);
    this.models = models;
    fillOptions(this.elements.language, languages);
    fillOptions(this.elements.measure, Array.from(MEASURES));
    // Prefer a language that actually has models.
    const withModels = languages.find((lang) => models.some((m) => m.language === lang));
    if (withModels) {
      this.elements.language.value = withModels;
    }
    this.refreshModelOptions();
    this.onChange();
  }

  refreshModelOptions(): void {
    const language = this.elements.language.value;
    const kinds = Array.from(
      new Set(this.models.filter((m) => m.language === language).map((m) => m.kind)),
    ).sort();
    if (kinds.length === 0) {
      this.elements.model.innerHTML = `<option value="">no models</option>`;
      this.elements.model.disabled = true;
    } else {
      fillOptions(this.elements.model, kinds);
      this.elements.model.disabled = false;
    }
  }

  /** Null while any required selection is missing (e.g. empty registry). */
  context(): QueryContext | null {
    const { language, model, measure } = this.elements;
    if (!language.value || !measure.value || model.disabled || !model.value) {
      return null;
    }
    return {
      language: language.value,
      measure: measure.value,
      model_kind: model.value,
    };
  }
}

function fillOptions(select: HTMLSelectElement, values: string[]): void {
  const previous = select.value;
  select.innerHTML = "";
  for (const value of values) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = value;
    select.append(option);
  }
  if (values.includes(previous)) {
    select.value = previous;
  } else if (values.length > 0) {
    select.value = values[0];
  }
}
