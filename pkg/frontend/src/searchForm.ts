/** The five-field search form: values, validation, URL round-trip, and the
 * HTML renderer. Field ids double as the API facet parameter names.
 */

import { attr, esc } from "./html.js";

export const SEASONS = ["winter", "spring", "summer", "autumn"] as const;
export const ENVIRONMENTS = ["urban", "suburban", "rural", "mixed"] as const;

/** One entry per facet group rendered in the form; exactly five. */
export const FACET_FIELDS = [
  { id: "country", label: "Country" },
  { id: "region", label: "Region" },
  { id: "local_environment", label: "Local Environment" },
  { id: "season", label: "Seasonality" },
  { id: "dates", label: "Dates" },
] as const;

export interface SearchFormValues {
  country: string;
  region: string;
  localEnvironment: string;
  seasons: string[];
  dateFrom: string;
  dateTo: string;
}

export const EMPTY_FORM: SearchFormValues = {
  country: "",
  region: "",
  localEnvironment: "",
  seasons: [],
  dateFrom: "",
  dateTo: "",
};

/** Client-side gate; returns a message to show inline, or null when the
 * form may be submitted. */
export function validateForm(values: SearchFormValues): string | null {
  if (values.dateFrom && values.dateTo && values.dateFrom > values.dateTo) {
    return "\"from\" date must not be after \"to\" date";
  }
  return null;
}

export function toQueryString(values: SearchFormValues): string {
  const params = new URLSearchParams();
  if (values.country.trim()) params.set("country", values.country.trim());
  if (values.region.trim()) params.set("region", values.region.trim());
  if (values.localEnvironment) {
    params.set("local_environment", values.localEnvironment);
  }
  if (values.seasons.length) {
    const ordered = SEASONS.filter((s) => values.seasons.includes(s));
    params.set("season", ordered.join(","));
  }
  if (values.dateFrom) params.set("date_from", values.dateFrom);
  if (values.dateTo) params.set("date_to", values.dateTo);
  return params.toString();
}

export function fromQueryString(query: string): SearchFormValues {
  const params = new URLSearchParams(query);
  const seasonParam = params.get("season") ?? "";
  return {
    country: params.get("country") ?? "",
    region: params.get("region") ?? "",
    localEnvironment: params.get("local_environment") ?? "",
    seasons: seasonParam ? seasonParam.split(",").filter(Boolean) : [],
    dateFrom: params.get("date_from") ?? "",
    dateTo: params.get("date_to") ?? "",
  };
}

export function renderSearchForm(
  values: SearchFormValues,
  validationMessage: string | null = null,
): string {
  const fieldHtml: Record<string, string> = {
    country: `<input type="text" name="country" maxlength="2"
      placeholder="e.g. RS" value="${attr(values.country)}">`,
    region: `<input type="text" name="region"
      placeholder="substring match" value="${attr(values.region)}">`,
    local_environment: `<select name="local_environment">
      <option value="">any</option>
      ${ENVIRONMENTS.map(
        (env) =>
          `<option value="${env}"${
            values.localEnvironment === env ? " selected" : ""
          }>${env}</option>`,
      ).join("")}
    </select>`,
    season: SEASONS.map(
      (season) =>
        `<label class="season-option"><input type="checkbox" name="season"
          value="${season}"${
            values.seasons.includes(season) ? " checked" : ""
          }> ${season}</label>`,
    ).join(""),
    dates: `<input type="date" name="date_from" value="${attr(values.dateFrom)}">
      <span class="date-sep">to</span>
      <input type="date" name="date_to" value="${attr(values.dateTo)}">`,
  };
  const fields = FACET_FIELDS.map(
    (field) => `<div class="facet-field" data-facet="${field.id}">
      <span class="facet-label">${esc(field.label)}</span>
      ${fieldHtml[field.id]}
    </div>`,
  ).join("\n");
  const message = validationMessage
    ? `<p class="form-error" role="alert">${esc(validationMessage)}</p>`
    : "";
  return `<form id="search-form" class="search-form">
    ${fields}
    ${message}
    <button type="submit">Search</button>
  </form>`;
}

/** Read the form back out of the DOM on submit. */
export function readForm(form: HTMLFormElement): SearchFormValues {
  const data = new FormData(form);
  return {
    country: String(data.get("country") ?? ""),
    region: String(data.get("region") ?? ""),
    localEnvironment: String(data.get("local_environment") ?? ""),
    seasons: data.getAll("season").map(String),
    dateFrom: String(data.get("date_from") ?? ""),
    dateTo: String(data.get("date_to") ?? ""),
  };
}
