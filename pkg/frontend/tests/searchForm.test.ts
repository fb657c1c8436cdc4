import { describe, expect, it } from "vitest";

import {
  EMPTY_FORM,
  FACET_FIELDS,
  fromQueryString,
  renderSearchForm,
  toQueryString,
  validateForm,
  type SearchFormValues,
} from "../src/searchForm.js";

const WALKTHROUGH: SearchFormValues = {
  country: "RS",
  region: "",
  localEnvironment: "urban",
  seasons: [],
  dateFrom: "2016-01-01",
  dateTo: "2016-12-31",
};

describe("form layout", () => {
  it("declares exactly five facet fields", () => {
    expect(FACET_FIELDS).toHaveLength(5);
    expect(FACET_FIELDS.map((f) => f.label)).toEqual([
      "Country",
      "Region",
      "Local Environment",
      "Seasonality",
      "Dates",
    ]);
  });

  it("renders one facet group per field and no more", () => {
    const html = renderSearchForm(EMPTY_FORM);
    const groups = html.match(/class="facet-field"/g) ?? [];
    expect(groups).toHaveLength(5);
    for (const field of FACET_FIELDS) {
      expect(html).toContain(`data-facet="${field.id}"`);
    }
  });

  it("restores entered values into the rendered controls", () => {
    const html = renderSearchForm(WALKTHROUGH);
    expect(html).toContain('value="RS"');
    expect(html).toContain('<option value="urban" selected>');
    expect(html).toContain('value="2016-01-01"');
    expect(html).toContain('value="2016-12-31"');
  });

  it("shows the validation message inline when present", () => {
    const html = renderSearchForm(EMPTY_FORM, "dates are reversed");
    expect(html).toContain('class="form-error"');
    expect(html).toContain("dates are reversed");
    expect(renderSearchForm(EMPTY_FORM)).not.toContain('class="form-error"');
  });

  it("escapes user-entered text", () => {
    const html = renderSearchForm({ ...EMPTY_FORM, region: '"><script>' });
    expect(html).not.toContain("<script>");
  });
});

describe("validateForm", () => {
  it("accepts the walkthrough query and the empty form", () => {
    expect(validateForm(WALKTHROUGH)).toBeNull();
    expect(validateForm(EMPTY_FORM)).toBeNull();
  });

  it("rejects a from-date after the to-date", () => {
    const reversed = {
      ...EMPTY_FORM,
      dateFrom: "2017-06-01",
      dateTo: "2016-06-01",
    };
    expect(validateForm(reversed)).toMatch(/must not be after/);
  });

  it("allows a single open-ended bound", () => {
    expect(validateForm({ ...EMPTY_FORM, dateFrom: "2016-01-01" })).toBeNull();
    expect(validateForm({ ...EMPTY_FORM, dateTo: "2016-01-01" })).toBeNull();
  });
});

describe("query string round-trip", () => {
  it("emits the API facet parameter names", () => {
    const query = toQueryString(WALKTHROUGH);
    const params = new URLSearchParams(query);
    expect(params.get("country")).toBe("RS");
    expect(params.get("local_environment")).toBe("urban");
    expect(params.get("date_from")).toBe("2016-01-01");
    expect(params.get("date_to")).toBe("2016-12-31");
    expect(params.has("region")).toBe(false);
    expect(params.has("season")).toBe(false);
  });

  it("joins seasons with commas in calendar order", () => {
    const query = toQueryString({
      ...EMPTY_FORM,
      seasons: ["autumn", "winter"],
    });
    expect(new URLSearchParams(query).get("season")).toBe("winter,autumn");
  });

  it("round-trips every field through fromQueryString", () => {
    const values: SearchFormValues = {
      country: "DE",
      region: "Brandenburg",
      localEnvironment: "rural",
      seasons: ["winter", "spring"],
      dateFrom: "2016-01-01",
      dateTo: "2016-03-31",
    };
    expect(fromQueryString(toQueryString(values))).toEqual(values);
  });

  it("produces an empty string for the empty form", () => {
    expect(toQueryString(EMPTY_FORM)).toBe("");
    expect(fromQueryString("")).toEqual(EMPTY_FORM);
  });
});
