/** Analytics dashboard: summary tiles straight from /analytics/summary plus
 * a dimension picker issuing /analytics/cube queries. Every number shown is
 * copied from an API payload field.
 */

import { dateRangeText, errorBanner, esc } from "../html.js";
import type { CubeResponse, MeasureValue, SummaryMetrics } from "../types.js";

export const CUBE_DIMENSIONS = [
  "country",
  "local_environment",
  "year",
  "network",
] as const;

export const CUBE_MEASURES = [
  "network_count",
  "site_count",
  "mean_sites_per_network",
  "sensor_count",
  "dataset_record_sum",
] as const;

export const MAX_CUBE_DIMENSIONS = 3;

function tile(label: string, value: string | number): string {
  return `<div class="tile" data-metric="${esc(label)}">
    <span class="tile-value">${esc(value)}</span>
    <span class="tile-label">${esc(label)}</span>
  </div>`;
}

export function renderSummaryTiles(summary: SummaryMetrics): string {
  if (summary.empty) {
    return `<p class="empty-state">The catalog has no published networks, so
      there is nothing to aggregate yet.</p>`;
  }
  const histogram = Object.entries(summary.sensor_type_histogram)
    .map(([variable, count]) => `<li>${esc(variable)}: ${count}</li>`)
    .join("");
  return `<div class="tiles">
    ${tile("network_count", summary.network_count)}
    ${tile("site_count", summary.site_count)}
    ${tile("sensor_count", summary.sensor_count)}
    ${tile("mean_sites_per_network", summary.mean_sites_per_network)}
    ${tile("dataset_record_sum", summary.dataset_record_sum)}
  </div>
  <p class="coverage-span">Coverage span: ${dateRangeText(summary.coverage_span)}</p>
  <ul class="histogram">${histogram}</ul>`;
}

function measureCell(value: MeasureValue | undefined): string {
  if (value === undefined) return "-";
  if (typeof value === "number") return esc(value);
  return Object.entries(value)
    .map(([k, v]) => `${esc(k)}=${v}`)
    .join("; ");
}

export function renderCubeTable(response: CubeResponse): string {
  const header = [...response.dimensions, ...response.measures]
    .map((name) => `<th>${esc(name)}</th>`)
    .join("");
  const bodyRows = response.rows
    .map((row) => {
      const keyCells = row.key.map((part) => `<td>${esc(part)}</td>`).join("");
      const measureCells = response.measures
        .map((m) => `<td>${measureCell(row.measures[m])}</td>`)
        .join("");
      return `<tr>${keyCells}${measureCells}</tr>`;
    })
    .join("\n");
  const totalCells =
    response.dimensions.map(() => `<td>*</td>`).join("") +
    response.measures
      .map((m) => `<td>${measureCell(response.totals.measures[m])}</td>`)
      .join("");
  return `<table class="cube-table">
    <thead><tr>${header}</tr></thead>
    <tbody>${bodyRows}</tbody>
    <tfoot><tr class="totals-row">${totalCells}</tr></tfoot>
  </table>`;
}

export function renderDimensionPicker(
  selected: string[],
  pickerMessage: string | null,
): string {
  const boxes = CUBE_DIMENSIONS.map(
    (dim) => `<label class="dim-option"><input type="checkbox" name="dimension"
      value="${dim}"${selected.includes(dim) ? " checked" : ""}> ${dim}</label>`,
  ).join("");
  const message = pickerMessage
    ? `<p class="form-error" role="alert">${esc(pickerMessage)}</p>`
    : "";
  return `<form id="cube-form" class="cube-form">
    <span class="facet-label">Drill down by (up to ${MAX_CUBE_DIMENSIONS})</span>
    ${boxes}
    ${message}
    <button type="submit">Run</button>
  </form>`;
}

export function renderAnalyticsPage(
  summary: SummaryMetrics,
  selectedDimensions: string[],
  pickerMessage: string | null,
  cubeResult: CubeResponse | null,
  cubeError: { code: string; message: string } | null,
): string {
  let drilldown = "";
  if (cubeError) {
    drilldown = errorBanner(cubeError.message, cubeError.code);
  } else if (cubeResult) {
    drilldown = renderCubeTable(cubeResult);
  }
  return `<section class="analytics-page">
    <h2>Catalog analytics</h2>
    ${renderSummaryTiles(summary)}
    <h3>Drilldown</h3>
    ${renderDimensionPicker(selectedDimensions, pickerMessage)}
    <div class="cube-results">${drilldown}</div>
  </section>`;
}
