/** Site detail: one site's metadata and its sensor table, with back links
 * that preserve the originating search query.
 */

import { dateRangeText, esc } from "../html.js";
import { searchHash } from "../router.js";
import type { SiteDoc } from "../types.js";

export function renderSitePage(site: SiteDoc, fromQuery: string): string {
  const fromSuffix = fromQuery ? `?from=${encodeURIComponent(fromQuery)}` : "";
  const backToSearch = fromQuery
    ? `<a href="${searchHash(fromQuery)}">Back to results</a> | `
    : "";
  const sensorRows = site.sensors
    .map(
      (sensor) => `<tr data-sensor-id="${esc(sensor.id)}">
        <td>${esc(sensor.variable)}</td>
        <td>${esc(sensor.units)}</td>
        <td>${sensor.sampling_interval_s}</td>
        <td>${sensor.height_above_ground_m ?? "-"}</td>
        <td>${sensor.manufacturer_model ? esc(sensor.manufacturer_model) : "-"}</td>
      </tr>`,
    )
    .join("\n");
  const sensors = site.sensors.length
    ? `<table class="sensor-table">
        <thead><tr><th>Variable</th><th>Units</th><th>Interval (s)</th><th>Height (m)</th><th>Model</th></tr></thead>
        <tbody>${sensorRows}</tbody>
      </table>`
    : `<p class="empty-state">No sensors recorded for this site.</p>`;
  return `<section class="site-page" data-site-id="${esc(site.id)}">
    <p class="back-link">${backToSearch}<a
      href="#/networks/${encodeURIComponent(site.network_id)}${fromSuffix}">Back to network</a></p>
    <h2>${esc(site.name)}</h2>
    <table class="metadata-panel">
      <tr><th>Coordinates</th><td>${site.location.latitude_deg}, ${site.location.longitude_deg}</td></tr>
      <tr><th>Elevation</th><td>${site.location.elevation_m ?? "-"} m</td></tr>
      <tr><th>Local environment</th><td>${esc(site.local_environment)}</td></tr>
      <tr><th>Installed</th><td>${dateRangeText(site.installation_coverage)}</td></tr>
      <tr><th>Surface</th><td>${site.surface_description ? esc(site.surface_description) : "-"}</td></tr>
      <tr><th>Height datum</th><td>${site.height_datum_note ? esc(site.height_datum_note) : "-"}</td></tr>
    </table>
    <h3>Sensors</h3>
    ${sensors}
  </section>`;
}
