/** Landing page: every published network as a card. */

import { dateRangeText, esc } from "../html.js";
import type { NetworkSummary, Page } from "../types.js";

export function networkCard(summary: NetworkSummary, fromQuery = ""): string {
  const fromSuffix = fromQuery ? `?from=${encodeURIComponent(fromQuery)}` : "";
  const doiNote =
    summary.doi_count > 0
      ? `<span class="doi-count">${summary.doi_count} archived dataset${
          summary.doi_count === 1 ? "" : "s"
        }</span>`
      : "";
  const keywords = summary.keywords
    .map((k) => `<span class="chip">${esc(k)}</span>`)
    .join(" ");
  return `<article class="network-card" data-network-id="${esc(summary.id)}">
    <h3><a href="#/networks/${encodeURIComponent(summary.id)}${fromSuffix}">${esc(summary.name)}</a></h3>
    <p class="card-meta">
      ${esc(summary.country)}${summary.region ? ` / ${esc(summary.region)}` : ""}
      | ${esc(summary.local_environment)}
      | ${dateRangeText(summary.operational_coverage)}
      | ${summary.site_count} site${summary.site_count === 1 ? "" : "s"}
    </p>
    ${doiNote}
    <p class="card-keywords">${keywords}</p>
  </article>`;
}

export function renderLanding(page: Page<NetworkSummary>): string {
  if (!page.items.length) {
    return `<section class="landing">
      <h2>Published networks</h2>
      <p class="empty-state">No published networks yet. Seed one with the CLI
      or import a catalog bundle.</p>
    </section>`;
  }
  const cards = page.items.map((item) => networkCard(item)).join("\n");
  return `<section class="landing">
    <h2>Published networks (${page.total})</h2>
    ${cards}
  </section>`;
}
