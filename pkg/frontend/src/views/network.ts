/** Network page: metadata panel, archived datasets with DOI links, the site
 * pin map, a stored FAIR report when present, and manager actions once a
 * token is entered.
 */

import { attr, dateRangeText, doiAnchor, esc } from "../html.js";
import { renderSiteMap } from "../map.js";
import { searchHash } from "../router.js";
import type { AssessmentDoc, NetworkDocument } from "../types.js";

function metadataPanel(doc: NetworkDocument): string {
  const n = doc.network;
  const contacts = n.contacts
    .map((c) => `${esc(c.name)} (${esc(c.role)}) &lt;${esc(c.email)}&gt;`)
    .join("<br>");
  const related = n.related_links
    .map((url) => `<a href="${attr(url)}" target="_blank" rel="noopener">${esc(url)}</a>`)
    .join("<br>");
  const keywords = n.keywords
    .map((k) => `<span class="chip">${esc(k)}</span>`)
    .join(" ");
  const rows: [string, string][] = [
    ["Country / region", `${esc(n.country)}${n.region ? ` / ${esc(n.region)}` : ""}`],
    ["Local environment", esc(n.local_environment)],
    ["Operational coverage", dateRangeText(n.operational_coverage)],
    ["Owner institution", esc(n.owner_institution)],
    ["License", n.license ? esc(n.license) : "none declared"],
    ["Keywords", keywords || "-"],
    ["Contacts", contacts || "-"],
    ["Related links", related || "-"],
    ["Provenance", n.provenance_note ? esc(n.provenance_note) : "-"],
  ];
  return `<table class="metadata-panel">
    ${rows.map(([k, v]) => `<tr><th>${k}</th><td>${v}</td></tr>`).join("\n")}
  </table>`;
}

function datasetSection(doc: NetworkDocument): string {
  if (!doc.dataset_links.length) {
    return `<p class="empty-state">No archived datasets yet.</p>`;
  }
  const rows = doc.dataset_links
    .map(
      (link) => `<tr>
        <td>${esc(link.title)}</td>
        <td>${doiAnchor(link.doi, link.archive_url)}</td>
        <td>${esc(link.file_format)}</td>
        <td>${dateRangeText(link.temporal_coverage)}</td>
        <td>${link.declared_record_count ?? "-"}</td>
        <td>${link.license ? esc(link.license) : "-"}</td>
      </tr>`,
    )
    .join("\n");
  return `<table class="dataset-table">
    <thead><tr><th>Dataset</th><th>Archive</th><th>Format</th><th>Coverage</th><th>Records</th><th>License</th></tr></thead>
    <tbody>${rows}</tbody>
  </table>`;
}

export function assessmentSection(assessment: AssessmentDoc): string {
  const rollup = Object.entries(assessment.rollup)
    .map(
      ([principle, tally]) =>
        `<span class="rollup-chip">${esc(principle)}:
          ${tally.yes} Yes / ${tally.partial} Partial / ${tally.no} No</span>`,
    )
    .join(" ");
  const rows = Object.entries(assessment.metrics)
    .map(
      ([metric, entry]) => `<tr class="outcome-${entry.outcome.toLowerCase()}">
        <td>${esc(metric)}</td>
        <td>${esc(entry.outcome)}</td>
        <td>${esc(entry.rationale)}</td>
      </tr>`,
    )
    .join("\n");
  return `<details class="assessment">
    <summary>FAIR report (rubric ${esc(assessment.rubric_version)}) ${rollup}</summary>
    <table class="assessment-table">
      <thead><tr><th>Metric</th><th>Outcome</th><th>Rationale</th></tr></thead>
      <tbody>${rows}</tbody>
    </table>
  </details>`;
}

export function renderNetworkPage(
  doc: NetworkDocument,
  fromQuery: string,
  tokenSet: boolean,
): string {
  const back = fromQuery
    ? `<p class="back-link"><a href="${searchHash(fromQuery)}">Back to results</a></p>`
    : "";
  const draftNote = doc.network.published
    ? ""
    : `<p class="banner banner-info">Draft record; visible to you only.</p>`;
  const actions = tokenSet
    ? `<div class="manager-actions">
        <button type="button" data-action="publish" data-network-id="${attr(doc.network.id)}">Publish</button>
        <button type="button" data-action="assess" data-network-id="${attr(doc.network.id)}">Run FAIR assessment</button>
      </div>`
    : "";
  const mapSection = doc.sites.length
    ? renderSiteMap(doc.sites, fromQuery)
    : `<p class="empty-state">This network has no sites on record.</p>`;
  const assessment = doc.assessment ? assessmentSection(doc.assessment) : "";
  return `<section class="network-page" data-network-id="${attr(doc.network.id)}">
    ${back}
    <h2>${esc(doc.network.name)}</h2>
    ${draftNote}
    <p class="network-description">${esc(doc.network.description)}</p>
    ${actions}
    ${metadataPanel(doc)}
    <h3>Archived datasets</h3>
    ${datasetSection(doc)}
    <h3>Sites</h3>
    ${mapSection}
    ${assessment}
  </section>`;
}
