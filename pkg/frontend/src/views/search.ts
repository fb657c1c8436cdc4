/** Search page: the five-field form plus ranked results with DOI links. */

import { dateRangeText, doiAnchor, esc } from "../html.js";
import type { SearchFormValues } from "../searchForm.js";
import { renderSearchForm } from "../searchForm.js";
import type { SearchResponse } from "../types.js";

export function resultCard(
  result: SearchResponse["results"][number],
  fromQuery: string,
): string {
  const fromSuffix = fromQuery ? `?from=${encodeURIComponent(fromQuery)}` : "";
  const dois = result.doi_links
    .map((link) => doiAnchor(link.doi, link.archive_url))
    .join(" ");
  return `<article class="result-card" data-network-id="${esc(result.network_id)}">
    <h3><a href="#/networks/${encodeURIComponent(result.network_id)}${fromSuffix}">${esc(result.name)}</a></h3>
    <p class="card-meta">
      ${esc(result.country)} | ${esc(result.local_environment)}
      | ${dateRangeText(result.coverage)}
      | ${result.site_count} site${result.site_count === 1 ? "" : "s"}
    </p>
    <p class="card-dois">${dois}</p>
  </article>`;
}

export function renderSearchPage(
  values: SearchFormValues,
  validationMessage: string | null,
  response: SearchResponse | null,
  query: string,
): string {
  const form = renderSearchForm(values, validationMessage);
  let results = "";
  if (response) {
    results = response.results.length
      ? `<p class="result-count">${response.total} match${
          response.total === 1 ? "" : "es"
        }</p>` + response.results.map((r) => resultCard(r, query)).join("\n")
      : `<p class="empty-state">No published networks match these facets.</p>`;
  }
  return `<section class="search-page">
    <h2>Search the catalog</h2>
    ${form}
    <div class="search-results">${results}</div>
  </section>`;
}
