/** String-building helpers shared by every view. Views are pure functions
 * payload -> HTML string so they run under Node tests without a DOM.
 */

const ESCAPES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
  "'": "&#39;",
};

export function esc(text: string | number | null | undefined): string {
  if (text === null || text === undefined) return "";
  return String(text).replace(/[&<>"']/g, (ch) => ESCAPES[ch]);
}

/** Escape for attribute positions (same table; kept separate for intent). */
export function attr(text: string | number | null | undefined): string {
  return esc(text);
}

export function errorBanner(message: string, code?: string): string {
  const tag = code ? `<code>${esc(code)}</code> ` : "";
  return `<div class="banner banner-error" role="alert">${tag}${esc(message)}</div>`;
}

export function infoBanner(message: string): string {
  return `<div class="banner banner-info">${esc(message)}</div>`;
}

export function notFoundPage(subject: string): string {
  return `<section class="not-found">
    <h2>Not found</h2>
    <p>${esc(subject)}</p>
    <p><a href="#/">Back to the catalog</a></p>
  </section>`;
}

export function dateRangeText(range: { start: string; end: string } | null): string {
  if (!range) return "-";
  return `${range.start} to ${range.end}`;
}

export function doiAnchor(doi: string | null, archiveUrl: string): string {
  const label = doi ? `DOI ${doi}` : "archive copy";
  return `<a class="doi-link" href="${attr(archiveUrl)}" target="_blank" rel="noopener">${esc(label)}</a>`;
}
