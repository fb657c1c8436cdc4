/** Page chrome: navigation, the token panel, and the content slot. */

import { attr } from "../html.js";

export function renderShell(content: string, token: string | null): string {
  const tokenState = token
    ? `<span class="token-state">token set</span>
       <button type="button" data-action="clear-token">Sign out</button>`
    : `<input type="password" id="token-input" placeholder="access token">
       <button type="button" data-action="save-token">Use token</button>`;
  return `<header class="top-bar">
    <a class="brand" href="#/">fairmet</a>
    <nav>
      <a href="#/">Networks</a>
      <a href="#/search">Search</a>
      <a href="#/analytics">Analytics</a>
    </nav>
    <div class="token-panel" data-token="${token ? "1" : "0"}">${tokenState}</div>
  </header>
  <main id="view">${content}</main>`;
}

export function loadingView(subject: string): string {
  return `<p class="loading">Loading ${attr(subject)}...</p>`;
}
