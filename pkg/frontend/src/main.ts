/** Browser bootstrap. The API base URL comes from, in order: a
 * window.FAIRMET_API global (set it in index.html), a fairmet-api
 * localStorage entry, or same-origin.
 */

import { ApiClient } from "./api.js";
import { createApp } from "./app.js";

declare global {
  interface Window {
    FAIRMET_API?: string;
  }
}

const baseUrl =
  window.FAIRMET_API ?? localStorage.getItem("fairmet-api") ?? "";

const client = new ApiClient({
  baseUrl,
  token: localStorage.getItem("fairmet-token"),
});

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

const app = createApp({
  root,
  client,
  storage: localStorage,
  getHash: () => location.hash,
  setHash: (hash) => {
    location.hash = hash;
  },
});

window.addEventListener("hashchange", () => {
  void app.render();
});
app.start();
