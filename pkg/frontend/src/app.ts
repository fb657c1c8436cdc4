/** View controller: routes, fetches, and event wiring. Fetches race through
 * a RequestGate so a stale response never overwrites a newer view. All DOM
 * access stays in this module and main.ts; views are pure string builders.
 */

import { ApiClient, ApiError } from "./api.js";
import { errorBanner, infoBanner, notFoundPage } from "./html.js";
import { parseHash, type Route } from "./router.js";
import {
  EMPTY_FORM,
  fromQueryString,
  readForm,
  toQueryString,
  validateForm,
  type SearchFormValues,
} from "./searchForm.js";
import { RequestGate } from "./state.js";
import type { CubeResponse, SummaryMetrics } from "./types.js";
import {
  CUBE_MEASURES,
  MAX_CUBE_DIMENSIONS,
  renderAnalyticsPage,
} from "./views/analytics.js";
import { renderLanding } from "./views/landing.js";
import { loadingView, renderShell } from "./views/layout.js";
import { renderNetworkPage } from "./views/network.js";
import { renderSearchPage } from "./views/search.js";
import { renderSitePage } from "./views/site.js";

const TOKEN_KEY = "fairmet-token";

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export interface AppOptions {
  root: HTMLElement;
  client: ApiClient;
  storage: StorageLike;
  getHash: () => string;
  setHash: (hash: string) => void;
}

interface CubeState {
  dimensions: string[];
  message: string | null;
  result: CubeResponse | null;
  error: { code: string; message: string } | null;
}

export function createApp(options: AppOptions) {
  const { root, client, storage, getHash, setHash } = options;
  const gate = new RequestGate();
  let notice: string | null = null;
  let cubeState: CubeState = {
    dimensions: ["country"],
    message: null,
    result: null,
    error: null,
  };

  function token(): string | null {
    return storage.getItem(TOKEN_KEY);
  }

  function show(content: string): void {
    const banner = notice ? infoBanner(notice) : "";
    notice = null;
    root.innerHTML = renderShell(banner + content, token());
  }

  function showError(error: unknown): void {
    if (error instanceof ApiError) {
      show(errorBanner(error.message, error.code));
    } else {
      show(errorBanner(String(error)));
    }
  }

  async function renderLandingRoute(ticket: number): Promise<void> {
    const page = await client.listNetworks();
    if (!gate.isCurrent(ticket)) return;
    show(renderLanding(page));
  }

  async function renderSearchRoute(ticket: number, query: string): Promise<void> {
    const values = query ? fromQueryString(query) : EMPTY_FORM;
    const message = validateForm(values);
    if (message) {
      show(renderSearchPage(values, message, null, query));
      return;
    }
    try {
      const response = await client.search(query);
      if (!gate.isCurrent(ticket)) return;
      show(renderSearchPage(values, null, response, query));
    } catch (error) {
      if (!gate.isCurrent(ticket)) return;
      if (error instanceof ApiError) {
        show(
          renderSearchPage(values, null, null, query) +
            errorBanner(error.message, error.code),
        );
        return;
      }
      throw error;
    }
  }

  async function renderNetworkRoute(
    ticket: number,
    id: string,
    from: string,
  ): Promise<void> {
    const doc = await client.getNetwork(id);
    if (!gate.isCurrent(ticket)) return;
    show(renderNetworkPage(doc, from, token() !== null));
  }

  async function renderSiteRoute(
    ticket: number,
    id: string,
    from: string,
  ): Promise<void> {
    const site = await client.getSite(id);
    if (!gate.isCurrent(ticket)) return;
    show(renderSitePage(site, from));
  }

  async function renderAnalyticsRoute(ticket: number): Promise<void> {
    const summary: SummaryMetrics = await client.summary();
    if (!gate.isCurrent(ticket)) return;
    show(
      renderAnalyticsPage(
        summary,
        cubeState.dimensions,
        cubeState.message,
        cubeState.result,
        cubeState.error,
      ),
    );
  }

  async function render(): Promise<void> {
    const route: Route = parseHash(getHash());
    const ticket = gate.next();
    show(loadingView(route.kind));
    try {
      switch (route.kind) {
        case "landing":
          await renderLandingRoute(ticket);
          break;
        case "search":
          await renderSearchRoute(ticket, route.query);
          break;
        case "network":
          await renderNetworkRoute(ticket, route.id, route.from);
          break;
        case "site":
          await renderSiteRoute(ticket, route.id, route.from);
          break;
        case "analytics":
          await renderAnalyticsRoute(ticket);
          break;
        case "notFound":
          show(notFoundPage(`No page at ${route.path}`));
          break;
      }
    } catch (error) {
      if (!gate.isCurrent(ticket)) return;
      if (error instanceof ApiError && error.status === 404) {
        show(notFoundPage(error.message));
      } else {
        showError(error);
      }
    }
  }

  function submitSearch(form: HTMLFormElement): void {
    const values: SearchFormValues = readForm(form);
    const message = validateForm(values);
    const query = toQueryString(values);
    if (message) {
      show(renderSearchPage(values, message, null, query));
      return;
    }
    const target = query ? `#/search?${query}` : "#/search";
    if (getHash() === target) {
      void render();
    } else {
      setHash(target);
    }
  }

  function submitCube(form: HTMLFormElement): void {
    const data = new FormData(form);
    const dimensions = data.getAll("dimension").map(String);
    cubeState = { dimensions, message: null, result: null, error: null };
    if (!dimensions.length) {
      cubeState.message = "pick at least one dimension";
      void render();
      return;
    }
    if (dimensions.length > MAX_CUBE_DIMENSIONS) {
      cubeState.message = `pick at most ${MAX_CUBE_DIMENSIONS} dimensions`;
      void render();
      return;
    }
    client
      .cube({ dimensions, measures: [...CUBE_MEASURES] })
      .then((result) => {
        cubeState.result = result;
        return render();
      })
      .catch((error: unknown) => {
        cubeState.error =
          error instanceof ApiError
            ? { code: error.code, message: error.message }
            : { code: "error", message: String(error) };
        return render();
      });
  }

  function runManagerAction(action: string, networkId: string): void {
    const call =
      action === "publish"
        ? client.publishNetwork(networkId)
        : client.runAssessment(networkId);
    call
      .then(() => {
        notice =
          action === "publish"
            ? `published ${networkId}`
            : `assessment stored for ${networkId}`;
        return render();
      })
      .catch((error: unknown) => showError(error));
  }

  function onClick(event: Event): void {
    const target = (event.target as HTMLElement).closest("[data-action]");
    if (!(target instanceof HTMLElement)) return;
    const action = target.dataset.action;
    if (action === "save-token") {
      const input = root.querySelector<HTMLInputElement>("#token-input");
      const value = input?.value.trim();
      if (value) {
        storage.setItem(TOKEN_KEY, value);
        client.token = value;
        void render();
      }
    } else if (action === "clear-token") {
      storage.removeItem(TOKEN_KEY);
      client.token = null;
      void render();
    } else if (action === "publish" || action === "assess") {
      runManagerAction(action, target.dataset.networkId ?? "");
    }
  }

  function onSubmit(event: Event): void {
    const form = event.target as HTMLFormElement;
    if (form.id === "search-form") {
      event.preventDefault();
      submitSearch(form);
    } else if (form.id === "cube-form") {
      event.preventDefault();
      submitCube(form);
    }
  }

  function start(): void {
    client.token = token();
    root.addEventListener("click", onClick);
    root.addEventListener("submit", onSubmit);
    void render();
  }

  return { start, render };
}
