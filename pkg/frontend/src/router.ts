/** Hash routing. Every view is deep-linkable; the search query travels in the
 * hash so network/site pages can carry a "from" copy of it for back links.
 */

export type Route =
  | { kind: "landing" }
  | { kind: "search"; query: string }
  | { kind: "network"; id: string; from: string }
  | { kind: "site"; id: string; from: string }
  | { kind: "analytics" }
  | { kind: "notFound"; path: string };

function splitHash(hash: string): { path: string; query: string } {
  const bare = hash.replace(/^#/, "");
  const q = bare.indexOf("?");
  if (q === -1) return { path: bare, query: "" };
  return { path: bare.slice(0, q), query: bare.slice(q + 1) };
}

export function parseHash(hash: string): Route {
  const { path, query } = splitHash(hash);
  const params = new URLSearchParams(query);
  const from = params.get("from") ?? "";
  if (path === "" || path === "/") return { kind: "landing" };
  if (path === "/search") return { kind: "search", query };
  if (path === "/analytics") return { kind: "analytics" };
  const network = path.match(/^\/networks\/([^/]+)$/);
  if (network) return { kind: "network", id: decodeURIComponent(network[1]), from };
  const site = path.match(/^\/sites\/([^/]+)$/);
  if (site) return { kind: "site", id: decodeURIComponent(site[1]), from };
  return { kind: "notFound", path };
}

export function formatRoute(route: Route): string {
  switch (route.kind) {
    case "landing":
      return "#/";
    case "search":
      return route.query ? `#/search?${route.query}` : "#/search";
    case "network": {
      const base = `#/networks/${encodeURIComponent(route.id)}`;
      return route.from ? `${base}?from=${encodeURIComponent(route.from)}` : base;
    }
    case "site": {
      const base = `#/sites/${encodeURIComponent(route.id)}`;
      return route.from ? `${base}?from=${encodeURIComponent(route.from)}` : base;
    }
    case "analytics":
      return "#/analytics";
    case "notFound":
      return `#${route.path}`;
  }
}

/** The search-results link back to a query, used as the "from" payload. */
export function searchHash(query: string): string {
  return formatRoute({ kind: "search", query });
}
