/** Site map: an SVG pin layer over an optional public map-tile backdrop.
 * Pins and the coordinate table never require network access; the tile image
 * hides itself on load failure so the view degrades to pins on a plain
 * background (plus the table) when offline.
 */

import { attr, esc } from "./html.js";
import type { SiteDoc } from "./types.js";

export interface PinPosition {
  siteId: string;
  name: string;
  x: number;
  y: number;
  latitude: number;
  longitude: number;
}

export const MAP_WIDTH = 640;
export const MAP_HEIGHT = 420;
const PADDING = 36;

/** Linear lat/lon -> viewBox projection over the padded bounding box of the
 * sites. Adequate at network scale (tens of km); a lone site centers. */
export function pinPositions(
  sites: SiteDoc[],
  width = MAP_WIDTH,
  height = MAP_HEIGHT,
): PinPosition[] {
  if (!sites.length) return [];
  const lats = sites.map((s) => s.location.latitude_deg);
  const lons = sites.map((s) => s.location.longitude_deg);
  const latMin = Math.min(...lats);
  const latMax = Math.max(...lats);
  const lonMin = Math.min(...lons);
  const lonMax = Math.max(...lons);
  const lonSpan = lonMax - lonMin;
  const latSpan = latMax - latMin;
  return sites.map((site) => {
    const fx =
      lonSpan > 0 ? (site.location.longitude_deg - lonMin) / lonSpan : 0.5;
    const fy =
      latSpan > 0 ? (site.location.latitude_deg - latMin) / latSpan : 0.5;
    return {
      siteId: site.id,
      name: site.name,
      x: PADDING + fx * (width - 2 * PADDING),
      y: height - PADDING - fy * (height - 2 * PADDING),
      latitude: site.location.latitude_deg,
      longitude: site.location.longitude_deg,
    };
  });
}

/** Standard slippy-map tile index for the tile containing (lat, lon). */
export function tileForCenter(
  latitude: number,
  longitude: number,
  zoom: number,
): { x: number; y: number; z: number } {
  const n = 2 ** zoom;
  const x = Math.floor(((longitude + 180) / 360) * n);
  const latRad = (latitude * Math.PI) / 180;
  const y = Math.floor(
    ((1 - Math.log(Math.tan(latRad) + 1 / Math.cos(latRad)) / Math.PI) / 2) * n,
  );
  return { x, y, z: zoom };
}

function backdropUrl(sites: SiteDoc[]): string {
  const lat =
    sites.reduce((sum, s) => sum + s.location.latitude_deg, 0) / sites.length;
  const lon =
    sites.reduce((sum, s) => sum + s.location.longitude_deg, 0) / sites.length;
  const { x, y, z } = tileForCenter(lat, lon, 11);
  return `https://tile.openstreetmap.org/${z}/${x}/${y}.png`;
}

export function renderSiteMap(sites: SiteDoc[], fromQuery: string): string {
  if (!sites.length) return "";
  const pins = pinPositions(sites);
  const fromSuffix = fromQuery ? `?from=${encodeURIComponent(fromQuery)}` : "";
  const pinMarkup = pins
    .map(
      (pin) => `<a class="map-pin" data-site-id="${attr(pin.siteId)}"
        href="#/sites/${encodeURIComponent(pin.siteId)}${fromSuffix}">
        <circle cx="${pin.x.toFixed(1)}" cy="${pin.y.toFixed(1)}" r="7"></circle>
        <title>${esc(pin.name)} (${pin.latitude}, ${pin.longitude})</title>
      </a>`,
    )
    .join("\n");
  const tableRows = sites
    .map(
      (site) => `<tr data-site-id="${attr(site.id)}">
        <td><a href="#/sites/${encodeURIComponent(site.id)}${fromSuffix}">${esc(site.name)}</a></td>
        <td>${site.location.latitude_deg}</td>
        <td>${site.location.longitude_deg}</td>
        <td>${site.location.elevation_m ?? "-"}</td>
        <td>${site.sensors.length}</td>
      </tr>`,
    )
    .join("\n");
  return `<figure class="site-map">
    <div class="map-frame">
      <img class="map-backdrop" src="${attr(backdropUrl(sites))}" alt=""
        onerror="this.style.display='none'">
      <svg viewBox="0 0 ${MAP_WIDTH} ${MAP_HEIGHT}" role="img"
        aria-label="site locations">
        ${pinMarkup}
      </svg>
    </div>
    <figcaption>${sites.length} site${sites.length === 1 ? "" : "s"}; click a pin or row for detail.</figcaption>
    <table class="site-table">
      <thead><tr><th>Site</th><th>Lat</th><th>Lon</th><th>Elev (m)</th><th>Sensors</th></tr></thead>
      <tbody>${tableRows}</tbody>
    </table>
  </figure>`;
}
