/** Canned API payloads captured from a seeded portal, so renderer tests run
 * without a live service.
 */

import type {
  NetworkDocument,
  NetworkSummary,
  SearchResponse,
  SiteDoc,
  SummaryMetrics,
} from "../src/types.js";

const SITE_POINTS: [string, string, number, number][] = [
  ["site-ns01", "Novi Sad City Centre", 45.2551, 19.8452],
  ["site-ns02", "Novi Sad Liman Park", 45.2428, 19.8411],
  ["site-ns03", "Novi Sad Danube Quay", 45.253, 19.861],
  ["site-ns04", "Novi Sad Railway Station", 45.2655, 19.8296],
  ["site-ns05", "Novi Sad University Campus", 45.2457, 19.8519],
  ["site-ns06", "Novi Sad Petrovaradin", 45.2465, 19.8787],
  ["site-ns07", "Novi Sad Detelinara", 45.2672, 19.811],
  ["site-ns08", "Novi Sad Novo Naselje", 45.2546, 19.7962],
  ["site-ns09", "Novi Sad Klisa", 45.2904, 19.834],
  ["site-ns10", "Novi Sad Telep", 45.2345, 19.8173],
  ["site-ns11", "Novi Sad Podbara", 45.2629, 19.8554],
  ["site-ns12", "Novi Sad Salajka", 45.2701, 19.8457],
];

const COVERAGE = { start: "2016-01-01", end: "2017-12-31" };

export function demoSites(): SiteDoc[] {
  return SITE_POINTS.map(([id, name, lat, lon], index) => ({
    id,
    network_id: "net-novisad",
    name,
    location: { latitude_deg: lat, longitude_deg: lon, elevation_m: 80 + index },
    local_environment: "urban",
    installation_coverage: { ...COVERAGE },
    surface_description: index === 0 ? "street canyon, paved surroundings" : "",
    height_datum_note: null,
    sensors: [
      {
        id: `sen-ns${String(index + 1).padStart(2, "0")}t`,
        site_id: id,
        variable: "air_temperature",
        units: "Cel",
        sampling_interval_s: 3600,
        height_above_ground_m: 2.0,
        manufacturer_model: null,
      },
    ],
  }));
}

export function demoDocument(): NetworkDocument {
  return {
    network: {
      id: "net-novisad",
      name: "Novi Sad Urban Network",
      country: "RS",
      region: "Vojvodina",
      description:
        "Urban measurement network of automated weather stations across " +
        "Novi Sad recording hourly air temperature at screen level.",
      owner_institution: "University of Novi Sad",
      local_environment: "urban",
      operational_coverage: { ...COVERAGE },
      keywords: ["air_temperature", "automated_weather_station", "urban_climate"],
      contacts: [
        {
          name: "Network Operations Office",
          role: "data steward",
          email: "stations@example.org",
        },
      ],
      license: "CC-BY-4.0",
      provenance_note:
        "Stations installed and maintained by the operating institution; " +
        "hourly values quality-checked before archival.",
      related_links: ["https://example.org/novi-sad-network"],
      published: true,
    },
    sites: demoSites(),
    dataset_links: [
      {
        id: "dl-0001",
        network_id: "net-novisad",
        doi: "10.5072/portal.1",
        archive_url: "https://archive.example.org/records/10.5072/portal.1",
        title: "Hourly air temperature 2016-2017 (12 urban sites)",
        license: "CC-BY-4.0",
        file_format: "csv",
        temporal_coverage: { ...COVERAGE },
        sampling_interval_s: 3600,
        declared_record_count: 17544,
        description: "Quality-checked hourly series archived as one CSV file.",
      },
    ],
  };
}

export function demoSummary(): NetworkSummary {
  return {
    id: "net-novisad",
    name: "Novi Sad Urban Network",
    country: "RS",
    region: "Vojvodina",
    local_environment: "urban",
    operational_coverage: { ...COVERAGE },
    site_count: 12,
    keywords: ["air_temperature", "automated_weather_station", "urban_climate"],
    published: true,
    doi_count: 1,
  };
}

export function demoSearchResponse(): SearchResponse {
  return {
    results: [
      {
        network_id: "net-novisad",
        name: "Novi Sad Urban Network",
        country: "RS",
        local_environment: "urban",
        coverage: { ...COVERAGE },
        site_count: 12,
        doi_links: [
          {
            doi: "10.5072/portal.1",
            title: "Hourly air temperature 2016-2017 (12 urban sites)",
            archive_url: "https://archive.example.org/records/10.5072/portal.1",
          },
        ],
        score: 0,
      },
    ],
    total: 1,
    page: 1,
    page_size: 50,
  };
}

export function demoMetrics(): SummaryMetrics {
  return {
    network_count: 1,
    site_count: 12,
    mean_sites_per_network: 12,
    sensor_count: 12,
    sensor_type_histogram: { air_temperature: 12 },
    dataset_record_sum: 17544,
    coverage_span: { ...COVERAGE },
    empty: false,
  };
}

export function emptyMetrics(): SummaryMetrics {
  return {
    network_count: 0,
    site_count: 0,
    mean_sites_per_network: 0,
    sensor_count: 0,
    sensor_type_histogram: {},
    dataset_record_sum: 0,
    coverage_span: null,
    empty: true,
  };
}
