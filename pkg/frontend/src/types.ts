/** Payload shapes, mirroring the HTTP API documented in ../docs/api.md.
 * The UI renders these fields as delivered; it never derives its own numbers.
 */

export interface DateRangeDoc {
  start: string;
  end: string;
}

export interface ContactDoc {
  name: string;
  role: string;
  email: string;
}

export interface NetworkDoc {
  id: string;
  name: string;
  country: string;
  region: string;
  description: string;
  owner_institution: string;
  local_environment: string;
  operational_coverage: DateRangeDoc;
  keywords: string[];
  contacts: ContactDoc[];
  license: string | null;
  provenance_note: string;
  related_links: string[];
  published: boolean;
}

export interface SensorDoc {
  id: string;
  site_id: string;
  variable: string;
  units: string;
  sampling_interval_s: number;
  height_above_ground_m: number | null;
  manufacturer_model: string | null;
}

export interface SiteDoc {
  id: string;
  network_id: string;
  name: string;
  location: {
    latitude_deg: number;
    longitude_deg: number;
    elevation_m: number | null;
  };
  local_environment: string;
  installation_coverage: DateRangeDoc;
  surface_description: string;
  height_datum_note: string | null;
  sensors: SensorDoc[];
}

export interface DatasetLinkDoc {
  id: string;
  network_id: string;
  doi: string | null;
  archive_url: string;
  title: string;
  license: string | null;
  file_format: string;
  temporal_coverage: DateRangeDoc;
  sampling_interval_s: number;
  declared_record_count: number | null;
  description: string;
}

export interface NetworkDocument {
  network: NetworkDoc;
  sites: SiteDoc[];
  dataset_links: DatasetLinkDoc[];
  assessment?: AssessmentDoc;
  tombstoned?: boolean;
}

export interface NetworkSummary {
  id: string;
  name: string;
  country: string;
  region: string;
  local_environment: string;
  operational_coverage: DateRangeDoc;
  site_count: number;
  keywords: string[];
  published: boolean;
  doi_count: number;
}

export interface Page<T> {
  total: number;
  page: number;
  page_size: number;
  items: T[];
}

export interface SearchResultItem {
  network_id: string;
  name: string;
  country: string;
  local_environment: string;
  coverage: DateRangeDoc;
  site_count: number;
  doi_links: { doi: string | null; title: string; archive_url: string }[];
  score: number;
}

export interface SearchResponse {
  results: SearchResultItem[];
  total: number;
  page: number;
  page_size: number;
}

export interface MetricEntry {
  outcome: "Yes" | "Partial" | "No";
  rationale: string;
}

export interface AssessmentDoc {
  network_id: string;
  rubric_version: string;
  assessed_at: string;
  metrics: Record<string, MetricEntry>;
  rollup: Record<string, { yes: number; partial: number; no: number }>;
}

export interface SummaryMetrics {
  network_count: number;
  site_count: number;
  sensor_count: number;
  mean_sites_per_network: number;
  sensor_type_histogram: Record<string, number>;
  dataset_record_sum: number;
  coverage_span: DateRangeDoc | null;
  empty: boolean;
  networks?: unknown[];
}

export type MeasureValue = number | Record<string, number>;

export interface CubeRow {
  key: (string | number)[];
  measures: Record<string, MeasureValue>;
}

export interface CubeResponse {
  dimensions: string[];
  measures: string[];
  rows: CubeRow[];
  totals: CubeRow & { empty?: boolean };
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: unknown;
}
