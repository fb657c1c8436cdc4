"""Shared builders: quick record factories, the three FAIR scenario
records, and seeded random catalog/query generators.

The three FAIR scenarios pin the rule engine's observable behavior:

- ``partial_evidence_record``: published and licensed, but no minted DOI,
  one closed format, a missing provenance note, mixed vocabulary use and
  one malformed related link. Assessed offline with audited write access
  it grades F (2,2,0), A (2,2,0), I (1,3,0) with the Interoperable Yes on
  I2 only, R (2,2,0).
- ``all_evidence_record``: every metric satisfied, 16 Yes.
- ``empty_links_record``: no dataset links and no license, forcing
  F1/A1/I1/R2 to No.
"""

from __future__ import annotations

import datetime as dt
import itertools
import random
import string

from fairmet.interchange import NetworkRecord
from fairmet.model import (
    Contact,
    DatasetLink,
    DateRange,
    GeoPoint,
    LocalEnvironment,
    Network,
    Season,
    Sensor,
    Site,
)
from fairmet.search import SearchQuery
from fairmet.store import CatalogStore

COVERAGE_2016 = DateRange(dt.date(2016, 1, 1), dt.date(2016, 12, 31))
COVERAGE_2016_2017 = DateRange(dt.date(2016, 1, 1), dt.date(2017, 12, 31))

_counter = itertools.count(1)


def make_network(**overrides) -> Network:
    n = next(_counter)
    values = dict(
        id=f"net-{n:04d}",
        name=f"Test Network {n}",
        country="DE",
        region="Brandenburg",
        description="Observation network used in tests.",
        owner_institution="Test Institute",
        local_environment=LocalEnvironment.RURAL,
        operational_coverage=COVERAGE_2016,
        keywords=frozenset(),
        contacts=(),
        license=None,
        provenance_note=None,
        related_links=(),
        published=False,
    )
    values.update(overrides)
    return Network(**values)


def make_site(network: Network, **overrides) -> Site:
    n = next(_counter)
    values = dict(
        id=f"site-{n:04d}",
        network_id=network.id,
        name=f"Test Site {n}",
        location=GeoPoint(latitude_deg=52.4, longitude_deg=13.1, elevation_m=35.0),
        local_environment=network.local_environment,
        installation_coverage=network.operational_coverage,
        surface_description=None,
        height_datum_note=None,
    )
    values.update(overrides)
    return Site(**values)


def make_sensor(site: Site, **overrides) -> Sensor:
    n = next(_counter)
    values = dict(
        id=f"sen-{n:04d}",
        site_id=site.id,
        variable="air_temperature",
        units="Cel",
        sampling_interval_s=3600,
        height_above_ground_m=2.0,
        manufacturer_model=None,
    )
    values.update(overrides)
    return Sensor(**values)


def make_link(network: Network, **overrides) -> DatasetLink:
    n = next(_counter)
    values = dict(
        id=f"dl-{n:04d}",
        network_id=network.id,
        archive_url=f"https://archive.example.org/records/{n}",
        title=f"Dataset {n}",
        file_format="csv",
        temporal_coverage=network.operational_coverage,
        sampling_interval_s=3600,
        description="",
        doi=None,
        license=None,
        declared_record_count=None,
    )
    values.update(overrides)
    return DatasetLink(**values)


# ----------------------------------------------------------- FAIR fixtures


def partial_evidence_record() -> NetworkRecord:
    network = make_network(
        id="net-partial",
        name="Plant Shelter Observation Network",
        country="SI",
        region="Styria",
        description=(
            "Canopy-level stations under protective screens; the reference "
            "series is described in a report citing 10.1234/screens.2020 "
            "without a machine-readable link."
        ),
        owner_institution="Horticultural Research Station",
        local_environment=LocalEnvironment.RURAL,
        operational_coverage=COVERAGE_2016,
        keywords=frozenset({"air_temperature", "canopy_shade_index"}),
        contacts=(
            Contact(name="Field Team", role="operator", email="field@example.org"),
        ),
        license="CC-BY-4.0",
        provenance_note=None,
        related_links=(
            "https://example.org/screen-network",
            "gopher:bad target",
        ),
        published=True,
    )
    site = make_site(
        network,
        id="site-partial-1",
        name="Screenhouse Plot A",
        location=GeoPoint(latitude_deg=46.55, longitude_deg=15.64, elevation_m=270.0),
    )
    sensor = make_sensor(site, id="sen-partial-1")
    links = (
        make_link(
            network,
            id="dl-partial-csv",
            title="Hourly screen temperatures 2016",
            archive_url="https://archive.example.org/files/screens-2016.csv",
            file_format="csv",
            sampling_interval_s=3600,
            license="CC-BY-4.0",
            declared_record_count=8784,
        ),
        make_link(
            network,
            id="dl-partial-xlsx",
            title="Daily summary workbook 2016",
            archive_url="https://archive.example.org/files/screens-2016.xlsx",
            file_format="xlsx",
            sampling_interval_s=86400,
            license="CC-BY-4.0",
            declared_record_count=366,
        ),
    )
    return NetworkRecord(
        network=network, sites=(site,), sensors=(sensor,), dataset_links=links
    )


def all_evidence_record() -> NetworkRecord:
    network = make_network(
        id="net-full",
        name="Reference Ridge Network",
        country="AT",
        region="Tyrol",
        description="Fully documented ridge-top stations with archived data.",
        owner_institution="Alpine Observatory",
        local_environment=LocalEnvironment.RURAL,
        operational_coverage=COVERAGE_2016,
        keywords=frozenset({"air_temperature", "wind_speed"}),
        contacts=(
            Contact(name="Data Office", role="steward", email="data@example.org"),
        ),
        license="CC-BY-4.0",
        provenance_note="Stations calibrated yearly; raw data archived unmodified.",
        related_links=("https://example.org/ridge-network",),
        published=True,
    )
    site = make_site(
        network,
        id="site-full-1",
        name="Ridge Crest",
        location=GeoPoint(latitude_deg=47.2, longitude_deg=11.4, elevation_m=2040.0),
    )
    sensors = (
        make_sensor(site, id="sen-full-1", variable="air_temperature", units="Cel"),
        make_sensor(
            site, id="sen-full-2", variable="wind_speed", units="m/s",
            sampling_interval_s=600,
        ),
    )
    link = make_link(
        network,
        id="dl-full-csv",
        title="Ridge hourly observations 2016",
        archive_url="https://archive.example.org/records/10.5072/ridge.1",
        file_format="csv",
        sampling_interval_s=3600,
        doi="10.5072/ridge.1",
        license="CC-BY-4.0",
        declared_record_count=8784,
    )
    return NetworkRecord(
        network=network, sites=(site,), sensors=sensors, dataset_links=(link,)
    )


def empty_links_record() -> NetworkRecord:
    network = make_network(
        id="net-bare",
        name="Orchard Frost Watch",
        country="HR",
        region="Istria",
        description="Frost warning stations; data not yet archived.",
        owner_institution="Orchard Cooperative",
        local_environment=LocalEnvironment.SUBURBAN,
        operational_coverage=COVERAGE_2016,
        keywords=frozenset({"air_temperature"}),
        license=None,
        published=True,
    )
    site = make_site(
        network,
        id="site-bare-1",
        name="Orchard Gate",
        location=GeoPoint(latitude_deg=45.24, longitude_deg=13.94, elevation_m=10.0),
    )
    sensor = make_sensor(site, id="sen-bare-1")
    return NetworkRecord(
        network=network, sites=(site,), sensors=(sensor,), dataset_links=()
    )


# ------------------------------------------------------ random generation

COUNTRY_POOL = ("RS", "DE", "FR", "ES", "IT", "AT", "SI", "HR", "HU", "NL", "PL", "GB")
REGION_POOL = (
    "Vojvodina", "Brandenburg", "Provence", "Andalusia", "Lombardy",
    "Tyrol", "Styria", "Istria", "Pannonia", "Gelderland", "Mazovia", "Kent",
)
WORD_POOL = (
    "alpine", "campus", "city", "coastal", "forest", "meadow", "orchard",
    "plateau", "river", "station", "valley", "vineyard",
)
VARIABLE_POOL = (
    "air_temperature", "relative_humidity", "wind_speed", "wind_direction",
    "precipitation", "soil_temperature", "leaf_wetness", "global_radiation",
    "road_surface_state", "canopy_drip",
)
FORMAT_POOL = ("csv", "netcdf", "json", "txt", "xlsx", "dat", "zip")
INTERVAL_POOL = (600, 900, 1800, 3600, 7200, 14400, 86400)
ENV_POOL = tuple(LocalEnvironment)


def random_coverage(rng: random.Random, max_span_days: int = 1100) -> DateRange:
    start = dt.date(2006, 1, 1) + dt.timedelta(days=rng.randrange(0, 4500))
    span = rng.randrange(5, max_span_days)
    return DateRange(start, start + dt.timedelta(days=span))


def random_record(rng: random.Random, index: int, published: bool = True) -> NetworkRecord:
    """One admissible record (validation errors never, warnings sometimes)."""
    suffix = "".join(rng.choice(string.ascii_lowercase) for _ in range(6))
    coverage = random_coverage(rng)
    network = make_network(
        id=f"net-r{index:04d}-{suffix}",
        name=f"{rng.choice(WORD_POOL).title()} {rng.choice(WORD_POOL).title()} Network {index}",
        country=rng.choice(COUNTRY_POOL),
        region=rng.choice(REGION_POOL),
        description=" ".join(rng.sample(WORD_POOL, 4)),
        local_environment=rng.choice(ENV_POOL),
        operational_coverage=coverage,
        keywords=frozenset(rng.sample(WORD_POOL + VARIABLE_POOL[:4], rng.randrange(0, 4))),
        license=rng.choice((None, "CC-BY-4.0", "CC0-1.0")),
        provenance_note=rng.choice((None, "operator-maintained station logs")),
        related_links=tuple(
            f"https://example.org/{suffix}/{i}" for i in range(rng.randrange(0, 3))
        ),
        published=published,
    )
    sites = []
    sensors = []
    for s in range(rng.randrange(0, 5)):
        offset = rng.randrange(0, max(1, coverage.days))
        length = rng.randrange(0, max(1, coverage.days - offset))
        site_start = coverage.start + dt.timedelta(days=offset)
        site = make_site(
            network,
            id=f"site-r{index:04d}-{s}",
            name=f"{rng.choice(WORD_POOL).title()} Site {s}",
            location=GeoPoint(
                latitude_deg=rng.uniform(-60, 70),
                longitude_deg=rng.uniform(-30, 45),
                elevation_m=rng.uniform(0, 2500),
            ),
            local_environment=rng.choice(ENV_POOL),
            installation_coverage=DateRange(
                site_start, site_start + dt.timedelta(days=length)
            ),
        )
        sites.append(site)
        for z in range(rng.randrange(0, 3)):
            sensors.append(
                make_sensor(
                    site,
                    id=f"sen-r{index:04d}-{s}-{z}",
                    variable=rng.choice(VARIABLE_POOL),
                    units=rng.choice(("Cel", "m/s", "%", "mm", "W/m2")),
                    sampling_interval_s=rng.choice(INTERVAL_POOL),
                )
            )
    links = []
    for l in range(rng.randrange(0, 3)):
        interval = rng.choice(INTERVAL_POOL)
        link_coverage = random_coverage(rng, max_span_days=500)
        declared = rng.choice(
            (None, (86400 // interval) * link_coverage.days, rng.randrange(0, 50000))
        )
        links.append(
            make_link(
                network,
                id=f"dl-r{index:04d}-{l}",
                archive_url=f"https://archive.example.org/records/r{index}/{l}",
                title=f"{rng.choice(WORD_POOL).title()} dataset {l}",
                file_format=rng.choice(FORMAT_POOL),
                temporal_coverage=link_coverage,
                sampling_interval_s=interval,
                doi=rng.choice((None, f"10.5072/r{index:04d}.{l}")),
                license=rng.choice((None, "CC-BY-4.0")),
                declared_record_count=declared,
            )
        )
    return NetworkRecord(
        network=network,
        sites=tuple(sites),
        sensors=tuple(sensors),
        dataset_links=tuple(links),
    )


def random_catalog(
    rng: random.Random,
    size: int,
    draft_fraction: float = 0.2,
    tombstone_fraction: float = 0.05,
) -> CatalogStore:
    store = CatalogStore()
    for index in range(size):
        published = rng.random() >= draft_fraction
        record = random_record(rng, index, published=published)
        store.upsert_network(record)
        if published and rng.random() < tombstone_fraction:
            store.delete_network(record.network.id)
    return store


def random_query(rng: random.Random) -> SearchQuery:
    country = rng.choice(COUNTRY_POOL) if rng.random() < 0.5 else None
    region = rng.choice(REGION_POOL + ("ia", "land")) if rng.random() < 0.3 else None
    env = rng.choice(ENV_POOL) if rng.random() < 0.4 else None
    seasonality = (
        frozenset(rng.sample(tuple(Season), rng.randrange(1, 3)))
        if rng.random() < 0.3
        else None
    )
    date_range = random_coverage(rng, max_span_days=900) if rng.random() < 0.5 else None
    keywords = (
        tuple(rng.sample(WORD_POOL + ("network", "nowhere_term"), rng.randrange(1, 3)))
        if rng.random() < 0.5
        else None
    )
    return SearchQuery(
        country=country,
        region=region,
        local_environment=env,
        seasonality=seasonality,
        date_range=date_range,
        keywords=keywords,
    )
