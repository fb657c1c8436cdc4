"""Demo catalog: an urban observation network with archived hourly data.

One published network (Novi Sad Urban Network, RS) with 12 urban sites,
each carrying an hourly air temperature sensor, spanning 2016-2017. At
3600 s sampling that coverage yields 24 x 731 = 17,544 records, which the
seeded dataset link declares. Used by the ``seed-demo`` CLI command and
throughout the tests as a known-good fixture.
"""

from __future__ import annotations

import datetime as dt

from .archive import ArchiveClient
from .interchange import NetworkRecord, build_document
from .model import (
    Contact,
    DatasetLink,
    DateRange,
    GeoPoint,
    LocalEnvironment,
    Network,
    Sensor,
    Site,
)
from .store import CatalogStore

DEMO_NETWORK_ID = "net-novisad"
DEMO_COVERAGE = DateRange(dt.date(2016, 1, 1), dt.date(2017, 12, 31))
DEMO_RECORD_COUNT = 24 * DEMO_COVERAGE.days  # hourly over 731 days

# Pin spread around the Novi Sad city centre; one station per district.
_SITE_SPOTS = (
    ("City Centre", 45.2551, 19.8452),
    ("Liman Park", 45.2428, 19.8411),
    ("Danube Quay", 45.2530, 19.8610),
    ("Railway Station", 45.2655, 19.8296),
    ("University Campus", 45.2457, 19.8519),
    ("Petrovaradin", 45.2465, 19.8787),
    ("Detelinara", 45.2672, 19.8110),
    ("Novo Naselje", 45.2546, 19.7962),
    ("Klisa", 45.2904, 19.8340),
    ("Telep", 45.2345, 19.8173),
    ("Podbara", 45.2629, 19.8554),
    ("Salajka", 45.2701, 19.8457),
)


def demo_record() -> NetworkRecord:
    """The seeded network as a draft record (publish happens in seed_demo)."""
    sites = []
    sensors = []
    for index, (spot, lat, lon) in enumerate(_SITE_SPOTS, start=1):
        site_id = f"site-ns{index:02d}"
        sites.append(
            Site(
                id=site_id,
                network_id=DEMO_NETWORK_ID,
                name=f"Novi Sad {spot}",
                location=GeoPoint(latitude_deg=lat, longitude_deg=lon, elevation_m=80.0),
                local_environment=LocalEnvironment.URBAN,
                installation_coverage=DEMO_COVERAGE,
                surface_description="street canyon, paved surroundings",
            )
        )
        sensors.append(
            Sensor(
                id=f"sen-ns{index:02d}t",
                site_id=site_id,
                variable="air_temperature",
                units="Cel",
                sampling_interval_s=3600,
                height_above_ground_m=2.0,
            )
        )
    network = Network(
        id=DEMO_NETWORK_ID,
        name="Novi Sad Urban Network",
        country="RS",
        region="Vojvodina",
        description=(
            "Urban measurement network of automated weather stations across "
            "Novi Sad recording hourly air temperature at screen level."
        ),
        owner_institution="University of Novi Sad",
        local_environment=LocalEnvironment.URBAN,
        operational_coverage=DEMO_COVERAGE,
        keywords=frozenset({"air_temperature", "urban_climate", "automated_weather_station"}),
        contacts=(
            Contact(
                name="Network Operations Office",
                role="data steward",
                email="stations@example.org",
            ),
        ),
        license="CC-BY-4.0",
        provenance_note=(
            "Stations installed and maintained by the operating institution; "
            "hourly values quality-checked before archival."
        ),
        related_links=("https://example.org/novi-sad-network",),
        published=False,
    )
    return NetworkRecord(
        network=network,
        sites=tuple(sites),
        sensors=tuple(sensors),
        dataset_links=(),
    )


def demo_document() -> dict:
    return build_document(demo_record())


def _demo_csv_sample() -> bytes:
    lines = ["timestamp,site_id,air_temperature_cel"]
    for hour in range(24):
        lines.append(f"2016-01-01T{hour:02d}:00:00Z,site-ns01,{-1.0 + 0.1 * hour:.1f}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def seed_demo(store: CatalogStore, archive: ArchiveClient) -> DatasetLink:
    """Install the demo network, run the deposit flow, publish.

    Idempotent: re-running against the same store and archive leaves one
    published network holding one DOI-bearing dataset link.
    """
    document = demo_document()
    existing = store.snapshot().networks.get(DEMO_NETWORK_ID)
    if existing is None:
        store.upsert_network(document, owner="seed-demo")

    links = store.list_dataset_links(DEMO_NETWORK_ID)
    link = next((l for l in links if l.doi is not None), None)
    if link is None:
        deposit = archive.create_deposit(
            title="Novi Sad urban air temperature, hourly, 2016-2017",
            description="Hourly screen-level air temperature from 12 urban stations.",
            creators=("University of Novi Sad",),
            license="CC-BY-4.0",
            idempotency_token="seed-demo-novisad",
        )
        archive.upload_file(deposit.deposit_id, "novi_sad_hourly_2016_2017.csv", _demo_csv_sample())
        doi = archive.publish_deposit(deposit.deposit_id)
        link = store.add_dataset_link(
            DEMO_NETWORK_ID,
            title="Hourly air temperature 2016-2017 (12 urban sites)",
            archive_url=archive.landing_url(doi),
            file_format="csv",
            temporal_coverage=DEMO_COVERAGE,
            sampling_interval_s=3600,
            doi=doi,
            license="CC-BY-4.0",
            declared_record_count=DEMO_RECORD_COUNT,
            description="Quality-checked hourly series archived as one CSV file.",
        )

    store.publish(DEMO_NETWORK_ID)
    return link
