#!/usr/bin/env python3
"""Throughput experiment: ingest a synthetic catalog, then time search and
cube workloads against it.

Networks are generated as interchange documents and pushed through the normal
upsert path, so ingest timings include validation. Sizes default to something
a laptop finishes in seconds; scale up with --networks / --queries.
"""

import argparse
import itertools
import random
import time

from fairmet.analytics import DIMENSIONS, MEASURES, CubeQuery, cube
from fairmet.interchange import canonical_json
from fairmet.model import LocalEnvironment
from fairmet.search import SearchEngine, SearchQuery
from fairmet.store import CatalogStore

COUNTRIES = ("RS", "DE", "AT", "HU", "CZ", "PL")
REGIONS = ("Vojvodina", "Brandenburg", "Styria", "Plains", "Highlands")
VARIABLES = ("air_temperature", "relative_humidity", "wind_speed", "precipitation_sum")
WORDS = (
    "urban", "canopy", "flux", "boundary", "layer", "heat", "island",
    "turbulence", "profile", "campaign",
)


def synthetic_document(rng: random.Random, index: int) -> dict:
    nid = f"net-b{index:05d}"
    start_year = rng.randint(2010, 2019)
    years = rng.randint(1, 4)
    coverage = {"start": f"{start_year}-01-01", "end": f"{start_year + years - 1}-12-31"}
    sites = []
    for s in range(rng.randint(1, 5)):
        site_id = f"{nid}-s{s}"
        sites.append({
            "id": site_id,
            "network_id": nid,
            "name": f"Station {index}-{s}",
            "location": {
                "latitude_deg": round(rng.uniform(40.0, 55.0), 4),
                "longitude_deg": round(rng.uniform(10.0, 25.0), 4),
                "elevation_m": round(rng.uniform(50.0, 900.0), 1),
            },
            "local_environment": rng.choice(list(LocalEnvironment)).value,
            "installation_coverage": coverage,
            "surface_description": "",
            "height_datum_note": None,
            "sensors": [{
                "id": f"{site_id}-z{z}",
                "site_id": site_id,
                "variable": rng.choice(VARIABLES),
                "units": "Cel",
                "sampling_interval_s": rng.choice((600, 1800, 3600)),
                "height_above_ground_m": 2.0,
                "manufacturer_model": None,
            } for z in range(rng.randint(1, 3))],
        })
    return {
        "network": {
            "id": nid,
            "name": f"Synthetic Network {index}",
            "country": rng.choice(COUNTRIES),
            "region": rng.choice(REGIONS),
            "description": "Synthetic benchmark network with "
                           + " ".join(rng.sample(WORDS, 4)) + " observations.",
            "owner_institution": "Benchmark Institute",
            "local_environment": rng.choice(list(LocalEnvironment)).value,
            "operational_coverage": coverage,
            "keywords": rng.sample(WORDS, 3),
            "contacts": [],
            "license": "CC-BY-4.0",
            "provenance_note": "generated",
            "related_links": [],
            "published": True,
        },
        "sites": sites,
        "dataset_links": [],
    }


def synthetic_query(rng: random.Random) -> SearchQuery:
    kwargs = {}
    if rng.random() < 0.5:
        kwargs["country"] = rng.choice(COUNTRIES)
    if rng.random() < 0.4:
        kwargs["local_environment"] = rng.choice(list(LocalEnvironment))
    if rng.random() < 0.5:
        kwargs["keywords"] = tuple(rng.sample(WORDS, rng.randint(1, 3)))
    if rng.random() < 0.3:
        kwargs["region"] = rng.choice(REGIONS)[:4]
    return SearchQuery(**kwargs)


def timed(label: str, fn, *, unit_count: int, unit: str) -> None:
    started = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - started
    rate = unit_count / elapsed if elapsed else float("inf")
    note = f" ({out})" if isinstance(out, str) else ""
    print(f"{label:<22} {elapsed:8.3f}s  {rate:10.0f} {unit}/s{note}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--networks", type=int, default=500)
    parser.add_argument("--queries", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=2016)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    documents = [synthetic_document(rng, i) for i in range(args.networks)]
    store = CatalogStore()

    def ingest() -> None:
        for doc in documents:
            store.upsert_network(doc)

    timed("ingest+validate", ingest, unit_count=args.networks, unit="docs")

    engine = {}
    timed(
        "index build",
        lambda: engine.setdefault("e", SearchEngine(store)),
        unit_count=args.networks, unit="docs",
    )

    queries = [synthetic_query(rng) for _ in range(args.queries)]

    def search_all() -> str:
        hits = sum(len(engine["e"].search(q)) for q in queries)
        return f"{hits} hits"

    timed("search", search_all, unit_count=args.queries, unit="queries")

    snapshot = store.snapshot()
    subsets = [
        combo for r in (1, 2, 3)
        for combo in itertools.combinations(DIMENSIONS, r)
    ]

    def cube_all() -> str:
        rows = sum(
            len(cube(snapshot, CubeQuery(dimensions=d, measures=MEASURES)).rows)
            for d in subsets
        )
        return f"{rows} rows over {len(subsets)} dimension subsets"

    timed("cube sweep", cube_all, unit_count=len(subsets), unit="cubes")

    def export() -> str:
        text = canonical_json({"documents": store.export_catalog()})
        return f"{len(text.encode()) / 1e6:.1f} MB"

    timed("export", export, unit_count=args.networks, unit="docs")


if __name__ == "__main__":
    main()
