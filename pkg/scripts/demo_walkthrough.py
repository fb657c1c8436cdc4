#!/usr/bin/env python3
"""Guided tour of the portal: seed the demo network, search for it, grade it,
and roll up the catalog analytics.

By default everything runs in a temporary directory and is thrown away; pass
--data-dir to keep the seeded catalog (and archive state) around, e.g. to
point `fairmet serve` at it afterwards.
"""

import argparse
import tempfile
from datetime import date
from pathlib import Path

from fairmet.analytics import CubeQuery, cube, cube_to_csv, summary_metrics
from fairmet.archive import StubArchive
from fairmet.demo import DEMO_NETWORK_ID, seed_demo
from fairmet.fair import assess, render_text
from fairmet.model import DateRange, LocalEnvironment
from fairmet.search import SearchEngine, SearchQuery
from fairmet.store import CatalogStore


def heading(text: str) -> None:
    print(f"\n== {text} ==")


def run(data_dir: Path) -> None:
    store = CatalogStore(data_dir)
    archive = StubArchive(data_dir / "archive_state.json")

    heading("seed")
    link = seed_demo(store, archive)
    print(f"seeded {DEMO_NETWORK_ID} with archived dataset {link.doi}")

    heading("faceted search: urban networks in RS with data during 2016")
    engine = SearchEngine(store)
    query = SearchQuery(
        country="RS",
        local_environment=LocalEnvironment.URBAN,
        date_range=DateRange(date(2016, 1, 1), date(2016, 12, 31)),
    )
    for result in engine.search(query):
        dois = ", ".join(l.doi for l in result.doi_links if l.doi) or "none"
        print(
            f"{result.network_id}: {result.name} "
            f"({result.site_count} sites, DOI {dois})"
        )

    heading("FAIR assessment")
    record = store.get_record(DEMO_NETWORK_ID)
    report = assess(
        record.network, record.sites, record.sensors, record.dataset_links,
        archive.resolve,
    )
    print(render_text(report))

    heading("catalog analytics")
    summary = summary_metrics(store.snapshot())
    for key in sorted(summary):
        if key == "networks":
            continue
        print(f"{key}: {summary[key]}")

    heading("cube: networks and sites by country x year (CSV)")
    result = cube(store.snapshot(), CubeQuery(
        dimensions=("country", "year"),
        measures=("network_count", "site_count", "dataset_record_sum"),
    ))
    print(cube_to_csv(result), end="")

    print(f"\ncatalog persisted under {data_dir}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--data-dir", type=Path, default=None,
        help="catalog directory to seed (default: a temporary one)",
    )
    args = parser.parse_args()
    if args.data_dir is not None:
        args.data_dir.mkdir(parents=True, exist_ok=True)
        run(args.data_dir)
    else:
        with tempfile.TemporaryDirectory(prefix="fairmet-demo-") as tmp:
            run(Path(tmp))


if __name__ == "__main__":
    main()
