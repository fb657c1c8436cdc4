"""Demo catalog content and the one-shot seeding routine."""

import datetime as dt

from fairmet.analytics import summary_metrics
from fairmet.archive import REACHABLE, StubArchive
from fairmet.demo import (
    DEMO_COVERAGE,
    DEMO_NETWORK_ID,
    DEMO_RECORD_COUNT,
    demo_record,
    seed_demo,
)
from fairmet.derive import expected_record_count
from fairmet.model import DateRange, LocalEnvironment
from fairmet.search import SearchEngine, SearchQuery
from fairmet.store import CatalogStore
from fairmet.validation import validate_network


class TestDemoRecord:
    def test_shape(self):
        record = demo_record()
        assert record.network.id == DEMO_NETWORK_ID
        assert record.network.name == "Novi Sad Urban Network"
        assert record.network.country == "RS"
        assert record.network.local_environment is LocalEnvironment.URBAN
        assert record.network.operational_coverage == DEMO_COVERAGE
        assert len(record.sites) == 12
        assert len(record.sensors) == 12
        assert all(s.local_environment is LocalEnvironment.URBAN for s in record.sites)
        assert {z.variable for z in record.sensors} == {"air_temperature"}
        assert {z.units for z in record.sensors} == {"Cel"}
        assert {z.sampling_interval_s for z in record.sensors} == {3600}

    def test_sites_cluster_around_the_city(self):
        record = demo_record()
        for site in record.sites:
            assert 45.1 <= site.location.latitude_deg <= 45.4
            assert 19.6 <= site.location.longitude_deg <= 20.1

    def test_expected_count_for_two_hourly_years(self):
        assert DEMO_RECORD_COUNT == 17_544
        assert expected_record_count(DEMO_COVERAGE, 3600) == DEMO_RECORD_COUNT

    def test_validates_at_publication_grade(self):
        record = demo_record()
        report = validate_network(
            record.network, record.sites, record.sensors, record.dataset_links,
            for_publication=True,
        )
        assert report.ok


class TestSeeding:
    def test_seed_publishes_with_doi_link(self, tmp_path):
        store = CatalogStore(tmp_path)
        archive = StubArchive()
        link = seed_demo(store, archive)
        network = store.get_network(DEMO_NETWORK_ID)
        assert network.published
        assert link.doi == "10.5072/portal.1"
        assert link.declared_record_count == DEMO_RECORD_COUNT
        assert link.sampling_interval_s == 3600
        assert link.file_format == "csv"
        assert archive.resolve(link.doi) == REACHABLE
        assert link.doi in link.archive_url

    def test_seed_twice_changes_nothing(self, tmp_path):
        store = CatalogStore(tmp_path)
        archive = StubArchive()
        first = seed_demo(store, archive)
        revision = store.revision
        second = seed_demo(store, archive)
        assert second.doi == first.doi
        assert store.revision == revision
        assert len(store.list_dataset_links(DEMO_NETWORK_ID)) == 1

    def test_walkthrough_query_finds_demo(self, tmp_path):
        store = CatalogStore(tmp_path)
        seed_demo(store, StubArchive())
        engine = SearchEngine(store)
        results = engine.search(SearchQuery(
            country="RS",
            local_environment=LocalEnvironment.URBAN,
            date_range=DateRange(dt.date(2016, 1, 1), dt.date(2016, 12, 31)),
        ))
        assert [r.network_id for r in results] == [DEMO_NETWORK_ID]
        assert results[0].site_count == 12
        assert any(l.doi for l in results[0].doi_links)

    def test_dashboard_numbers(self, tmp_path):
        store = CatalogStore(tmp_path)
        seed_demo(store, StubArchive())
        summary = summary_metrics(store.snapshot())
        assert summary["network_count"] == 1
        assert summary["site_count"] == 12
        assert summary["mean_sites_per_network"] == 12.0
        assert summary["sensor_type_histogram"] == {"air_temperature": 12}
        assert summary["dataset_record_sum"] == DEMO_RECORD_COUNT
