"""Assessment rule engine: one block per metric, then whole-record scenarios."""

import datetime as dt

import pytest

from fairmet.fair import (
    DEFAULT_RUBRIC,
    REACHABLE,
    UNREACHABLE,
    FairAssessment,
    MetricId,
    MetricOutcome,
    WriteAccessPolicy,
    assess,
    assessment_from_dict,
    assessment_to_dict,
    render_text,
    rollup,
)
from fairmet.model import Contact

from fixtures import (
    all_evidence_record,
    empty_links_record,
    make_link,
    make_network,
    make_sensor,
    make_site,
    partial_evidence_record,
)

YES = MetricOutcome.YES
PARTIAL = MetricOutcome.PARTIAL
NO = MetricOutcome.NO


def outcome_of(metric, network, sites=(), sensors=(), links=(), probe=None, **kw):
    return assess(network, sites, sensors, links, probe, **kw).outcome(metric)


def reachable_probe(doi: str) -> str:
    return REACHABLE


class TestFindable:
    def test_f1_doi_yes(self):
        network = make_network()
        link = make_link(network, doi="10.5072/portal.9")
        assert outcome_of(MetricId.F1, network, links=(link,)) is YES

    def test_f1_url_only_partial(self):
        network = make_network()
        link = make_link(network, doi=None)
        assert outcome_of(MetricId.F1, network, links=(link,)) is PARTIAL

    def test_f1_no_links_no(self):
        assert outcome_of(MetricId.F1, make_network()) is NO

    def test_f2_bands(self):
        bare = make_network(region="")
        assert outcome_of(MetricId.F2, bare) is NO  # 0 of 8
        half = make_network(
            keywords=frozenset({"fog"}),
            contacts=(Contact(name="N", role="r", email="n@example.org"),),
            license="CC-BY-4.0",
        )
        assert outcome_of(MetricId.F2, half) is PARTIAL  # 4 of 8
        nearly = make_network(
            keywords=frozenset({"fog"}),
            contacts=(Contact(name="N", role="r", email="n@example.org"),),
            license="CC-BY-4.0",
            provenance_note="Digitized from logbooks.",
            related_links=("https://example.org/about",),
        )
        link = make_link(nearly, license="CC-BY-4.0", declared_record_count=None)
        assert outcome_of(MetricId.F2, nearly, links=(link,)) is YES  # 7 of 8

    def test_f3_follows_published_flag(self):
        assert outcome_of(MetricId.F3, make_network(published=True)) is YES
        assert outcome_of(MetricId.F3, make_network(published=False)) is NO

    def test_f4_structured_vs_free_text(self):
        network = make_network()
        minted = make_link(network, doi="10.5072/portal.3")
        assert outcome_of(MetricId.F4, network, links=(minted,)) is YES
        in_text = make_network(description="Data published under 10.1234/abc.def in 2020.")
        assert outcome_of(MetricId.F4, in_text) is PARTIAL
        assert outcome_of(MetricId.F4, make_network()) is NO


class TestAccessible:
    def test_a1_no_links_beats_offline(self):
        # An empty record grades No even when the probe was skipped.
        assert outcome_of(MetricId.A1, make_network(), probe=None) is NO

    def test_a1_offline_partial(self):
        network = make_network()
        link = make_link(network, doi="10.5072/portal.5")
        assert outcome_of(MetricId.A1, network, links=(link,), probe=None) is PARTIAL

    def test_a1_links_without_doi(self):
        network = make_network()
        link = make_link(network, doi=None)
        assert outcome_of(MetricId.A1, network, links=(link,), probe=reachable_probe) is NO

    def test_a1_resolution(self):
        network = make_network()
        link = make_link(network, doi="10.5072/portal.7")
        assert outcome_of(MetricId.A1, network, links=(link,), probe=reachable_probe) is YES
        assert outcome_of(
            MetricId.A1, network, links=(link,), probe=lambda d: UNREACHABLE
        ) is NO

    def test_a1_probe_exception_grades_no(self):
        network = make_network()
        link = make_link(network, doi="10.5072/portal.8")

        def exploding(doi):
            raise RuntimeError("socket timeout")

        result = assess(network, (), (), (link,), exploding)
        assert result.outcome(MetricId.A1) is NO
        assert "probe failed" in result.per_metric[MetricId.A1].rationale

    def test_a2_https_required(self):
        network = make_network()
        good = make_link(network)
        assert outcome_of(MetricId.A2, network, links=(good,)) is YES
        plain = make_link(network, archive_url="http://archive.example.org/records/9")
        assert outcome_of(MetricId.A2, network, links=(good, plain)) is NO
        assert outcome_of(MetricId.A2, network) is NO

    def test_a3_policy_ladder(self):
        network = make_network()
        assert outcome_of(MetricId.A3, network, write_access=WriteAccessPolicy.AUTHENTICATED) is YES
        assert outcome_of(MetricId.A3, network, write_access=WriteAccessPolicy.AUDITED) is PARTIAL
        assert outcome_of(MetricId.A3, network, write_access=WriteAccessPolicy.OPEN) is NO

    def test_a4_follows_published_flag(self):
        assert outcome_of(MetricId.A4, make_network(published=True)) is YES
        assert outcome_of(MetricId.A4, make_network(published=False)) is NO


class TestInteroperable:
    def test_i1_format_bands(self):
        network = make_network()
        open_links = (make_link(network, file_format=".CSV"), make_link(network, file_format="NetCDF"))
        assert outcome_of(MetricId.I1, network, links=open_links) is YES
        mixed = open_links + (make_link(network, file_format="xlsx"),)
        assert outcome_of(MetricId.I1, network, links=mixed) is PARTIAL
        closed = (make_link(network, file_format="xlsx"),)
        assert outcome_of(MetricId.I1, network, links=closed) is NO
        assert outcome_of(MetricId.I1, network) is NO

    def test_i2_validation_findings(self):
        network = make_network()
        site = make_site(network)
        clean = make_sensor(site)
        assert outcome_of(MetricId.I2, network, sites=(site,), sensors=(clean,)) is YES
        off_vocab = make_sensor(site, variable="vorpal_flux")
        assert outcome_of(MetricId.I2, network, sites=(site,), sensors=(off_vocab,)) is PARTIAL
        stray = make_sensor(make_site(make_network()))
        assert outcome_of(MetricId.I2, network, sensors=(stray,)) is NO

    def test_i3_vocabulary_bands(self):
        network = make_network()
        assert outcome_of(MetricId.I3, network) is NO  # no terms at all
        site = make_site(network)
        in_vocab = make_sensor(site)
        assert outcome_of(MetricId.I3, network, sites=(site,), sensors=(in_vocab,)) is YES
        half = (in_vocab, make_sensor(site, variable="vorpal_flux"))
        assert outcome_of(MetricId.I3, network, sites=(site,), sensors=half) is PARTIAL
        most_out = make_network(keywords=frozenset({"made_up", "also_made_up", "extra"}))
        assert outcome_of(
            MetricId.I3, most_out, sites=(site,), sensors=(in_vocab,)
        ) is NO  # 1 of 4 below the 0.5 bar

    def test_i4_related_link_quality(self):
        assert outcome_of(MetricId.I4, make_network()) is NO
        good = make_network(related_links=("https://example.org/a", "http://example.org/b"))
        assert outcome_of(MetricId.I4, good) is YES
        dodgy = make_network(related_links=("https://example.org/a", "gopher:bad target"))
        assert outcome_of(MetricId.I4, dodgy) is PARTIAL


class TestReusable:
    def test_r1_needs_rich_description_and_units(self):
        full = all_evidence_record()
        assert assess(
            full.network, full.sites, full.sensors, full.dataset_links, reachable_probe
        ).outcome(MetricId.R1) is YES
        half = make_network(
            keywords=frozenset({"fog"}),
            contacts=(Contact(name="N", role="r", email="n@example.org"),),
            license="CC-BY-4.0",
        )
        assert outcome_of(MetricId.R1, half) is PARTIAL
        assert outcome_of(MetricId.R1, make_network(region="")) is NO

    def test_r1_unitless_sensor_blocks_yes(self):
        record = all_evidence_record()
        site = record.sites[0]
        unitless = make_sensor(site, units="   ")
        result = assess(
            record.network, record.sites, record.sensors + (unitless,),
            record.dataset_links, reachable_probe,
        )
        assert result.outcome(MetricId.R1) is PARTIAL
        assert "lack units" in result.per_metric[MetricId.R1].rationale

    def test_r2_license_coverage(self):
        network = make_network(license="CC-BY-4.0")
        licensed = make_link(network, license="CC-BY-4.0")
        unlicensed = make_link(network, license=None)
        assert outcome_of(MetricId.R2, network, links=(licensed,)) is YES
        assert outcome_of(MetricId.R2, network, links=(licensed, unlicensed)) is PARTIAL
        # Network license alone, with no dataset links, is not full coverage.
        assert outcome_of(MetricId.R2, network) is PARTIAL
        assert outcome_of(MetricId.R2, make_network(license=None)) is NO

    def test_r3_provenance_and_ownership(self):
        both = make_network(provenance_note="Started 1999.")
        assert outcome_of(MetricId.R3, both) is YES
        only_owner = make_network()
        result = assess(only_owner)
        assert result.outcome(MetricId.R3) is PARTIAL
        assert "owner_institution" in result.per_metric[MetricId.R3].rationale
        neither = make_network(owner_institution="  ")
        assert outcome_of(MetricId.R3, neither) is NO

    def test_r4_sensor_standard_checks(self):
        network = make_network()
        site = make_site(network)
        assert outcome_of(MetricId.R4, network) is NO
        good = make_sensor(site)
        assert outcome_of(MetricId.R4, network, sites=(site,), sensors=(good,)) is YES
        half = make_sensor(site, variable="vorpal_flux")  # units fine, term not
        assert outcome_of(MetricId.R4, network, sites=(site,), sensors=(half,)) is PARTIAL
        bad = make_sensor(site, variable="vorpal_flux", units="furlongs")
        assert outcome_of(MetricId.R4, network, sites=(site,), sensors=(bad,)) is NO


class TestWholeRecordScenarios:
    def test_partial_evidence_rollup(self):
        record = partial_evidence_record()
        result = assess(
            record.network, record.sites, record.sensors, record.dataset_links,
            None, write_access=WriteAccessPolicy.AUDITED,
        )
        assert result.rollup() == {
            "F": (2, 2, 0),
            "A": (2, 2, 0),
            "I": (1, 3, 0),
            "R": (2, 2, 0),
        }
        interoperable_yes = [
            m for m in MetricId
            if m.principle == "I" and result.outcome(m) is YES
        ]
        assert interoperable_yes == [MetricId.I2]

    def test_all_evidence_rollup(self):
        record = all_evidence_record()
        result = assess(
            record.network, record.sites, record.sensors, record.dataset_links,
            reachable_probe,
        )
        assert all(r.outcome is YES for r in result.per_metric.values())
        assert result.rollup() == {p: (4, 0, 0) for p in "FAIR"}

    def test_empty_links_rollup(self):
        record = empty_links_record()
        result = assess(
            record.network, record.sites, record.sensors, record.dataset_links,
            reachable_probe,
        )
        for metric in (MetricId.F1, MetricId.A1, MetricId.I1, MetricId.R2):
            assert result.outcome(metric) is NO

    def test_every_metric_present(self):
        result = assess(make_network())
        assert set(result.per_metric) == set(MetricId)
        tallies = result.rollup()
        assert set(tallies) == {"F", "A", "I", "R"}
        assert all(sum(t) == 4 for t in tallies.values())

    def test_rollup_rejects_incomplete_assessments(self):
        result = assess(make_network())
        pruned = FairAssessment(
            network_id=result.network_id,
            per_metric={MetricId.F1: result.per_metric[MetricId.F1]},
            assessed_at=result.assessed_at,
            rubric_version=result.rubric_version,
        )
        with pytest.raises(ValueError):
            rollup(pruned)


class TestSerialization:
    def test_outcome_ordering(self):
        assert NO < PARTIAL < YES
        assert max([PARTIAL, NO, YES]) is YES

    def test_principle_of_metric(self):
        assert MetricId.F1.principle == "F"
        assert MetricId.I4.principle == "I"

    def test_dict_round_trip(self):
        record = partial_evidence_record()
        when = dt.datetime(2026, 8, 23, 12, 0, tzinfo=dt.timezone.utc)
        result = assess(
            record.network, record.sites, record.sensors, record.dataset_links,
            None, write_access=WriteAccessPolicy.AUDITED, assessed_at=when,
        )
        payload = assessment_to_dict(result)
        assert payload["network_id"] == record.network.id
        assert payload["rubric_version"] == DEFAULT_RUBRIC.version
        assert list(payload["metrics"]) == sorted(m.value for m in MetricId)
        assert payload["rollup"]["I"] == {"yes": 1, "partial": 3, "no": 0}
        again = assessment_from_dict(payload)
        assert again.per_metric == result.per_metric
        assert again.assessed_at == when

    def test_render_text_shape(self):
        result = assess(make_network(id="net-render"))
        text = render_text(result)
        lines = text.splitlines()
        assert len(lines) == 1 + 16 + 4
        assert "net-render" in lines[0]
        assert lines[1].startswith("F1 ")
        assert any(line.startswith("Findable") for line in lines)
        assert any(line.startswith("Reusable") for line in lines)
        for line in lines[1:17]:
            assert line.split()[1] in {"Yes", "Partial", "No"}
