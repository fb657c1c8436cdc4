"""Invariant checking for network records.

``validate_network`` is total: any input yields a report, never an
exception. Errors block admission to the catalog; warnings are advisory
(they feed FAIR metric I2, which distinguishes clean records from records
carrying warnings).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .countries import is_country_code
from .derive import SECONDS_PER_DAY, expected_record_count
from .model import DatasetLink, Network, Sensor, Site, Vocabulary, DEFAULT_VOCABULARY, is_valid_doi

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class ValidationIssue:
    severity: str  # "error" | "warning"
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...] = ()

    @property
    def errors(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.severity == ERROR)

    @property
    def warnings(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.severity == WARNING)

    @property
    def ok(self) -> bool:
        """True when the record is admissible (no errors; warnings allowed)."""
        return not self.errors

    @property
    def clean(self) -> bool:
        """True when there are no issues at all."""
        return not self.issues

    def __iter__(self):
        return iter(self.issues)

    def summary(self) -> str:
        if self.clean:
            return "ok"
        return "; ".join(f"{i.severity}:{i.code}" for i in self.issues)


class _Collector:
    def __init__(self) -> None:
        self.issues: list[ValidationIssue] = []

    def error(self, code: str, message: str) -> None:
        self.issues.append(ValidationIssue(ERROR, code, message))

    def warning(self, code: str, message: str) -> None:
        self.issues.append(ValidationIssue(WARNING, code, message))


def validate_network(
    network: Network,
    sites: Sequence[Site] = (),
    sensors: Sequence[Sensor] = (),
    dataset_links: Sequence[DatasetLink] = (),
    *,
    for_publication: bool = False,
    vocabulary: Vocabulary = DEFAULT_VOCABULARY,
) -> ValidationReport:
    """Check every model invariant, returning all violations found.

    ``for_publication`` additionally applies the publication gate
    (non-empty description, country and coverage) even if the record is not
    yet flagged published.
    """
    out = _Collector()
    _check_network(out, network, for_publication)
    site_ids = _check_sites(out, network, sites)
    _check_sensors(out, sensors, site_ids, vocabulary)
    _check_dataset_links(out, network, dataset_links)
    return ValidationReport(issues=tuple(out.issues))


def _check_network(out: _Collector, network: Network, for_publication: bool) -> None:
    if not network.id or not str(network.id).strip():
        out.error("network.id.empty", "network id must be non-empty")
    if not network.name.strip():
        out.error("network.name.empty", "network name must be non-empty")
    if not is_country_code(network.country):
        out.error(
            "network.country.invalid",
            f"country {network.country!r} is not an ISO 3166-1 alpha-2 code",
        )
    if not network.operational_coverage.is_valid():
        out.error(
            "network.coverage.inverted",
            f"operational coverage starts {network.operational_coverage.start} "
            f"after end {network.operational_coverage.end}",
        )
    if network.published or for_publication:
        if not network.description.strip():
            out.error(
                "network.publication.description",
                "published networks require a non-empty description",
            )
        # country and coverage presence are re-stated here so the publication
        # gate reads as one rule; malformed values already errored above.


def _check_sites(out: _Collector, network: Network, sites: Sequence[Site]) -> set[str]:
    seen: set[str] = set()
    for site in sites:
        label = site.id or site.name or "<unnamed site>"
        if site.id in seen:
            out.error("site.id.duplicate", f"duplicate site id {site.id!r}")
        seen.add(site.id)
        if site.network_id != network.id:
            out.error(
                "site.network_id.dangling",
                f"site {label} references network {site.network_id!r}, "
                f"expected {network.id!r}",
            )
        if not site.location.in_bounds():
            out.error(
                "site.location.bounds",
                f"site {label} coordinates ({site.location.latitude_deg}, "
                f"{site.location.longitude_deg}) are out of range",
            )
        if not site.installation_coverage.is_valid():
            out.error(
                "site.coverage.inverted",
                f"site {label} installation coverage is inverted",
            )
            continue
        if not network.operational_coverage.is_valid():
            continue
        if network.operational_coverage.contains(site.installation_coverage):
            continue
        if network.operational_coverage.overlaps(site.installation_coverage):
            out.warning(
                "site.coverage.partial_overlap",
                f"site {label} installation coverage extends outside the "
                f"network's operational coverage",
            )
        else:
            out.error(
                "site.coverage.disjoint",
                f"site {label} installation coverage does not overlap the "
                f"network's operational coverage",
            )
    return seen


def _check_sensors(
    out: _Collector,
    sensors: Sequence[Sensor],
    site_ids: set[str],
    vocabulary: Vocabulary,
) -> None:
    seen: set[str] = set()
    for sensor in sensors:
        label = sensor.id or "<unnamed sensor>"
        if sensor.id in seen:
            out.error("sensor.id.duplicate", f"duplicate sensor id {sensor.id!r}")
        seen.add(sensor.id)
        if sensor.site_id not in site_ids:
            out.error(
                "sensor.site_id.dangling",
                f"sensor {label} references unknown site {sensor.site_id!r}",
            )
        if sensor.sampling_interval_s <= 0:
            out.error(
                "sensor.interval.nonpositive",
                f"sensor {label} sampling interval must be > 0, "
                f"got {sensor.sampling_interval_s}",
            )
        if sensor.variable not in vocabulary:
            # Warning, not error: out-of-vocabulary variables degrade the
            # FAIR interoperability metrics but do not block cataloguing.
            out.warning(
                "sensor.variable.vocabulary",
                f"sensor {label} variable {sensor.variable!r} is not in the "
                f"controlled vocabulary",
            )


def _check_dataset_links(
    out: _Collector, network: Network, links: Sequence[DatasetLink]
) -> None:
    seen: set[str] = set()
    for link in links:
        label = link.id or link.doi or link.title or "<unnamed link>"
        if link.id in seen:
            out.error("dataset_link.id.duplicate", f"duplicate dataset link id {link.id!r}")
        seen.add(link.id)
        if link.network_id != network.id:
            out.error(
                "dataset_link.network_id.dangling",
                f"dataset link {label} references network {link.network_id!r}, "
                f"expected {network.id!r}",
            )
        if link.doi is not None and not is_valid_doi(link.doi):
            out.error(
                "dataset_link.doi.malformed",
                f"dataset link {label} DOI {link.doi!r} does not match "
                f"10.<registrant>/<suffix>",
            )
        if not link.temporal_coverage.is_valid():
            out.error(
                "dataset_link.coverage.inverted",
                f"dataset link {label} temporal coverage is inverted",
            )
            continue
        if link.sampling_interval_s <= 0:
            out.error(
                "dataset_link.interval.nonpositive",
                f"dataset link {label} sampling interval must be > 0",
            )
            continue
        if link.declared_record_count is None:
            continue
        if link.declared_record_count < 0:
            out.error(
                "dataset_link.record_count.negative",
                f"dataset link {label} declared record count is negative",
            )
        elif SECONDS_PER_DAY % link.sampling_interval_s != 0:
            out.warning(
                "dataset_link.interval.nondivisible",
                f"dataset link {label} interval {link.sampling_interval_s} s does "
                f"not divide a day; declared record count cannot be verified",
            )
        else:
            expected = expected_record_count(link.temporal_coverage, link.sampling_interval_s)
            if link.declared_record_count != expected:
                out.warning(
                    "dataset_link.record_count.mismatch",
                    f"dataset link {label} declares {link.declared_record_count} "
                    f"records but coverage and interval imply {expected}",
                )


def publication_report(
    network: Network,
    sites: Sequence[Site] = (),
    sensors: Sequence[Sensor] = (),
    dataset_links: Sequence[DatasetLink] = (),
    vocabulary: Vocabulary = DEFAULT_VOCABULARY,
) -> ValidationReport:
    """Validation report at publication grade (gate fields required)."""
    return validate_network(
        network, sites, sensors, dataset_links,
        for_publication=True, vocabulary=vocabulary,
    )


def issues_as_dicts(report: ValidationReport) -> list[dict]:
    return [
        {"severity": i.severity, "code": i.code, "message": i.message}
        for i in report.issues
    ]
