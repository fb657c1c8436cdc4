"""Rule engine scoring a network record against the 16 FAIR metrics.

Four metrics per principle (F1-F4, A1-A4, I1-I4, R1-R4), each graded
Yes / Partial / No by a documented decision rule over the record's fields,
with a rationale naming the evidence inspected. Thresholds live in a
versioned rubric so recalibration is explicit. docs/fair_rubric.md spells
out every rule.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from typing import Callable, Optional, Sequence
from urllib.parse import urlparse

from .derive import completeness_checklist, completeness_score
from .model import (
    DatasetLink,
    Network,
    Sensor,
    Site,
    Vocabulary,
    DEFAULT_VOCABULARY,
    is_valid_doi,
)
from .units import units_valid
from .validation import validate_network

REACHABLE = "reachable"
UNREACHABLE = "unreachable"
UNKNOWN = "unknown"

#: Resolver callback: DOI -> one of reachable / unreachable / unknown.
ArchiveProbe = Callable[[str], str]

_DOI_IN_TEXT = re.compile(r"\b10\.[0-9]{4,9}/\S+")

PRINCIPLES = ("F", "A", "I", "R")
PRINCIPLE_NAMES = {
    "F": "Findable",
    "A": "Accessible",
    "I": "Interoperable",
    "R": "Reusable",
}


class MetricId(str, Enum):
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    I1 = "I1"
    I2 = "I2"
    I3 = "I3"
    I4 = "I4"
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"

    @property
    def principle(self) -> str:
        return self.value[0]


class MetricOutcome(Enum):
    """Ordered outcomes: No < Partial < Yes."""

    NO = "No"
    PARTIAL = "Partial"
    YES = "Yes"

    @property
    def rank(self) -> int:
        return {"No": 0, "Partial": 1, "Yes": 2}[self.value]

    def __lt__(self, other: "MetricOutcome") -> bool:
        return self.rank < other.rank

    def __le__(self, other: "MetricOutcome") -> bool:
        return self.rank <= other.rank


class WriteAccessPolicy(str, Enum):
    """How the hosting service treats writes (evidence for metric A3)."""

    AUTHENTICATED = "authenticated"
    AUDITED = "audited"
    OPEN = "open"


@dataclass(frozen=True)
class Rubric:
    """Versioned rubric constants; the categories come from the metric
    definitions, the thresholds are ours."""

    version: str = "1.0"
    completeness_yes: float = 0.8
    completeness_partial: float = 0.4
    description_yes: float = 0.9
    description_partial: float = 0.5
    vocabulary_partial: float = 0.5
    standards_partial: float = 0.5
    open_formats: frozenset[str] = frozenset({
        "csv", "text/csv",
        "netcdf", "nc", "application/x-netcdf",
        "json", "application/json",
        "txt", "text/plain",
    })


DEFAULT_RUBRIC = Rubric()


@dataclass(frozen=True)
class MetricResult:
    outcome: MetricOutcome
    rationale: str


@dataclass(frozen=True)
class FairAssessment:
    network_id: str
    per_metric: dict[MetricId, MetricResult]
    assessed_at: datetime
    rubric_version: str

    def outcome(self, metric: MetricId) -> MetricOutcome:
        return self.per_metric[metric].outcome

    def rollup(self) -> dict[str, tuple[int, int, int]]:
        """Per-principle (yes, partial, no) counts; each sums to 4."""
        tallies = {}
        for principle in PRINCIPLES:
            results = [
                r.outcome for m, r in self.per_metric.items() if m.principle == principle
            ]
            tallies[principle] = (
                sum(1 for o in results if o is MetricOutcome.YES),
                sum(1 for o in results if o is MetricOutcome.PARTIAL),
                sum(1 for o in results if o is MetricOutcome.NO),
            )
        return tallies


def rollup(assessment: FairAssessment) -> dict[str, tuple[int, int, int]]:
    if len(assessment.per_metric) != len(MetricId):
        raise ValueError(
            f"assessment must carry exactly {len(MetricId)} metric outcomes, "
            f"got {len(assessment.per_metric)}"
        )
    return assessment.rollup()


class _Evidence:
    """Shared facts the metric rules consult."""

    def __init__(
        self,
        network: Network,
        sites: Sequence[Site],
        sensors: Sequence[Sensor],
        links: Sequence[DatasetLink],
        vocabulary: Vocabulary,
    ) -> None:
        self.network = network
        self.sites = list(sites)
        self.sensors = list(sensors)
        self.links = list(links)
        self.vocabulary = vocabulary
        self.valid_dois = [l.doi for l in self.links if is_valid_doi(l.doi)]
        self.completeness = completeness_score(network, self.links)
        self.checklist = completeness_checklist(network, self.links)
        self.validation = validate_network(
            network, sites, sensors, links,
            for_publication=network.published, vocabulary=vocabulary,
        )

    @property
    def missing_checklist(self) -> list[str]:
        return [name for name, filled in self.checklist.items() if not filled]


def assess(
    network: Network,
    sites: Sequence[Site] = (),
    sensors: Sequence[Sensor] = (),
    dataset_links: Sequence[DatasetLink] = (),
    archive_probe: Optional[ArchiveProbe] = None,
    *,
    rubric: Rubric = DEFAULT_RUBRIC,
    write_access: WriteAccessPolicy = WriteAccessPolicy.AUTHENTICATED,
    vocabulary: Vocabulary = DEFAULT_VOCABULARY,
    assessed_at: Optional[datetime] = None,
) -> FairAssessment:
    """Evaluate all 16 metrics for one record.

    ``archive_probe`` resolves DOIs for A1; passing ``None`` marks the
    probe as skipped (offline mode), which grades A1 Partial. Probe
    failures grade A1 No rather than raising.
    """
    ev = _Evidence(network, sites, sensors, dataset_links, vocabulary)
    rules: dict[MetricId, Callable[[], MetricResult]] = {
        MetricId.F1: lambda: _f1(ev),
        MetricId.F2: lambda: _f2(ev, rubric),
        MetricId.F3: lambda: _f3(ev),
        MetricId.F4: lambda: _f4(ev),
        MetricId.A1: lambda: _a1(ev, archive_probe),
        MetricId.A2: lambda: _a2(ev),
        MetricId.A3: lambda: _a3(write_access),
        MetricId.A4: lambda: _a4(ev),
        MetricId.I1: lambda: _i1(ev, rubric),
        MetricId.I2: lambda: _i2(ev),
        MetricId.I3: lambda: _i3(ev, rubric),
        MetricId.I4: lambda: _i4(ev),
        MetricId.R1: lambda: _r1(ev, rubric),
        MetricId.R2: lambda: _r2(ev),
        MetricId.R3: lambda: _r3(ev),
        MetricId.R4: lambda: _r4(ev, rubric),
    }
    per_metric = {metric: rule() for metric, rule in rules.items()}
    return FairAssessment(
        network_id=network.id,
        per_metric=per_metric,
        assessed_at=assessed_at or datetime.now(timezone.utc),
        rubric_version=rubric.version,
    )


def _result(outcome: MetricOutcome, rationale: str) -> MetricResult:
    return MetricResult(outcome=outcome, rationale=rationale)


# --------------------------------------------------------------- Findable

def _f1(ev: _Evidence) -> MetricResult:
    if ev.valid_dois:
        return _result(
            MetricOutcome.YES,
            f"{len(ev.valid_dois)} of {len(ev.links)} dataset links carry a "
            f"valid DOI (dataset_links[].doi)",
        )
    if any(l.archive_url for l in ev.links):
        return _result(
            MetricOutcome.PARTIAL,
            "dataset links provide archive URLs but no DOI has been minted "
            "(dataset_links[].archive_url without doi)",
        )
    return _result(
        MetricOutcome.NO, "no dataset links with a persistent identifier"
    )


def _f2(ev: _Evidence, rubric: Rubric) -> MetricResult:
    score = ev.completeness
    detail = (
        "optional-field checklist fully populated"
        if not ev.missing_checklist
        else "unfilled: " + ", ".join(ev.missing_checklist)
    )
    rationale = f"completeness score {score:.2f} ({detail})"
    if score >= rubric.completeness_yes:
        return _result(MetricOutcome.YES, rationale)
    if score >= rubric.completeness_partial:
        return _result(MetricOutcome.PARTIAL, rationale)
    return _result(MetricOutcome.NO, rationale)


def _f3(ev: _Evidence) -> MetricResult:
    if ev.network.published:
        return _result(
            MetricOutcome.YES,
            "record is published, hence discoverable through the search index "
            "(network.published)",
        )
    return _result(
        MetricOutcome.NO, "record is a draft and absent from the search index"
    )


def _f4(ev: _Evidence) -> MetricResult:
    if any(l.doi for l in ev.links):
        return _result(
            MetricOutcome.YES,
            "the metadata record carries the persistent identifier in a "
            "structured field (dataset_links[].doi)",
        )
    free_text = " ".join(
        filter(None, [ev.network.description, ev.network.provenance_note or ""]
               + [l.description for l in ev.links])
    )
    if _DOI_IN_TEXT.search(free_text):
        return _result(
            MetricOutcome.PARTIAL,
            "a DOI appears only in free text, not in a structured field",
        )
    return _result(MetricOutcome.NO, "no persistent identifier in the record")


# ------------------------------------------------------------- Accessible

def _a1(ev: _Evidence, probe: Optional[ArchiveProbe]) -> MetricResult:
    if not ev.links:
        return _result(MetricOutcome.NO, "no dataset links to resolve")
    if probe is None:
        return _result(
            MetricOutcome.PARTIAL, "resolution probe skipped (offline mode)"
        )
    dois = [l.doi for l in ev.links if l.doi]
    if not dois:
        return _result(MetricOutcome.NO, "dataset links carry no DOI to follow")
    for doi in dois:
        try:
            status = probe(doi)
        except Exception as exc:
            return _result(MetricOutcome.NO, f"probe failed for {doi}: {exc}")
        if status != REACHABLE:
            return _result(MetricOutcome.NO, f"DOI {doi} did not resolve ({status})")
    return _result(
        MetricOutcome.YES,
        f"all {len(dois)} DOIs resolve to a reachable landing target",
    )


def _a2(ev: _Evidence) -> MetricResult:
    if not ev.links:
        return _result(MetricOutcome.NO, "no dataset links to retrieve data from")
    bad = [l.archive_url for l in ev.links if not l.archive_url.startswith("https://")]
    if bad:
        return _result(
            MetricOutcome.NO,
            f"archive URL(s) not served over a standard open protocol: {bad[0] or '<empty>'}",
        )
    return _result(
        MetricOutcome.YES, "all archive URLs use https (dataset_links[].archive_url)"
    )


def _a3(write_access: WriteAccessPolicy) -> MetricResult:
    if write_access is WriteAccessPolicy.AUTHENTICATED:
        return _result(
            MetricOutcome.YES, "hosting service enforces authenticated writes"
        )
    if write_access is WriteAccessPolicy.AUDITED:
        return _result(
            MetricOutcome.PARTIAL, "writes are open but audited by the service"
        )
    return _result(MetricOutcome.NO, "service applies no write authentication")


def _a4(ev: _Evidence) -> MetricResult:
    if ev.network.published:
        return _result(
            MetricOutcome.YES,
            "metadata is publicly readable irrespective of data openness "
            "(network.published)",
        )
    return _result(MetricOutcome.NO, "draft metadata is not publicly accessible")


# ---------------------------------------------------------- Interoperable

def _normalize_format(token: str) -> str:
    return token.strip().lower().lstrip(".")


def _i1(ev: _Evidence, rubric: Rubric) -> MetricResult:
    if not ev.links:
        return _result(MetricOutcome.NO, "no dataset links declare a file format")
    formats = [_normalize_format(l.file_format) for l in ev.links]
    open_count = sum(1 for f in formats if f in rubric.open_formats)
    if open_count == len(formats):
        return _result(
            MetricOutcome.YES,
            f"all formats are open ({', '.join(sorted(set(formats)))})",
        )
    if open_count > 0:
        return _result(
            MetricOutcome.PARTIAL,
            f"{open_count} of {len(formats)} dataset formats are open "
            f"(dataset_links[].file_format)",
        )
    return _result(
        MetricOutcome.NO,
        f"no open formats among {', '.join(sorted(set(formats)))}",
    )


def _i2(ev: _Evidence) -> MetricResult:
    if ev.validation.errors:
        codes = ", ".join(i.code for i in ev.validation.errors)
        return _result(MetricOutcome.NO, f"schema validation errors: {codes}")
    if ev.validation.warnings:
        codes = ", ".join(i.code for i in ev.validation.warnings)
        return _result(MetricOutcome.PARTIAL, f"schema validation warnings: {codes}")
    return _result(
        MetricOutcome.YES,
        "record validates against the station-metadata schema with no findings",
    )


def _i3(ev: _Evidence, rubric: Rubric) -> MetricResult:
    terms = sorted(ev.network.keywords) + [z.variable for z in ev.sensors]
    if not terms:
        return _result(
            MetricOutcome.NO, "no keywords or sensor variables use a vocabulary"
        )
    hits = sum(1 for t in terms if t in ev.vocabulary)
    rationale = (
        f"{hits} of {len(terms)} keywords and sensor variables come from the "
        f"controlled vocabulary"
    )
    if hits == len(terms):
        return _result(MetricOutcome.YES, rationale)
    if hits / len(terms) >= rubric.vocabulary_partial:
        return _result(MetricOutcome.PARTIAL, rationale)
    return _result(MetricOutcome.NO, rationale)


def _well_formed_url(url: str) -> bool:
    parsed = urlparse(url)
    return parsed.scheme in ("http", "https") and bool(parsed.netloc)


def _i4(ev: _Evidence) -> MetricResult:
    links = ev.network.related_links
    if not links:
        return _result(MetricOutcome.NO, "no qualified references to related data")
    malformed = [l for l in links if not _well_formed_url(l)]
    if malformed:
        return _result(
            MetricOutcome.PARTIAL,
            f"related links present but {len(malformed)} of {len(links)} are "
            f"not well-formed URLs (network.related_links)",
        )
    return _result(
        MetricOutcome.YES,
        f"all {len(links)} related links are well-formed URLs",
    )


# --------------------------------------------------------------- Reusable

def _r1(ev: _Evidence, rubric: Rubric) -> MetricResult:
    score = ev.completeness
    unitless = [z.id for z in ev.sensors if not z.units.strip()]
    if score >= rubric.description_yes and not unitless:
        return _result(
            MetricOutcome.YES,
            f"completeness {score:.2f} and every sensor declares units",
        )
    if score >= rubric.description_partial:
        detail = f"; {len(unitless)} sensor(s) lack units" if unitless else ""
        return _result(MetricOutcome.PARTIAL, f"completeness {score:.2f}{detail}")
    return _result(MetricOutcome.NO, f"completeness {score:.2f} is too sparse")


def _r2(ev: _Evidence) -> MetricResult:
    network_licensed = bool(ev.network.license)
    link_licenses = [bool(l.license) for l in ev.links]
    if network_licensed and ev.links and all(link_licenses):
        return _result(
            MetricOutcome.YES,
            "license present on the network and on every dataset link",
        )
    if network_licensed or any(link_licenses):
        return _result(
            MetricOutcome.PARTIAL,
            "license present on some records but not all "
            "(network.license, dataset_links[].license)",
        )
    return _result(MetricOutcome.NO, "no usage license anywhere on the record")


def _r3(ev: _Evidence) -> MetricResult:
    has_provenance = bool(ev.network.provenance_note)
    has_owner = bool(ev.network.owner_institution.strip())
    if has_provenance and has_owner:
        return _result(
            MetricOutcome.YES,
            "provenance note and owning institution both recorded "
            "(network.provenance_note, network.owner_institution)",
        )
    if has_provenance or has_owner:
        present = "provenance_note" if has_provenance else "owner_institution"
        return _result(MetricOutcome.PARTIAL, f"only {present} is recorded")
    return _result(MetricOutcome.NO, "neither provenance nor ownership recorded")


def _r4(ev: _Evidence, rubric: Rubric) -> MetricResult:
    if not ev.sensors:
        return _result(MetricOutcome.NO, "no sensor metadata to hold to standards")
    checks = 0
    passed = 0
    for sensor in ev.sensors:
        checks += 2
        passed += int(units_valid(sensor.units))
        passed += int(sensor.variable in ev.vocabulary)
    rationale = (
        f"{passed} of {checks} unit/vocabulary checks pass across "
        f"{len(ev.sensors)} sensors"
    )
    if passed == checks:
        return _result(MetricOutcome.YES, rationale)
    if passed / checks >= rubric.standards_partial:
        return _result(MetricOutcome.PARTIAL, rationale)
    return _result(MetricOutcome.NO, rationale)


# ----------------------------------------------------------- serialization

def assessment_to_dict(assessment: FairAssessment) -> dict:
    tallies = assessment.rollup()
    return {
        "network_id": assessment.network_id,
        "rubric_version": assessment.rubric_version,
        "assessed_at": assessment.assessed_at.isoformat(),
        "metrics": {
            m.value: {"outcome": r.outcome.value, "rationale": r.rationale}
            for m, r in sorted(assessment.per_metric.items(), key=lambda kv: kv[0].value)
        },
        "rollup": {
            p: {"yes": t[0], "partial": t[1], "no": t[2]} for p, t in tallies.items()
        },
    }


def assessment_from_dict(payload: dict) -> FairAssessment:
    per_metric = {
        MetricId(mid): MetricResult(
            outcome=MetricOutcome(entry["outcome"]), rationale=entry.get("rationale", "")
        )
        for mid, entry in payload["metrics"].items()
    }
    return FairAssessment(
        network_id=payload["network_id"],
        per_metric=per_metric,
        assessed_at=datetime.fromisoformat(payload["assessed_at"]),
        rubric_version=payload.get("rubric_version", "unknown"),
    )


def render_text(assessment: FairAssessment) -> str:
    """Plain-text report: one line per metric, then one per principle."""
    lines = [
        f"FAIR assessment for network {assessment.network_id} "
        f"(rubric {assessment.rubric_version})"
    ]
    for metric in MetricId:
        result = assessment.per_metric[metric]
        lines.append(f"{metric.value:<3} {result.outcome.value:<8} {result.rationale}")
    for principle, (yes, partial, no) in assessment.rollup().items():
        lines.append(
            f"{PRINCIPLE_NAMES[principle]:<14} {yes} Yes / {partial} Partial / {no} No"
        )
    return "\n".join(lines)
