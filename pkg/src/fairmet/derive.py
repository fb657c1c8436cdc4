"""Derivation helpers over the metadata model.

Pure functions used by validation, search and the FAIR assessor:
sampling-instant counts for a coverage window, the derived seasonality
facet, and the optional-field completeness score.
"""

from __future__ import annotations

from datetime import date
from typing import Callable, Iterable, Optional

from .model import DatasetLink, DateRange, Network, Season, SEASON_BY_MONTH

SECONDS_PER_DAY = 86400


def expected_record_count(coverage: DateRange, interval_s: int) -> int:
    """Number of sampling instants in the inclusive day span of ``coverage``.

    The count is ``days * (86400 / interval_s)``; the interval must divide a
    day exactly, so that every day holds the same whole number of samples
    (e.g. hourly sampling over 2016-2017 gives 731 * 24 = 17544).

    Raises ``ValueError`` for a malformed coverage, a non-positive interval,
    or an interval that does not divide 86400 seconds.
    """
    if not coverage.is_valid():
        raise ValueError(f"coverage start {coverage.start} is after end {coverage.end}")
    if interval_s <= 0:
        raise ValueError(f"sampling interval must be positive, got {interval_s}")
    if SECONDS_PER_DAY % interval_s != 0:
        raise ValueError(
            f"sampling interval {interval_s} s does not divide a day "
            f"(86400 s); per-day record counts would not be whole"
        )
    return coverage.days * (SECONDS_PER_DAY // interval_s)


def season_of(day: date) -> Season:
    """Meteorological season of a calendar day (DJF/MAM/JJA/SON)."""
    return SEASON_BY_MONTH[day.month]


def derive_seasonality(coverage: DateRange) -> frozenset[Season]:
    """Every meteorological season with at least one calendar day in coverage.

    Seasons are unions of whole months, so it suffices to walk the months
    touched by the span.
    """
    if not coverage.is_valid():
        raise ValueError(f"coverage start {coverage.start} is after end {coverage.end}")
    if coverage.days >= 366:
        return frozenset(Season)
    seasons = set()
    year, month = coverage.start.year, coverage.start.month
    while (year, month) <= (coverage.end.year, coverage.end.month):
        seasons.add(SEASON_BY_MONTH[month])
        month += 1
        if month == 13:
            year, month = year + 1, 1
    return frozenset(seasons)


def _links_all(links: Iterable[DatasetLink], pred: Callable[[DatasetLink], bool]) -> bool:
    links = list(links)
    return bool(links) and all(pred(link) for link in links)


#: Fixed optional-field checklist behind the completeness score. Each entry is
#: (name, predicate over (network, dataset_links)); the score is the filled
#: fraction. The list is versioned in docs/interchange_schema.md -- changing
#: it changes FAIR metrics F2 and R1.
OPTIONAL_FIELD_CHECKLIST: tuple[tuple[str, Callable[[Network, list[DatasetLink]], bool]], ...] = (
    ("network.region", lambda n, _: bool(n.region.strip())),
    ("network.keywords", lambda n, _: bool(n.keywords)),
    ("network.contacts", lambda n, _: bool(n.contacts)),
    ("network.license", lambda n, _: bool(n.license)),
    ("network.provenance_note", lambda n, _: bool(n.provenance_note)),
    ("network.related_links", lambda n, _: bool(n.related_links)),
    ("dataset_links[].license", lambda _, ls: _links_all(ls, lambda l: bool(l.license))),
    ("dataset_links[].declared_record_count",
     lambda _, ls: _links_all(ls, lambda l: l.declared_record_count is not None)),
)


def completeness_checklist(
    network: Network, dataset_links: Iterable[DatasetLink]
) -> dict[str, bool]:
    """Per-item outcome of the optional-field checklist."""
    links = list(dataset_links)
    return {name: pred(network, links) for name, pred in OPTIONAL_FIELD_CHECKLIST}


def completeness_score(network: Network, dataset_links: Iterable[DatasetLink]) -> float:
    """Filled fraction of the optional-field checklist, in [0, 1]."""
    outcomes = completeness_checklist(network, dataset_links)
    return sum(outcomes.values()) / len(outcomes)


def dataset_coverage(links: Iterable[DatasetLink]) -> Optional[DateRange]:
    """Combined min..max temporal coverage over dataset links, if any."""
    links = list(links)
    if not links:
        return None
    return DateRange(
        start=min(l.temporal_coverage.start for l in links),
        end=max(l.temporal_coverage.end for l in links),
    )
