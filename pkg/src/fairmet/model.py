"""Domain types for the observation-network metadata hierarchy.

The catalog describes three levels (network -> site -> sensor) plus the
dataset links that point from metadata to archived data deposits. Types are
frozen dataclasses: values never mutate after construction, and invariant
checking lives in :mod:`fairmet.validation` so that malformed input can be
inspected rather than crashing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date
from enum import Enum
from typing import Iterable, Optional


class LocalEnvironment(str, Enum):
    """Surroundings classification for a network or site."""

    URBAN = "urban"
    SUBURBAN = "suburban"
    RURAL = "rural"


class Season(str, Enum):
    """Meteorological seasons (northern-hemisphere month groupings)."""

    WINTER = "winter"  # DJF
    SPRING = "spring"  # MAM
    SUMMER = "summer"  # JJA
    AUTUMN = "autumn"  # SON


#: Month number -> meteorological season.
SEASON_BY_MONTH = {
    12: Season.WINTER, 1: Season.WINTER, 2: Season.WINTER,
    3: Season.SPRING, 4: Season.SPRING, 5: Season.SPRING,
    6: Season.SUMMER, 7: Season.SUMMER, 8: Season.SUMMER,
    9: Season.AUTUMN, 10: Season.AUTUMN, 11: Season.AUTUMN,
}


#: Seed controlled vocabulary for sensor variables; extensible via config.
DEFAULT_VARIABLE_VOCABULARY = frozenset({
    "air_temperature",
    "relative_humidity",
    "wind_speed",
    "wind_direction",
    "precipitation",
    "global_radiation",
    "soil_temperature",
    "leaf_wetness",
})


#: DOI shape: 10.<registrant>/<suffix>
DOI_PATTERN = re.compile(r"^10\.[0-9]{4,9}(\.[0-9]+)*/\S+$")


def is_valid_doi(doi: Optional[str]) -> bool:
    return bool(doi) and DOI_PATTERN.match(doi) is not None


@dataclass(frozen=True)
class DateRange:
    """Inclusive calendar-day span."""

    start: date
    end: date

    @property
    def days(self) -> int:
        """Number of days in the inclusive span (may be <= 0 if malformed)."""
        return (self.end - self.start).days + 1

    def is_valid(self) -> bool:
        return self.start <= self.end

    def overlaps(self, other: "DateRange") -> bool:
        return self.start <= other.end and other.start <= self.end

    def contains(self, other: "DateRange") -> bool:
        return self.start <= other.start and other.end <= self.end


@dataclass(frozen=True)
class GeoPoint:
    """WGS84 coordinate; latitude in [-90, 90], longitude in [-180, 180]."""

    latitude_deg: float
    longitude_deg: float
    elevation_m: Optional[float] = None

    def in_bounds(self) -> bool:
        return -90.0 <= self.latitude_deg <= 90.0 and -180.0 <= self.longitude_deg <= 180.0


@dataclass(frozen=True)
class Contact:
    name: str
    role: str
    email: str


@dataclass(frozen=True)
class Network:
    """Top-level record describing one observation network."""

    id: str
    name: str
    country: str  # ISO 3166-1 alpha-2
    region: str
    description: str
    owner_institution: str
    local_environment: LocalEnvironment
    operational_coverage: DateRange
    keywords: frozenset[str] = frozenset()
    contacts: tuple[Contact, ...] = ()
    license: Optional[str] = None
    provenance_note: Optional[str] = None
    related_links: tuple[str, ...] = ()
    published: bool = False


@dataclass(frozen=True)
class Site:
    """Station location belonging to a network."""

    id: str
    network_id: str
    name: str
    location: GeoPoint
    local_environment: LocalEnvironment
    installation_coverage: DateRange
    surface_description: Optional[str] = None
    height_datum_note: Optional[str] = None


@dataclass(frozen=True)
class Sensor:
    """Instrument installed at a site, sampling one variable."""

    id: str
    site_id: str
    variable: str
    units: str
    sampling_interval_s: int
    height_above_ground_m: Optional[float] = None
    manufacturer_model: Optional[str] = None


@dataclass(frozen=True)
class DatasetLink:
    """Permanent pointer from catalog metadata to an archived data deposit.

    ``doi`` may be absent while a deposit is pending; when present it must
    match the ``10.<registrant>/<suffix>`` shape.
    """

    id: str
    network_id: str
    archive_url: str
    title: str
    file_format: str
    temporal_coverage: DateRange
    sampling_interval_s: int
    description: str = ""
    doi: Optional[str] = None
    license: Optional[str] = None
    declared_record_count: Optional[int] = None


@dataclass(frozen=True)
class Vocabulary:
    """Controlled vocabulary for sensor variables and record keywords."""

    terms: frozenset[str] = DEFAULT_VARIABLE_VOCABULARY

    def __contains__(self, term: str) -> bool:
        return term in self.terms

    def with_extra(self, extra: Iterable[str]) -> "Vocabulary":
        return Vocabulary(terms=self.terms | frozenset(extra))


DEFAULT_VOCABULARY = Vocabulary()
