"""Dimensional aggregation over catalog snapshots.

Answers dashboard questions like "how many urban networks per country per
year" by grouping published networks along one to three dimensions. All
functions read a single immutable :class:`~fairmet.store.CatalogSnapshot`,
so results are internally consistent and safe under concurrency.

The ``year`` dimension buckets a network into every calendar year its
operational coverage overlaps, so one network can appear in several rows;
the totals row deduplicates and counts each network once.
"""

from __future__ import annotations

import io
import csv
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .model import DatasetLink, Network, Sensor, Site
from .search import SearchQuery, network_matches
from .store import CatalogSnapshot

DIMENSIONS = ("country", "local_environment", "year", "network")
MEASURES = (
    "network_count",
    "site_count",
    "mean_sites_per_network",
    "sensor_count",
    "sensor_type_histogram",
    "dataset_record_sum",
)

#: Additive measures sum exactly from drilldown rows to their rollup parent.
ADDITIVE_MEASURES = frozenset(
    {"network_count", "site_count", "sensor_count", "dataset_record_sum"}
)


class CubeError(ValueError):
    pass


@dataclass(frozen=True)
class CubeQuery:
    dimensions: tuple[str, ...]
    measures: tuple[str, ...]
    filter: Optional[SearchQuery] = None


@dataclass(frozen=True)
class CubeRow:
    key: tuple
    measures: dict
    empty: bool = False


@dataclass(frozen=True)
class CubeResult:
    dimensions: tuple[str, ...]
    measure_names: tuple[str, ...]
    rows: tuple[CubeRow, ...] = ()
    totals: CubeRow = field(default_factory=lambda: CubeRow(key=(), measures={}))


def validate_cube_query(query: CubeQuery) -> None:
    if not 1 <= len(query.dimensions) <= 3:
        raise CubeError("between one and three dimensions required")
    if len(set(query.dimensions)) != len(query.dimensions):
        raise CubeError("duplicate dimensions")
    for dim in query.dimensions:
        if dim not in DIMENSIONS:
            raise CubeError(f"unknown dimension {dim!r}")
    if not query.measures:
        raise CubeError("at least one measure required")
    for measure in query.measures:
        if measure not in MEASURES:
            raise CubeError(f"unknown measure {measure!r}")


@dataclass(frozen=True)
class _Member:
    network: Network
    sites: tuple[Site, ...]
    sensors: tuple[Sensor, ...]
    links: tuple[DatasetLink, ...]


def _members(snapshot: CatalogSnapshot, filter_query: Optional[SearchQuery]) -> list[_Member]:
    members = []
    for network_id in snapshot.visible_network_ids():
        network = snapshot.networks[network_id]
        sites = snapshot.sites_of(network_id)
        sensors = snapshot.sensors_of_network(network_id)
        links = snapshot.links_of(network_id)
        if filter_query is not None and not network_matches(
            network, sites, sensors, filter_query
        ):
            continue
        members.append(_Member(network, sites, sensors, links))
    return members


def _dimension_values(member: _Member, dimension: str) -> tuple:
    if dimension == "country":
        return (member.network.country,)
    if dimension == "local_environment":
        return (member.network.local_environment.value,)
    if dimension == "network":
        return (member.network.id,)
    if dimension == "year":
        coverage = member.network.operational_coverage
        return tuple(range(coverage.start.year, coverage.end.year + 1))
    raise CubeError(f"unknown dimension {dimension!r}")


def _group_keys(member: _Member, dimensions: tuple[str, ...]) -> list[tuple]:
    keys: list[tuple] = [()]
    for dimension in dimensions:
        values = _dimension_values(member, dimension)
        keys = [key + (value,) for key in keys for value in values]
    return keys


def _measure_values(members: list[_Member], measure_names: tuple[str, ...]) -> dict:
    site_count = sum(len(m.sites) for m in members)
    network_count = len(members)
    values: dict = {}
    for name in measure_names:
        if name == "network_count":
            values[name] = network_count
        elif name == "site_count":
            values[name] = site_count
        elif name == "mean_sites_per_network":
            values[name] = site_count / network_count if network_count else 0.0
        elif name == "sensor_count":
            values[name] = sum(len(m.sensors) for m in members)
        elif name == "sensor_type_histogram":
            histogram: Counter = Counter()
            for member in members:
                histogram.update(sensor.variable for sensor in member.sensors)
            values[name] = dict(sorted(histogram.items()))
        elif name == "dataset_record_sum":
            values[name] = sum(
                link.declared_record_count or 0 for m in members for link in m.links
            )
        else:
            raise CubeError(f"unknown measure {name!r}")
    return values


def cube(snapshot: CatalogSnapshot, query: CubeQuery) -> CubeResult:
    """Group-by over published networks passing the filter.

    Rows are ordered by their dimension value tuple; the totals row
    aggregates the deduplicated filtered population.
    """
    validate_cube_query(query)
    members = _members(snapshot, query.filter)
    groups: dict[tuple, list[_Member]] = {}
    for member in members:
        for key in _group_keys(member, query.dimensions):
            groups.setdefault(key, []).append(member)
    rows = tuple(
        CubeRow(key=key, measures=_measure_values(groups[key], query.measures))
        for key in sorted(groups)
    )
    totals = CubeRow(
        key=(),
        measures=_measure_values(members, query.measures),
        empty=not members,
    )
    return CubeResult(
        dimensions=query.dimensions,
        measure_names=query.measures,
        rows=rows,
        totals=totals,
    )


def summary_metrics(snapshot: CatalogSnapshot) -> dict:
    """Single snapshot-consistent report backing the dashboard tiles."""
    members = _members(snapshot, None)
    network_count = len(members)
    site_count = sum(len(m.sites) for m in members)
    sensor_histogram: Counter = Counter()
    for member in members:
        sensor_histogram.update(sensor.variable for sensor in member.sensors)
    starts = [m.network.operational_coverage.start for m in members]
    ends = [m.network.operational_coverage.end for m in members]
    per_network = []
    for member in sorted(members, key=lambda m: m.network.id):
        sensors_by_site: dict[str, Counter] = {}
        for sensor in member.sensors:
            sensors_by_site.setdefault(sensor.site_id, Counter())[sensor.variable] += 1
        per_network.append(
            {
                "id": member.network.id,
                "name": member.network.name,
                "site_count": len(member.sites),
                "sensor_count": len(member.sensors),
                "dataset_record_sum": sum(
                    link.declared_record_count or 0 for link in member.links
                ),
                "coverage": {
                    "start": member.network.operational_coverage.start.isoformat(),
                    "end": member.network.operational_coverage.end.isoformat(),
                },
                "sites": [
                    {
                        "id": site.id,
                        "name": site.name,
                        "sensor_count": sum(
                            sensors_by_site.get(site.id, Counter()).values()
                        ),
                        "sensor_types": dict(
                            sorted(sensors_by_site.get(site.id, Counter()).items())
                        ),
                    }
                    for site in member.sites
                ],
            }
        )
    return {
        "network_count": network_count,
        "site_count": site_count,
        "mean_sites_per_network": site_count / network_count if network_count else 0.0,
        "sensor_count": sum(sensor_histogram.values()),
        "sensor_type_histogram": dict(sorted(sensor_histogram.items())),
        "dataset_record_sum": sum(
            link.declared_record_count or 0 for m in members for link in m.links
        ),
        "coverage_span": {
            "start": min(starts).isoformat(),
            "end": max(ends).isoformat(),
        }
        if members
        else None,
        "empty": not members,
        "networks": per_network,
    }


def _csv_cell(value) -> str:
    if isinstance(value, dict):
        return ";".join(f"{k}={v}" for k, v in sorted(value.items()))
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def cube_to_csv(result: CubeResult) -> str:
    """Tabular text form; the totals row marks every dimension cell with *."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(list(result.dimensions) + list(result.measure_names))
    for row in result.rows:
        writer.writerow(
            [_csv_cell(v) for v in row.key]
            + [_csv_cell(row.measures[m]) for m in result.measure_names]
        )
    writer.writerow(
        ["*"] * len(result.dimensions)
        + [_csv_cell(result.totals.measures[m]) for m in result.measure_names]
    )
    return buffer.getvalue()


def cube_to_dict(result: CubeResult) -> dict:
    return {
        "dimensions": list(result.dimensions),
        "measures": list(result.measure_names),
        "rows": [
            {"key": list(row.key), "measures": row.measures} for row in result.rows
        ],
        "totals": {
            "key": [],
            "measures": result.totals.measures,
            "empty": result.totals.empty,
        },
    }
