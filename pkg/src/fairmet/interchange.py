"""Canonical network-document interchange format.

One document carries one network with its nested sites, sensors and dataset
links (plus, optionally, a stored FAIR assessment and a tombstone flag).
The schema is documented in docs/interchange_schema.md. Serialization is
canonical -- keys sorted, nested collections sorted by id, dates in ISO
form -- so that export -> import -> export is byte-identical.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass
from datetime import date
from typing import Any, Optional

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


class DocumentError(ValueError):
    """Structurally malformed interchange document."""


def fresh_id(prefix: str) -> str:
    """Server-assigned opaque identifier."""
    return f"{prefix}-{uuid.uuid4().hex[:10]}"


@dataclass(frozen=True)
class NetworkRecord:
    """A parsed document: one network plus everything nested under it."""

    network: Network
    sites: tuple[Site, ...] = ()
    sensors: tuple[Sensor, ...] = ()
    dataset_links: tuple[DatasetLink, ...] = ()
    assessment: Optional[dict] = None
    tombstoned: bool = False


# ---------------------------------------------------------------- parsing

def _require(doc: dict, key: str, kind: type, path: str) -> Any:
    if key not in doc or doc[key] is None:
        raise DocumentError(f"{path}.{key} is required")
    value = doc[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or (kind is not bool and isinstance(value, bool)):
        raise DocumentError(f"{path}.{key} must be {kind.__name__}, got {type(value).__name__}")
    return value


def _optional(doc: dict, key: str, kind: type, path: str) -> Any:
    if doc.get(key) is None:
        return None
    return _require(doc, key, kind, path)


def _parse_date(value: Any, path: str) -> date:
    if not isinstance(value, str):
        raise DocumentError(f"{path} must be an ISO date string")
    try:
        return date.fromisoformat(value)
    except ValueError as exc:
        raise DocumentError(f"{path} is not a valid ISO date: {value!r}") from exc


def _parse_range(doc: Any, path: str) -> DateRange:
    if not isinstance(doc, dict):
        raise DocumentError(f"{path} must be an object with start/end")
    if "start" not in doc or "end" not in doc:
        raise DocumentError(f"{path} requires start and end")
    return DateRange(
        start=_parse_date(doc["start"], f"{path}.start"),
        end=_parse_date(doc["end"], f"{path}.end"),
    )


def _parse_environment(value: Any, path: str) -> LocalEnvironment:
    try:
        return LocalEnvironment(value)
    except ValueError as exc:
        allowed = ", ".join(e.value for e in LocalEnvironment)
        raise DocumentError(f"{path} must be one of {allowed}, got {value!r}") from exc


def _parse_geopoint(doc: Any, path: str) -> GeoPoint:
    if not isinstance(doc, dict):
        raise DocumentError(f"{path} must be an object")
    return GeoPoint(
        latitude_deg=_require(doc, "latitude_deg", float, path),
        longitude_deg=_require(doc, "longitude_deg", float, path),
        elevation_m=_optional(doc, "elevation_m", float, path),
    )


def _parse_contacts(value: Any, path: str) -> tuple[Contact, ...]:
    if value is None:
        return ()
    if not isinstance(value, list):
        raise DocumentError(f"{path} must be a list")
    contacts = []
    for i, item in enumerate(value):
        if not isinstance(item, dict):
            raise DocumentError(f"{path}[{i}] must be an object")
        contacts.append(Contact(
            name=_require(item, "name", str, f"{path}[{i}]"),
            role=_require(item, "role", str, f"{path}[{i}]"),
            email=_require(item, "email", str, f"{path}[{i}]"),
        ))
    return tuple(contacts)


def _parse_str_list(value: Any, path: str) -> tuple[str, ...]:
    if value is None:
        return ()
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise DocumentError(f"{path} must be a list of strings")
    return tuple(value)


def parse_document(doc: dict) -> NetworkRecord:
    """Parse one interchange document into model objects.

    Structure problems (missing keys, wrong types, unknown enum values)
    raise ``DocumentError``; value-level invariants are left to
    ``validate_network`` so that a parseable-but-invalid record can still be
    inspected and reported on. Author-supplied ids are kept; missing ids are
    assigned fresh opaque ones (nested sensors then reference the assigned
    site id).
    """
    if not isinstance(doc, dict):
        raise DocumentError("document must be an object")
    if "network" not in doc or not isinstance(doc["network"], dict):
        raise DocumentError("document.network is required")
    ndoc = doc["network"]
    network = Network(
        id=str(ndoc.get("id") or fresh_id("net")),
        name=_require(ndoc, "name", str, "network"),
        country=_require(ndoc, "country", str, "network"),
        region=ndoc.get("region") or "",
        description=ndoc.get("description") or "",
        owner_institution=ndoc.get("owner_institution") or "",
        local_environment=_parse_environment(ndoc.get("local_environment"), "network.local_environment"),
        operational_coverage=_parse_range(ndoc.get("operational_coverage"), "network.operational_coverage"),
        keywords=frozenset(_parse_str_list(ndoc.get("keywords"), "network.keywords")),
        contacts=_parse_contacts(ndoc.get("contacts"), "network.contacts"),
        license=_optional(ndoc, "license", str, "network"),
        provenance_note=_optional(ndoc, "provenance_note", str, "network"),
        related_links=_parse_str_list(ndoc.get("related_links"), "network.related_links"),
        published=bool(ndoc.get("published", False)),
    )

    sites: list[Site] = []
    sensors: list[Sensor] = []
    for i, sdoc in enumerate(doc.get("sites") or []):
        if not isinstance(sdoc, dict):
            raise DocumentError(f"sites[{i}] must be an object")
        path = f"sites[{i}]"
        site = Site(
            id=str(sdoc.get("id") or fresh_id("site")),
            network_id=str(sdoc.get("network_id") or network.id),
            name=_require(sdoc, "name", str, path),
            location=_parse_geopoint(sdoc.get("location"), f"{path}.location"),
            local_environment=_parse_environment(sdoc.get("local_environment"), f"{path}.local_environment"),
            installation_coverage=_parse_range(sdoc.get("installation_coverage"), f"{path}.installation_coverage"),
            surface_description=_optional(sdoc, "surface_description", str, path),
            height_datum_note=_optional(sdoc, "height_datum_note", str, path),
        )
        sites.append(site)
        for j, zdoc in enumerate(sdoc.get("sensors") or []):
            if not isinstance(zdoc, dict):
                raise DocumentError(f"{path}.sensors[{j}] must be an object")
            zpath = f"{path}.sensors[{j}]"
            sensors.append(Sensor(
                id=str(zdoc.get("id") or fresh_id("sen")),
                site_id=str(zdoc.get("site_id") or site.id),
                variable=_require(zdoc, "variable", str, zpath),
                units=zdoc.get("units") or "",
                sampling_interval_s=_require(zdoc, "sampling_interval_s", int, zpath),
                height_above_ground_m=_optional(zdoc, "height_above_ground_m", float, zpath),
                manufacturer_model=_optional(zdoc, "manufacturer_model", str, zpath),
            ))

    links: list[DatasetLink] = []
    for i, ldoc in enumerate(doc.get("dataset_links") or []):
        if not isinstance(ldoc, dict):
            raise DocumentError(f"dataset_links[{i}] must be an object")
        path = f"dataset_links[{i}]"
        links.append(DatasetLink(
            id=str(ldoc.get("id") or fresh_id("dl")),
            network_id=str(ldoc.get("network_id") or network.id),
            doi=_optional(ldoc, "doi", str, path),
            archive_url=ldoc.get("archive_url") or "",
            title=_require(ldoc, "title", str, path),
            license=_optional(ldoc, "license", str, path),
            file_format=_require(ldoc, "file_format", str, path),
            temporal_coverage=_parse_range(ldoc.get("temporal_coverage"), f"{path}.temporal_coverage"),
            sampling_interval_s=_require(ldoc, "sampling_interval_s", int, path),
            declared_record_count=_optional(ldoc, "declared_record_count", int, path),
            description=ldoc.get("description") or "",
        ))

    assessment = doc.get("assessment")
    if assessment is not None and not isinstance(assessment, dict):
        raise DocumentError("assessment must be an object")
    return NetworkRecord(
        network=network,
        sites=tuple(sites),
        sensors=tuple(sensors),
        dataset_links=tuple(links),
        assessment=assessment,
        tombstoned=bool(doc.get("tombstoned", False)),
    )


# ------------------------------------------------------------- serializing

def _range_doc(r: DateRange) -> dict:
    return {"start": r.start.isoformat(), "end": r.end.isoformat()}


def _site_doc(site: Site, sensors: list[Sensor]) -> dict:
    return {
        "id": site.id,
        "network_id": site.network_id,
        "name": site.name,
        "location": {
            "latitude_deg": site.location.latitude_deg,
            "longitude_deg": site.location.longitude_deg,
            "elevation_m": site.location.elevation_m,
        },
        "local_environment": site.local_environment.value,
        "installation_coverage": _range_doc(site.installation_coverage),
        "surface_description": site.surface_description,
        "height_datum_note": site.height_datum_note,
        "sensors": [
            {
                "id": z.id,
                "site_id": z.site_id,
                "variable": z.variable,
                "units": z.units,
                "sampling_interval_s": z.sampling_interval_s,
                "height_above_ground_m": z.height_above_ground_m,
                "manufacturer_model": z.manufacturer_model,
            }
            for z in sorted(sensors, key=lambda z: z.id)
        ],
    }


def _link_doc(link: DatasetLink) -> dict:
    return {
        "id": link.id,
        "network_id": link.network_id,
        "doi": link.doi,
        "archive_url": link.archive_url,
        "title": link.title,
        "license": link.license,
        "file_format": link.file_format,
        "temporal_coverage": _range_doc(link.temporal_coverage),
        "sampling_interval_s": link.sampling_interval_s,
        "declared_record_count": link.declared_record_count,
        "description": link.description,
    }


def network_section(network: Network) -> dict:
    return {
        "id": network.id,
        "name": network.name,
        "country": network.country,
        "region": network.region,
        "description": network.description,
        "owner_institution": network.owner_institution,
        "local_environment": network.local_environment.value,
        "operational_coverage": _range_doc(network.operational_coverage),
        "keywords": sorted(network.keywords),
        "contacts": [
            {"name": c.name, "role": c.role, "email": c.email} for c in network.contacts
        ],
        "license": network.license,
        "provenance_note": network.provenance_note,
        "related_links": list(network.related_links),
        "published": network.published,
    }


def build_document(record: NetworkRecord) -> dict:
    """Canonical document for a record: stable key set, id-sorted lists."""
    by_site: dict[str, list[Sensor]] = {}
    for sensor in record.sensors:
        by_site.setdefault(sensor.site_id, []).append(sensor)
    doc = {
        "network": network_section(record.network),
        "sites": [
            _site_doc(site, by_site.get(site.id, []))
            for site in sorted(record.sites, key=lambda s: s.id)
        ],
        "dataset_links": [
            _link_doc(link) for link in sorted(record.dataset_links, key=lambda l: l.id)
        ],
    }
    if record.assessment is not None:
        doc["assessment"] = record.assessment
    if record.tombstoned:
        doc["tombstoned"] = True
    return doc


def canonical_json(payload: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, newline."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dumps_document(record: NetworkRecord) -> str:
    return canonical_json(build_document(record))


def loads_document(text: str) -> NetworkRecord:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    return parse_document(doc)
