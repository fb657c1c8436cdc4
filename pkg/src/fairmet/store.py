"""Embedded catalog persistence with snapshot isolation.

The whole catalog lives in one canonical JSON file (``catalog.json`` under
the data directory) rewritten atomically on every committed write. Readers
hold an immutable :class:`CatalogSnapshot`; writes are serialized through a
single lock and swap the snapshot reference, so no reader ever observes a
partial write.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Iterable, Optional

from .interchange import (
    DocumentError,
    NetworkRecord,
    build_document,
    canonical_json,
    fresh_id,
    parse_document,
)
from .model import DatasetLink, Network, Sensor, Site, Vocabulary, DEFAULT_VOCABULARY
from .validation import ValidationReport, validate_network

CATALOG_FILENAME = "catalog.json"


class StoreError(Exception):
    pass


class NotFoundError(StoreError):
    pass


class VersionConflictError(StoreError):
    """Same id re-submitted with different content and no replace flag."""


class ValidationFailedError(StoreError):
    def __init__(self, report: ValidationReport, context: str = "record rejected"):
        self.report = report
        super().__init__(f"{context}: {report.summary()}")


@dataclass(frozen=True)
class CatalogSnapshot:
    """Immutable view of the whole catalog at one revision."""

    networks: dict[str, Network] = field(default_factory=dict)
    sites: dict[str, Site] = field(default_factory=dict)
    sensors: dict[str, Sensor] = field(default_factory=dict)
    dataset_links: dict[str, DatasetLink] = field(default_factory=dict)
    assessments: dict[str, dict] = field(default_factory=dict)
    owners: dict[str, str] = field(default_factory=dict)
    tombstones: frozenset[str] = frozenset()
    revision: int = 0

    def sites_of(self, network_id: str) -> list[Site]:
        return sorted(
            (s for s in self.sites.values() if s.network_id == network_id),
            key=lambda s: s.id,
        )

    def sensors_of(self, site_id: str) -> list[Sensor]:
        return sorted(
            (z for z in self.sensors.values() if z.site_id == site_id),
            key=lambda z: z.id,
        )

    def links_of(self, network_id: str) -> list[DatasetLink]:
        return sorted(
            (l for l in self.dataset_links.values() if l.network_id == network_id),
            key=lambda l: l.id,
        )

    def sensors_of_network(self, network_id: str) -> list[Sensor]:
        site_ids = {s.id for s in self.sites.values() if s.network_id == network_id}
        return sorted(
            (z for z in self.sensors.values() if z.site_id in site_ids),
            key=lambda z: z.id,
        )

    def record_of(self, network_id: str) -> NetworkRecord:
        network = self.networks[network_id]
        return NetworkRecord(
            network=network,
            sites=tuple(self.sites_of(network_id)),
            sensors=tuple(self.sensors_of_network(network_id)),
            dataset_links=tuple(self.links_of(network_id)),
            assessment=self.assessments.get(network_id),
            tombstoned=network_id in self.tombstones,
        )

    def visible_network_ids(self) -> list[str]:
        """Published, non-tombstoned networks (the public population)."""
        return sorted(
            nid for nid, n in self.networks.items()
            if n.published and nid not in self.tombstones
        )


def audit_snapshot(snapshot: CatalogSnapshot) -> list[str]:
    """Full-scan referential-integrity audit; empty list means consistent."""
    problems = []
    for site in snapshot.sites.values():
        if site.network_id not in snapshot.networks:
            problems.append(f"site {site.id} references missing network {site.network_id}")
    site_ids = set(snapshot.sites)
    for sensor in snapshot.sensors.values():
        if sensor.site_id not in site_ids:
            problems.append(f"sensor {sensor.id} references missing site {sensor.site_id}")
    for link in snapshot.dataset_links.values():
        if link.network_id not in snapshot.networks:
            problems.append(f"dataset link {link.id} references missing network {link.network_id}")
    for nid in snapshot.assessments:
        if nid not in snapshot.networks:
            problems.append(f"assessment references missing network {nid}")
    for nid in snapshot.tombstones:
        if nid not in snapshot.networks:
            problems.append(f"tombstone references missing network {nid}")
    for nid in snapshot.owners:
        if nid not in snapshot.networks:
            problems.append(f"owner entry references missing network {nid}")
    for nid, network in snapshot.networks.items():
        if nid != network.id:
            problems.append(f"network keyed as {nid} carries id {network.id}")
    return problems


@dataclass
class ImportEntry:
    index: int
    status: str  # "imported" | "error"
    network_id: Optional[str] = None
    message: str = ""


@dataclass
class ImportReport:
    entries: list[ImportEntry] = field(default_factory=list)

    @property
    def imported(self) -> int:
        return sum(1 for e in self.entries if e.status == "imported")

    @property
    def failed(self) -> int:
        return sum(1 for e in self.entries if e.status == "error")


#: Called after each commit with (snapshot, ids of networks touched).
CommitListener = Callable[[CatalogSnapshot, set[str]], None]


class CatalogStore:
    """Durable catalog with serialized writes and atomic snapshot swaps."""

    def __init__(
        self,
        data_dir: Optional[Path] = None,
        vocabulary: Vocabulary = DEFAULT_VOCABULARY,
    ) -> None:
        self._lock = threading.RLock()
        self._listeners: list[CommitListener] = []
        self.vocabulary = vocabulary
        self.data_dir = Path(data_dir) if data_dir is not None else None
        if self.data_dir is not None:
            self.data_dir.mkdir(parents=True, exist_ok=True)
        self._snapshot = self._load()

    # ------------------------------------------------------------- reads

    def snapshot(self) -> CatalogSnapshot:
        return self._snapshot

    @property
    def revision(self) -> int:
        return self._snapshot.revision

    def get_network(self, network_id: str) -> Network:
        try:
            return self._snapshot.networks[network_id]
        except KeyError:
            raise NotFoundError(f"network {network_id!r} not found") from None

    def get_record(self, network_id: str) -> NetworkRecord:
        self.get_network(network_id)
        return self._snapshot.record_of(network_id)

    def list_networks(self) -> list[Network]:
        snap = self._snapshot
        return [snap.networks[nid] for nid in sorted(snap.networks)]

    def list_sites(self, network_id: str) -> list[Site]:
        self.get_network(network_id)
        return self._snapshot.sites_of(network_id)

    def get_site(self, site_id: str) -> Site:
        try:
            return self._snapshot.sites[site_id]
        except KeyError:
            raise NotFoundError(f"site {site_id!r} not found") from None

    def list_sensors(self, site_id: str) -> list[Sensor]:
        self.get_site(site_id)
        return self._snapshot.sensors_of(site_id)

    def list_dataset_links(self, network_id: str) -> list[DatasetLink]:
        self.get_network(network_id)
        return self._snapshot.links_of(network_id)

    def get_assessment(self, network_id: str) -> Optional[dict]:
        self.get_network(network_id)
        return self._snapshot.assessments.get(network_id)

    def audit(self) -> list[str]:
        return audit_snapshot(self._snapshot)

    # ------------------------------------------------------------ writes

    def add_listener(self, listener: CommitListener) -> None:
        self._listeners.append(listener)

    def upsert_network(
        self,
        document: dict | NetworkRecord,
        *,
        replace_existing: bool = False,
        owner: Optional[str] = None,
    ) -> str:
        """Store one network document atomically (validated, all-or-nothing).

        Re-submitting an identical document is an idempotent no-op. A changed
        document for an existing id needs ``replace_existing``, which re-runs
        validation and bumps the revision while keeping ownership and any
        tombstone in place.
        """
        record = document if isinstance(document, NetworkRecord) else parse_document(document)
        report = validate_network(
            record.network, record.sites, record.sensors, record.dataset_links,
            for_publication=record.network.published,
            vocabulary=self.vocabulary,
        )
        if not report.ok:
            raise ValidationFailedError(report)
        with self._lock:
            snap = self._snapshot
            nid = record.network.id
            existing = snap.networks.get(nid)
            if existing is not None:
                if build_document(snap.record_of(nid)) == build_document(record):
                    return nid
                if not replace_existing:
                    raise VersionConflictError(
                        f"network {nid!r} already exists with different content; "
                        f"pass replace to update it"
                    )
            networks = dict(snap.networks)
            sites = {k: v for k, v in snap.sites.items() if v.network_id != nid}
            sensors = dict(snap.sensors)
            old_site_ids = {k for k, v in snap.sites.items() if v.network_id == nid}
            sensors = {k: v for k, v in sensors.items() if v.site_id not in old_site_ids}
            links = {k: v for k, v in snap.dataset_links.items() if v.network_id != nid}
            networks[nid] = record.network
            for site in record.sites:
                sites[site.id] = site
            for sensor in record.sensors:
                sensors[sensor.id] = sensor
            for link in record.dataset_links:
                links[link.id] = link
            assessments = dict(snap.assessments)
            if record.assessment is not None:
                assessments[nid] = record.assessment
            else:
                assessments.pop(nid, None)
            owners = dict(snap.owners)
            if owner is not None and nid not in owners:
                owners[nid] = owner
            tombstones = set(snap.tombstones)
            if record.tombstoned:
                tombstones.add(nid)
            self._commit(
                CatalogSnapshot(
                    networks=networks, sites=sites, sensors=sensors,
                    dataset_links=links, assessments=assessments,
                    owners=owners, tombstones=frozenset(tombstones),
                    revision=snap.revision + 1,
                ),
                changed={nid},
            )
            return nid

    def publish(self, network_id: str) -> Network:
        """Flip a draft to published after publication-grade validation."""
        with self._lock:
            snap = self._snapshot
            network = self.get_network(network_id)
            if network_id in snap.tombstones:
                raise StoreError(f"network {network_id!r} is tombstoned and cannot be published")
            if network.published:
                return network
            record = snap.record_of(network_id)
            report = validate_network(
                record.network, record.sites, record.sensors, record.dataset_links,
                for_publication=True, vocabulary=self.vocabulary,
            )
            if not report.ok:
                raise ValidationFailedError(report, context="publication refused")
            published = replace(network, published=True)
            networks = dict(snap.networks)
            networks[network_id] = published
            self._commit(
                replace(snap, networks=networks, revision=snap.revision + 1),
                changed={network_id},
            )
            return published

    def delete_network(self, network_id: str) -> None:
        """Soft-delete published networks (tombstone), hard-delete drafts."""
        with self._lock:
            snap = self._snapshot
            network = self.get_network(network_id)
            if network.published:
                if network_id in snap.tombstones:
                    return
                self._commit(
                    replace(
                        snap,
                        tombstones=snap.tombstones | {network_id},
                        revision=snap.revision + 1,
                    ),
                    changed={network_id},
                )
                return
            networks = {k: v for k, v in snap.networks.items() if k != network_id}
            site_ids = {s.id for s in snap.sites.values() if s.network_id == network_id}
            sites = {k: v for k, v in snap.sites.items() if v.network_id != network_id}
            sensors = {k: v for k, v in snap.sensors.items() if v.site_id not in site_ids}
            links = {k: v for k, v in snap.dataset_links.items() if v.network_id != network_id}
            assessments = {k: v for k, v in snap.assessments.items() if k != network_id}
            owners = {k: v for k, v in snap.owners.items() if k != network_id}
            self._commit(
                CatalogSnapshot(
                    networks=networks, sites=sites, sensors=sensors,
                    dataset_links=links, assessments=assessments, owners=owners,
                    tombstones=snap.tombstones, revision=snap.revision + 1,
                ),
                changed={network_id},
            )

    def add_dataset_link(
        self,
        network_id: str,
        *,
        title: str,
        archive_url: str,
        file_format: str,
        temporal_coverage,
        sampling_interval_s: int,
        doi: Optional[str] = None,
        license: Optional[str] = None,
        declared_record_count: Optional[int] = None,
        description: str = "",
    ) -> DatasetLink:
        """Attach one dataset link (e.g. a freshly minted DOI) to a network."""
        with self._lock:
            snap = self._snapshot
            self.get_network(network_id)
            link = DatasetLink(
                id=fresh_id("dl"),
                network_id=network_id,
                doi=doi,
                archive_url=archive_url,
                title=title,
                license=license,
                file_format=file_format,
                temporal_coverage=temporal_coverage,
                sampling_interval_s=sampling_interval_s,
                declared_record_count=declared_record_count,
                description=description,
            )
            record = snap.record_of(network_id)
            report = validate_network(
                record.network, record.sites, record.sensors,
                record.dataset_links + (link,),
                for_publication=record.network.published,
                vocabulary=self.vocabulary,
            )
            if not report.ok:
                raise ValidationFailedError(report, context="dataset link rejected")
            links = dict(snap.dataset_links)
            links[link.id] = link
            self._commit(
                replace(snap, dataset_links=links, revision=snap.revision + 1),
                changed={network_id},
            )
            return link

    def save_assessment(self, network_id: str, assessment: dict) -> None:
        with self._lock:
            snap = self._snapshot
            self.get_network(network_id)
            assessments = dict(snap.assessments)
            assessments[network_id] = assessment
            self._commit(
                replace(snap, assessments=assessments, revision=snap.revision + 1),
                changed={network_id},
            )

    # ----------------------------------------------------- import/export

    def export_catalog(self) -> list[dict]:
        """Canonical documents for every network, sorted by id."""
        snap = self._snapshot
        return [build_document(snap.record_of(nid)) for nid in sorted(snap.networks)]

    def import_catalog(
        self, documents: Iterable[dict], *, replace_existing: bool = False
    ) -> ImportReport:
        """Import a document set; invalid documents are reported, valid ones land."""
        report = ImportReport()
        for i, doc in enumerate(documents):
            try:
                nid = self.upsert_network(doc, replace_existing=replace_existing)
                report.entries.append(ImportEntry(index=i, status="imported", network_id=nid))
            except (DocumentError, StoreError) as exc:
                name = ""
                if isinstance(doc, dict):
                    name = str((doc.get("network") or {}).get("id") or (doc.get("network") or {}).get("name") or "")
                report.entries.append(ImportEntry(
                    index=i, status="error", network_id=name or None, message=str(exc),
                ))
        return report

    # ------------------------------------------------------- persistence

    def _commit(self, snapshot: CatalogSnapshot, changed: set[str]) -> None:
        self._persist(snapshot)
        self._snapshot = snapshot
        for listener in self._listeners:
            listener(snapshot, changed)

    def _catalog_path(self) -> Optional[Path]:
        if self.data_dir is None:
            return None
        return self.data_dir / CATALOG_FILENAME

    def _persist(self, snapshot: CatalogSnapshot) -> None:
        path = self._catalog_path()
        if path is None:
            return
        payload = {
            "revision": snapshot.revision,
            "owners": dict(sorted(snapshot.owners.items())),
            "documents": [
                build_document(snapshot.record_of(nid)) for nid in sorted(snapshot.networks)
            ],
        }
        text = canonical_json(payload)
        fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=".catalog-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _load(self) -> CatalogSnapshot:
        path = self._catalog_path()
        if path is None or not path.exists():
            return CatalogSnapshot()
        payload = json.loads(path.read_text(encoding="utf-8"))
        networks: dict[str, Network] = {}
        sites: dict[str, Site] = {}
        sensors: dict[str, Sensor] = {}
        links: dict[str, DatasetLink] = {}
        assessments: dict[str, dict] = {}
        tombstones: set[str] = set()
        for doc in payload.get("documents", []):
            record = parse_document(doc)
            nid = record.network.id
            networks[nid] = record.network
            for site in record.sites:
                sites[site.id] = site
            for sensor in record.sensors:
                sensors[sensor.id] = sensor
            for link in record.dataset_links:
                links[link.id] = link
            if record.assessment is not None:
                assessments[nid] = record.assessment
            if record.tombstoned:
                tombstones.add(nid)
        return CatalogSnapshot(
            networks=networks,
            sites=sites,
            sensors=sensors,
            dataset_links=links,
            assessments=assessments,
            owners=dict(payload.get("owners", {})),
            tombstones=frozenset(tombstones),
            revision=int(payload.get("revision", 0)),
        )
