"""Clients for the external data archive that mints DOIs.

The deposit flow is create -> upload file(s) -> publish -> DOI, mirroring
the public archive's REST API. Portal code depends only on the
:class:`ArchiveClient` contract; the in-memory :class:`StubArchive` serves
development and tests, while :class:`HttpArchive` speaks the REST wire
protocol (see :mod:`fairmet.archive_wire` for the server side of that
protocol). The stub is selected whenever ``ARCHIVE_BASE_URL`` is unset.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass, replace
from pathlib import Path
from typing import BinaryIO, Optional, Union

import httpx

from .model import is_valid_doi

REACHABLE = "reachable"
UNREACHABLE = "unreachable"
UNKNOWN = "unknown"

STATE_DRAFT = "draft"
STATE_PUBLISHED = "published"

#: DataCite test prefix; suffixes are minted monotonically per archive.
STUB_DOI_PREFIX = "10.5072"
STUB_LANDING_BASE = "https://archive.example.org/records"


class ArchiveError(Exception):
    pass


class ArchiveTransportError(ArchiveError):
    """Archive unreachable or responding abnormally; safe to retry."""


class ArchiveRequestError(ArchiveError):
    """Permanent rejection (invalid metadata, malformed DOI, bad request)."""


class DepositNotFoundError(ArchiveRequestError):
    pass


class DepositStateError(ArchiveRequestError):
    """Operation not allowed in the deposit's current state."""


@dataclass(frozen=True)
class FileEntry:
    name: str
    size: int
    checksum: str  # "md5:<hex>"


@dataclass(frozen=True)
class DepositDraft:
    deposit_id: str
    title: str
    description: str = ""
    creators: tuple[str, ...] = ()
    license: Optional[str] = None
    uploaded_files: tuple[FileEntry, ...] = ()
    state: str = STATE_DRAFT
    doi: Optional[str] = None


def content_checksum(content: bytes) -> str:
    return "md5:" + hashlib.md5(content).hexdigest()


def _read_content(content: Union[bytes, BinaryIO]) -> bytes:
    if isinstance(content, (bytes, bytearray)):
        return bytes(content)
    return content.read()


def deposit_to_dict(deposit: DepositDraft) -> dict:
    return {
        "deposit_id": deposit.deposit_id,
        "title": deposit.title,
        "description": deposit.description,
        "creators": list(deposit.creators),
        "license": deposit.license,
        "uploaded_files": [
            {"name": f.name, "size": f.size, "checksum": f.checksum}
            for f in deposit.uploaded_files
        ],
        "state": deposit.state,
        "doi": deposit.doi,
    }


def deposit_from_dict(payload: dict) -> DepositDraft:
    return DepositDraft(
        deposit_id=payload["deposit_id"],
        title=payload["title"],
        description=payload.get("description", ""),
        creators=tuple(payload.get("creators", ())),
        license=payload.get("license"),
        uploaded_files=tuple(
            FileEntry(name=f["name"], size=f["size"], checksum=f["checksum"])
            for f in payload.get("uploaded_files", ())
        ),
        state=payload.get("state", STATE_DRAFT),
        doi=payload.get("doi"),
    )


class ArchiveClient:
    """Operation contract every archive implementation satisfies."""

    def create_deposit(
        self,
        title: str,
        description: str = "",
        creators: tuple[str, ...] = (),
        license: Optional[str] = None,
        idempotency_token: Optional[str] = None,
    ) -> DepositDraft:
        raise NotImplementedError

    def upload_file(self, deposit_id: str, name: str, content: Union[bytes, BinaryIO]) -> FileEntry:
        raise NotImplementedError

    def publish_deposit(self, deposit_id: str) -> str:
        raise NotImplementedError

    def get_deposit(self, deposit_id: str) -> DepositDraft:
        raise NotImplementedError

    def resolve(self, doi: str) -> str:
        raise NotImplementedError

    def landing_url(self, doi: str) -> str:
        return f"{STUB_LANDING_BASE}/{doi}"


class StubArchive(ArchiveClient):
    """In-memory archive with optional on-disk state for CLI continuity.

    DOIs take the shape ``10.5072/portal.<n>`` with ``n`` strictly
    increasing; published DOIs resolve as reachable.
    """

    def __init__(self, state_path: Optional[Path] = None) -> None:
        self._lock = threading.RLock()
        self._state_path = Path(state_path) if state_path is not None else None
        self._deposits: dict[str, DepositDraft] = {}
        self._tokens: dict[str, str] = {}
        self._registered: set[str] = set()
        self._unreachable: set[str] = set()
        self._deposit_counter = 0
        self._doi_counter = 0
        if self._state_path is not None and self._state_path.exists():
            self._restore()

    # -------------------------------------------------------- operations

    def create_deposit(
        self,
        title: str,
        description: str = "",
        creators: tuple[str, ...] = (),
        license: Optional[str] = None,
        idempotency_token: Optional[str] = None,
    ) -> DepositDraft:
        if not title or not title.strip():
            raise ArchiveRequestError("deposit title must be non-empty")
        with self._lock:
            if idempotency_token is not None and idempotency_token in self._tokens:
                return self._deposits[self._tokens[idempotency_token]]
            self._deposit_counter += 1
            deposit = DepositDraft(
                deposit_id=f"dep-{self._deposit_counter}",
                title=title.strip(),
                description=description,
                creators=tuple(creators),
                license=license,
            )
            self._deposits[deposit.deposit_id] = deposit
            if idempotency_token is not None:
                self._tokens[idempotency_token] = deposit.deposit_id
            self._persist()
            return deposit

    def upload_file(self, deposit_id: str, name: str, content: Union[bytes, BinaryIO]) -> FileEntry:
        data = _read_content(content)
        with self._lock:
            deposit = self._get(deposit_id)
            if deposit.state != STATE_DRAFT:
                raise DepositStateError(
                    f"deposit {deposit_id} is {deposit.state}; uploads only in draft"
                )
            entry = FileEntry(name=name, size=len(data), checksum=content_checksum(data))
            kept = tuple(f for f in deposit.uploaded_files if f.name != name)
            self._deposits[deposit_id] = replace(deposit, uploaded_files=kept + (entry,))
            self._persist()
            return entry

    def publish_deposit(self, deposit_id: str) -> str:
        with self._lock:
            deposit = self._get(deposit_id)
            if deposit.state == STATE_PUBLISHED:
                assert deposit.doi is not None
                return deposit.doi
            if not deposit.uploaded_files:
                raise ArchiveRequestError(
                    f"deposit {deposit_id} has no uploaded files; publish refused"
                )
            self._doi_counter += 1
            doi = f"{STUB_DOI_PREFIX}/portal.{self._doi_counter}"
            self._deposits[deposit_id] = replace(deposit, state=STATE_PUBLISHED, doi=doi)
            self._registered.add(doi)
            self._persist()
            return doi

    def get_deposit(self, deposit_id: str) -> DepositDraft:
        with self._lock:
            return self._get(deposit_id)

    def resolve(self, doi: str) -> str:
        if not is_valid_doi(doi):
            raise ArchiveRequestError(f"malformed DOI {doi!r}")
        with self._lock:
            if doi in self._unreachable:
                return UNREACHABLE
            if doi in self._registered:
                return REACHABLE
            return UNKNOWN

    # ---------------------------------------------------------- test taps

    def register_doi(self, doi: str) -> None:
        """Mark an externally minted DOI as resolvable."""
        with self._lock:
            self._registered.add(doi)
            self._persist()

    def set_unreachable(self, doi: str) -> None:
        with self._lock:
            self._unreachable.add(doi)
            self._persist()

    # -------------------------------------------------------- persistence

    def _get(self, deposit_id: str) -> DepositDraft:
        try:
            return self._deposits[deposit_id]
        except KeyError:
            raise DepositNotFoundError(f"deposit {deposit_id!r} not found") from None

    def _persist(self) -> None:
        if self._state_path is None:
            return
        payload = {
            "deposit_counter": self._deposit_counter,
            "doi_counter": self._doi_counter,
            "deposits": {k: deposit_to_dict(v) for k, v in sorted(self._deposits.items())},
            "tokens": dict(sorted(self._tokens.items())),
            "registered": sorted(self._registered),
            "unreachable": sorted(self._unreachable),
        }
        self._state_path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self._state_path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")
        os.replace(tmp, self._state_path)

    def _restore(self) -> None:
        payload = json.loads(self._state_path.read_text(encoding="utf-8"))
        self._deposit_counter = payload.get("deposit_counter", 0)
        self._doi_counter = payload.get("doi_counter", 0)
        self._deposits = {
            k: deposit_from_dict(v) for k, v in payload.get("deposits", {}).items()
        }
        self._tokens = dict(payload.get("tokens", {}))
        self._registered = set(payload.get("registered", ()))
        self._unreachable = set(payload.get("unreachable", ()))


class HttpArchive(ArchiveClient):
    """REST client for an archive exposing the deposit wire protocol."""

    def __init__(
        self,
        base_url: str,
        token: Optional[str] = None,
        transport: Optional[httpx.BaseTransport] = None,
    ) -> None:
        headers = {}
        if token:
            headers["Authorization"] = f"Bearer {token}"
        self._client = httpx.Client(
            base_url=base_url.rstrip("/"), headers=headers, transport=transport, timeout=30.0
        )
        self._base_url = base_url.rstrip("/")

    def close(self) -> None:
        self._client.close()

    def _request(self, method: str, path: str, **kwargs) -> httpx.Response:
        try:
            response = self._client.request(method, path, **kwargs)
        except httpx.HTTPError as exc:
            raise ArchiveTransportError(f"archive unreachable: {exc}") from exc
        if response.status_code >= 500:
            raise ArchiveTransportError(
                f"archive error {response.status_code} for {method} {path}"
            )
        if response.status_code == 404:
            raise DepositNotFoundError(_error_message(response))
        if response.status_code == 409:
            raise DepositStateError(_error_message(response))
        if response.status_code >= 400:
            raise ArchiveRequestError(_error_message(response))
        return response

    def create_deposit(
        self,
        title: str,
        description: str = "",
        creators: tuple[str, ...] = (),
        license: Optional[str] = None,
        idempotency_token: Optional[str] = None,
    ) -> DepositDraft:
        headers = {}
        if idempotency_token is not None:
            headers["Idempotency-Key"] = idempotency_token
        response = self._request(
            "POST",
            "/api/deposits",
            json={
                "title": title,
                "description": description,
                "creators": list(creators),
                "license": license,
            },
            headers=headers,
        )
        return deposit_from_dict(response.json())

    def upload_file(self, deposit_id: str, name: str, content: Union[bytes, BinaryIO]) -> FileEntry:
        data = _read_content(content)
        response = self._request(
            "POST",
            f"/api/deposits/{deposit_id}/files",
            files={"file": (name, data, "application/octet-stream")},
        )
        payload = response.json()
        return FileEntry(name=payload["name"], size=payload["size"], checksum=payload["checksum"])

    def publish_deposit(self, deposit_id: str) -> str:
        response = self._request("POST", f"/api/deposits/{deposit_id}/publish")
        return response.json()["doi"]

    def get_deposit(self, deposit_id: str) -> DepositDraft:
        response = self._request("GET", f"/api/deposits/{deposit_id}")
        return deposit_from_dict(response.json())

    def resolve(self, doi: str) -> str:
        if not is_valid_doi(doi):
            raise ArchiveRequestError(f"malformed DOI {doi!r}")
        response = self._request("GET", "/api/resolve", params={"doi": doi})
        return response.json()["status"]

    def landing_url(self, doi: str) -> str:
        return f"{self._base_url}/records/{doi}"


def _error_message(response: httpx.Response) -> str:
    try:
        payload = response.json()
        if isinstance(payload, dict):
            detail = payload.get("detail") or payload.get("message")
            if isinstance(detail, dict):
                return str(detail.get("message", detail))
            if detail:
                return str(detail)
    except ValueError:
        pass
    return f"archive returned {response.status_code}"


def make_archive_client(
    base_url: Optional[str] = None,
    token: Optional[str] = None,
    state_path: Optional[Path] = None,
) -> ArchiveClient:
    """Pick the real client when a base URL is configured, else the stub."""
    base_url = base_url if base_url is not None else os.environ.get("ARCHIVE_BASE_URL")
    token = token if token is not None else os.environ.get("ARCHIVE_TOKEN")
    if base_url:
        return HttpArchive(base_url=base_url, token=token)
    return StubArchive(state_path=state_path)
