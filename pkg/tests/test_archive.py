"""Deposit workflow contract, exercised against both archive clients.

Every behavioral test runs twice: once on the in-memory stub and once on
the HTTP client talking to the wire app over an in-process transport, so
both implementations keep the same observable contract.
"""

import hashlib
import json

import httpx
import pytest

from fairmet.archive import (
    REACHABLE,
    STATE_DRAFT,
    STATE_PUBLISHED,
    UNKNOWN,
    UNREACHABLE,
    ArchiveRequestError,
    ArchiveTransportError,
    DepositNotFoundError,
    DepositStateError,
    HttpArchive,
    StubArchive,
    content_checksum,
    deposit_from_dict,
    deposit_to_dict,
    make_archive_client,
)
from fairmet.archive_wire import SyncASGITransport, create_wire_app


@pytest.fixture(params=["stub", "http"])
def client(request):
    backing = StubArchive()
    if request.param == "stub":
        yield backing, backing
    else:
        http = HttpArchive(
            "http://archive.test",
            transport=SyncASGITransport(create_wire_app(backing)),
        )
        yield http, backing
        http.close()


class TestDepositContract:
    def test_create_starts_draft(self, client):
        archive, _ = client
        deposit = archive.create_deposit(
            "  Hourly temperatures  ",
            description="Twelve stations.",
            creators=("Field Team",),
            license="CC-BY-4.0",
        )
        assert deposit.deposit_id.startswith("dep-")
        assert deposit.title == "Hourly temperatures"
        assert deposit.creators == ("Field Team",)
        assert deposit.state == STATE_DRAFT
        assert deposit.doi is None
        assert deposit.uploaded_files == ()

    def test_create_rejects_blank_title(self, client):
        archive, _ = client
        with pytest.raises(ArchiveRequestError):
            archive.create_deposit("   ")

    def test_upload_checksum_matches_md5(self, client):
        archive, _ = client
        deposit = archive.create_deposit("Data")
        payload = b"time,t\n2016-01-01T00:00Z,1.2\n"
        entry = archive.upload_file(deposit.deposit_id, "obs.csv", payload)
        assert entry.name == "obs.csv"
        assert entry.size == len(payload)
        assert entry.checksum == "md5:" + hashlib.md5(payload).hexdigest()
        assert entry.checksum == content_checksum(payload)
        fetched = archive.get_deposit(deposit.deposit_id)
        assert [f.name for f in fetched.uploaded_files] == ["obs.csv"]

    def test_reupload_same_name_replaces(self, client):
        archive, _ = client
        deposit = archive.create_deposit("Data")
        archive.upload_file(deposit.deposit_id, "obs.csv", b"v1")
        archive.upload_file(deposit.deposit_id, "obs.csv", b"version two")
        fetched = archive.get_deposit(deposit.deposit_id)
        (entry,) = fetched.uploaded_files
        assert entry.size == len(b"version two")

    def test_upload_to_missing_deposit(self, client):
        archive, _ = client
        with pytest.raises(DepositNotFoundError):
            archive.upload_file("dep-404", "x.csv", b"x")

    def test_publish_requires_files(self, client):
        archive, _ = client
        deposit = archive.create_deposit("Empty")
        with pytest.raises(ArchiveRequestError):
            archive.publish_deposit(deposit.deposit_id)

    def test_publish_mints_doi_and_is_idempotent(self, client):
        archive, _ = client
        deposit = archive.create_deposit("Data")
        archive.upload_file(deposit.deposit_id, "obs.csv", b"rows")
        doi = archive.publish_deposit(deposit.deposit_id)
        assert doi.startswith("10.5072/portal.")
        assert archive.publish_deposit(deposit.deposit_id) == doi
        fetched = archive.get_deposit(deposit.deposit_id)
        assert fetched.state == STATE_PUBLISHED
        assert fetched.doi == doi

    def test_upload_after_publish_refused(self, client):
        archive, _ = client
        deposit = archive.create_deposit("Data")
        archive.upload_file(deposit.deposit_id, "obs.csv", b"rows")
        archive.publish_deposit(deposit.deposit_id)
        with pytest.raises(DepositStateError):
            archive.upload_file(deposit.deposit_id, "more.csv", b"late")

    def test_get_missing_deposit(self, client):
        archive, _ = client
        with pytest.raises(DepositNotFoundError):
            archive.get_deposit("dep-9999")

    def test_resolve_states(self, client):
        archive, backing = client
        deposit = archive.create_deposit("Data")
        archive.upload_file(deposit.deposit_id, "obs.csv", b"rows")
        doi = archive.publish_deposit(deposit.deposit_id)
        assert archive.resolve(doi) == REACHABLE
        assert archive.resolve("10.5072/portal.424242") == UNKNOWN
        backing.set_unreachable(doi)
        assert archive.resolve(doi) == UNREACHABLE

    def test_resolve_rejects_malformed_doi(self, client):
        archive, _ = client
        with pytest.raises(ArchiveRequestError):
            archive.resolve("not-a-doi")

    def test_idempotency_token_returns_same_deposit(self, client):
        archive, _ = client
        first = archive.create_deposit("Data", idempotency_token="run-7")
        again = archive.create_deposit("Data", idempotency_token="run-7")
        other = archive.create_deposit("Data", idempotency_token="run-8")
        assert again.deposit_id == first.deposit_id
        assert other.deposit_id != first.deposit_id

    def test_doi_suffix_strictly_increases(self, client):
        archive, _ = client
        suffixes = []
        for i in range(3):
            deposit = archive.create_deposit(f"Data {i}")
            archive.upload_file(deposit.deposit_id, "d.csv", b"x")
            doi = archive.publish_deposit(deposit.deposit_id)
            suffixes.append(int(doi.rsplit(".", 1)[1]))
        assert suffixes == sorted(suffixes)
        assert len(set(suffixes)) == 3

    def test_landing_url_embeds_doi(self, client):
        archive, _ = client
        assert "10.5072/portal.1" in archive.landing_url("10.5072/portal.1")


class TestStubPersistence:
    def test_state_survives_restart(self, tmp_path):
        path = tmp_path / "archive_state.json"
        first = StubArchive(path)
        deposit = first.create_deposit("Data", idempotency_token="seed")
        first.upload_file(deposit.deposit_id, "obs.csv", b"rows")
        doi = first.publish_deposit(deposit.deposit_id)

        second = StubArchive(path)
        assert second.resolve(doi) == REACHABLE
        restored = second.get_deposit(deposit.deposit_id)
        assert restored.state == STATE_PUBLISHED
        assert restored.uploaded_files[0].checksum == content_checksum(b"rows")
        # Token survives too: re-running the same workflow is a no-op.
        assert second.create_deposit("Data", idempotency_token="seed").deposit_id == deposit.deposit_id

    def test_counters_continue_after_restart(self, tmp_path):
        path = tmp_path / "archive_state.json"
        first = StubArchive(path)
        d1 = first.create_deposit("One")
        first.upload_file(d1.deposit_id, "a.csv", b"a")
        doi1 = first.publish_deposit(d1.deposit_id)

        second = StubArchive(path)
        d2 = second.create_deposit("Two")
        first_n = int(doi1.rsplit(".", 1)[1])
        second_n = int(d2.deposit_id.rsplit("-", 1)[1])
        assert second_n > int(d1.deposit_id.rsplit("-", 1)[1])
        second.upload_file(d2.deposit_id, "b.csv", b"b")
        doi2 = second.publish_deposit(d2.deposit_id)
        assert int(doi2.rsplit(".", 1)[1]) > first_n

    def test_register_doi_tap(self):
        archive = StubArchive()
        archive.register_doi("10.1234/external.7")
        assert archive.resolve("10.1234/external.7") == REACHABLE


class TestSerialization:
    def test_deposit_dict_round_trip(self):
        archive = StubArchive()
        deposit = archive.create_deposit("Data", creators=("A", "B"), license="MIT")
        archive.upload_file(deposit.deposit_id, "x.csv", b"1,2")
        archive.publish_deposit(deposit.deposit_id)
        final = archive.get_deposit(deposit.deposit_id)
        payload = deposit_to_dict(final)
        assert json.loads(json.dumps(payload)) == payload
        assert deposit_from_dict(payload) == final


class TestHttpErrorMapping:
    def make_client(self, handler):
        return HttpArchive("http://archive.test", transport=httpx.MockTransport(handler))

    def test_5xx_is_transport_error(self):
        client = self.make_client(lambda req: httpx.Response(503, json={"detail": "maintenance"}))
        with pytest.raises(ArchiveTransportError):
            client.create_deposit("Data")

    def test_connection_failure_is_transport_error(self):
        def handler(request):
            raise httpx.ConnectError("refused")
        client = self.make_client(handler)
        with pytest.raises(ArchiveTransportError):
            client.get_deposit("dep-1")

    def test_400_detail_reaches_message(self):
        client = self.make_client(
            lambda req: httpx.Response(400, json={"detail": "quota exceeded"})
        )
        with pytest.raises(ArchiveRequestError, match="quota exceeded"):
            client.create_deposit("Data")

    def test_non_json_error_body(self):
        client = self.make_client(lambda req: httpx.Response(400, text="<html>nope</html>"))
        with pytest.raises(ArchiveRequestError, match="archive returned 400"):
            client.create_deposit("Data")

    def test_bearer_token_and_idempotency_header_sent(self):
        seen = {}

        def handler(request):
            seen["auth"] = request.headers.get("Authorization")
            seen["idem"] = request.headers.get("Idempotency-Key")
            return httpx.Response(201, json={
                "deposit_id": "dep-1", "title": "Data", "description": "",
                "creators": [], "license": None, "uploaded_files": [],
                "state": "draft", "doi": None,
            })

        client = HttpArchive(
            "http://archive.test", token="sekrit", transport=httpx.MockTransport(handler)
        )
        client.create_deposit("Data", idempotency_token="run-1")
        assert seen["auth"] == "Bearer sekrit"
        assert seen["idem"] == "run-1"


class TestClientSelection:
    def test_stub_when_no_base_url(self, tmp_path, monkeypatch):
        monkeypatch.delenv("ARCHIVE_BASE_URL", raising=False)
        client = make_archive_client(state_path=tmp_path / "s.json")
        assert isinstance(client, StubArchive)

    def test_http_when_base_url_given(self, monkeypatch):
        monkeypatch.delenv("ARCHIVE_BASE_URL", raising=False)
        client = make_archive_client(base_url="https://archive.example.org")
        assert isinstance(client, HttpArchive)

    def test_env_base_url_wins_over_default(self, monkeypatch):
        monkeypatch.setenv("ARCHIVE_BASE_URL", "https://archive.example.org")
        client = make_archive_client()
        assert isinstance(client, HttpArchive)
