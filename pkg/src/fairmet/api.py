"""HTTP service tying catalog, search, assessment, archive and analytics.

Reads are anonymous and cover published records only; every mutating
endpoint demands a bearer token from the token file (contributor or
admin). Errors share one body shape: ``{"code", "message", "details"}``.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Optional, Sequence

from fastapi import FastAPI, Request, UploadFile, File, Form
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from . import fair
from .analytics import (
    CubeError,
    CubeQuery,
    cube,
    cube_to_csv,
    cube_to_dict,
    summary_metrics,
)
from .archive import (
    ArchiveClient,
    ArchiveRequestError,
    ArchiveTransportError,
    make_archive_client,
)
from .config import (
    ROLE_ADMIN,
    ROLE_READER,
    ServiceConfig,
    load_tokens,
    principal_id,
)
from .interchange import DocumentError, build_document
from .model import DateRange
from .search import InvalidQueryError, SearchEngine, SearchResult, query_from_params
from .store import (
    CatalogStore,
    NotFoundError,
    StoreError,
    ValidationFailedError,
    VersionConflictError,
)

DEFAULT_PAGE_SIZE = 50
MAX_PAGE_SIZE = 500


@dataclass(frozen=True)
class Principal:
    id: str
    role: str

    @property
    def anonymous(self) -> bool:
        return self.id == "anonymous"


ANONYMOUS = Principal(id="anonymous", role=ROLE_READER)


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, details: object = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details


def _error_response(status: int, code: str, message: str, details: object = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "details": details},
    )


def create_app(
    config: Optional[ServiceConfig] = None,
    *,
    store: Optional[CatalogStore] = None,
    archive: Optional[ArchiveClient] = None,
    tokens: Optional[dict[str, str]] = None,
) -> FastAPI:
    config = config if config is not None else ServiceConfig.from_env()
    store = store if store is not None else CatalogStore(data_dir=config.data_dir)
    archive = (
        archive
        if archive is not None
        else make_archive_client(
            base_url=config.archive_base_url,
            token=config.archive_token,
            state_path=(config.data_dir / "archive_state.json") if config.data_dir else None,
        )
    )
    tokens = tokens if tokens is not None else load_tokens(config.token_file)
    engine = SearchEngine(store)

    app = FastAPI(title="fairmet portal", docs_url=None, redoc_url=None)
    app.state.store = store
    app.state.archive = archive
    app.state.engine = engine
    app.state.tokens = tokens
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    # ------------------------------------------------------------ errors

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError) -> JSONResponse:
        return _error_response(exc.status, exc.code, exc.message, exc.details)

    @app.exception_handler(NotFoundError)
    async def _not_found(request: Request, exc: NotFoundError) -> JSONResponse:
        return _error_response(404, "not_found", str(exc))

    @app.exception_handler(VersionConflictError)
    async def _conflict(request: Request, exc: VersionConflictError) -> JSONResponse:
        return _error_response(409, "version_conflict", str(exc))

    @app.exception_handler(StoreError)
    async def _store_error(request: Request, exc: StoreError) -> JSONResponse:
        return _error_response(409, "conflict", str(exc))

    @app.exception_handler(ValidationFailedError)
    async def _invalid(request: Request, exc: ValidationFailedError) -> JSONResponse:
        return _error_response(
            422, "validation_failed", str(exc),
            details=[issue.__dict__ for issue in exc.report.issues],
        )

    @app.exception_handler(DocumentError)
    async def _bad_document(request: Request, exc: DocumentError) -> JSONResponse:
        return _error_response(400, "bad_document", str(exc))

    @app.exception_handler(InvalidQueryError)
    async def _bad_query(request: Request, exc: InvalidQueryError) -> JSONResponse:
        return _error_response(400, "bad_query", str(exc))

    @app.exception_handler(CubeError)
    async def _bad_cube(request: Request, exc: CubeError) -> JSONResponse:
        return _error_response(400, "bad_cube_query", str(exc))

    @app.exception_handler(ArchiveTransportError)
    async def _archive_down(request: Request, exc: ArchiveTransportError) -> JSONResponse:
        return _error_response(502, "archive_unreachable", str(exc))

    @app.exception_handler(ArchiveRequestError)
    async def _archive_reject(request: Request, exc: ArchiveRequestError) -> JSONResponse:
        return _error_response(400, "archive_rejected", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _unprocessable(request: Request, exc: RequestValidationError) -> JSONResponse:
        return _error_response(400, "bad_request", "malformed request", details=exc.errors())

    # -------------------------------------------------------------- auth

    def principal_of(request: Request) -> Principal:
        header = request.headers.get("authorization")
        if not header:
            return ANONYMOUS
        parts = header.split(None, 1)
        if len(parts) != 2 or parts[0].lower() != "bearer" or not parts[1].strip():
            raise ApiError(401, "unauthorized", "malformed Authorization header")
        token = parts[1].strip()
        role = tokens.get(token)
        if role is None:
            raise ApiError(401, "unauthorized", "unknown token")
        return Principal(id=principal_id(token), role=role)

    def require_writer(request: Request) -> Principal:
        principal = principal_of(request)
        if principal.anonymous:
            raise ApiError(401, "unauthorized", "authentication required for writes")
        if principal.role == ROLE_READER:
            raise ApiError(403, "forbidden", "token lacks write permission")
        return principal

    def require_manager(request: Request, network_id: str) -> Principal:
        principal = require_writer(request)
        if principal.role == ROLE_ADMIN:
            return principal
        owner = store.snapshot().owners.get(network_id)
        if owner is not None and owner != principal.id:
            raise ApiError(403, "forbidden", "record owned by another contributor")
        return principal

    def visible_record(network_id: str, principal: Principal):
        snap = store.snapshot()
        if network_id not in snap.networks:
            raise NotFoundError(f"network {network_id!r} not found")
        network = snap.networks[network_id]
        hidden = (not network.published) or (network_id in snap.tombstones)
        if hidden:
            if principal.role == ROLE_ADMIN:
                return snap.record_of(network_id)
            if (
                not principal.anonymous
                and principal.role != ROLE_READER
                and snap.owners.get(network_id) == principal.id
            ):
                return snap.record_of(network_id)
            raise NotFoundError(f"network {network_id!r} not found")
        return snap.record_of(network_id)

    # -------------------------------------------------------- pagination

    def page_params(request: Request) -> tuple[int, int]:
        try:
            page = int(request.query_params.get("page", "1"))
            page_size = int(request.query_params.get("page_size", str(DEFAULT_PAGE_SIZE)))
        except ValueError:
            raise ApiError(400, "bad_pagination", "page and page_size must be integers")
        if page < 1:
            raise ApiError(400, "bad_pagination", "page must be >= 1")
        if not 1 <= page_size <= MAX_PAGE_SIZE:
            raise ApiError(
                400, "bad_pagination", f"page_size must be between 1 and {MAX_PAGE_SIZE}"
            )
        return page, page_size

    def paginate(items: Sequence, page: int, page_size: int) -> dict:
        start = (page - 1) * page_size
        return {
            "total": len(items),
            "page": page,
            "page_size": page_size,
            "items": list(items[start : start + page_size]),
        }

    # ----------------------------------------------------- serialization

    def network_summary(network_id: str) -> dict:
        snap = store.snapshot()
        network = snap.networks[network_id]
        links = snap.links_of(network_id)
        return {
            "id": network.id,
            "name": network.name,
            "country": network.country,
            "region": network.region,
            "local_environment": network.local_environment.value,
            "operational_coverage": {
                "start": network.operational_coverage.start.isoformat(),
                "end": network.operational_coverage.end.isoformat(),
            },
            "site_count": len(snap.sites_of(network_id)),
            "keywords": sorted(network.keywords),
            "published": network.published,
            "doi_count": sum(1 for link in links if link.doi),
        }

    def result_to_dict(result: SearchResult) -> dict:
        return {
            "network_id": result.network_id,
            "name": result.name,
            "country": result.country,
            "local_environment": result.local_environment.value,
            "coverage": {
                "start": result.coverage.start.isoformat(),
                "end": result.coverage.end.isoformat(),
            },
            "site_count": result.site_count,
            "doi_links": [
                {"doi": link.doi, "title": link.title, "archive_url": link.archive_url}
                for link in result.doi_links
            ],
            "score": result.score,
        }

    # ---------------------------------------------------------- endpoints

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "revision": store.revision}

    @app.get("/networks")
    def list_networks(request: Request) -> JSONResponse:
        principal = principal_of(request)
        page, page_size = page_params(request)
        snap = store.snapshot()
        include_drafts = request.query_params.get("include_drafts") in ("1", "true")
        ids = list(snap.visible_network_ids())
        if include_drafts and not principal.anonymous and principal.role != ROLE_READER:
            for nid, network in snap.networks.items():
                if nid in snap.tombstones or network.published:
                    continue
                if principal.role == ROLE_ADMIN or snap.owners.get(nid) == principal.id:
                    ids.append(nid)
        summaries = sorted(
            (network_summary(nid) for nid in ids),
            key=lambda row: (row["name"], row["id"]),
        )
        return JSONResponse(paginate(summaries, page, page_size))

    @app.get("/networks/{network_id}")
    def get_network(network_id: str, request: Request) -> JSONResponse:
        record = visible_record(network_id, principal_of(request))
        return JSONResponse(build_document(record))

    @app.get("/networks/{network_id}/sites")
    def list_sites(network_id: str, request: Request) -> JSONResponse:
        record = visible_record(network_id, principal_of(request))
        page, page_size = page_params(request)
        return JSONResponse(paginate(build_document(record)["sites"], page, page_size))

    def site_entry(site_id: str, principal: Principal) -> dict:
        snap = store.snapshot()
        if site_id not in snap.sites:
            raise NotFoundError(f"site {site_id!r} not found")
        site = snap.sites[site_id]
        record = visible_record(site.network_id, principal)
        for entry in build_document(record)["sites"]:
            if entry["id"] == site_id:
                return entry
        raise NotFoundError(f"site {site_id!r} not found")

    @app.get("/sites/{site_id}")
    def get_site(site_id: str, request: Request) -> JSONResponse:
        return JSONResponse(site_entry(site_id, principal_of(request)))

    @app.get("/sites/{site_id}/sensors")
    def list_site_sensors(site_id: str, request: Request) -> JSONResponse:
        return JSONResponse(site_entry(site_id, principal_of(request))["sensors"])

    @app.get("/search")
    def search(request: Request) -> JSONResponse:
        page, page_size = page_params(request)
        params: dict[str, list[str]] = {}
        for key, value in request.query_params.multi_items():
            if key in ("page", "page_size"):
                continue
            params.setdefault(key, []).append(value)
        query = query_from_params(params)
        results = [result_to_dict(r) for r in engine.search(query)]
        body = paginate(results, page, page_size)
        body["results"] = body.pop("items")
        return JSONResponse(body)

    @app.post("/networks", status_code=201)
    def upsert_network(request: Request, document: dict) -> JSONResponse:
        principal = require_writer(request)
        network = document.get("network")
        nid = network.get("id") if isinstance(network, dict) else None
        if nid and nid in store.snapshot().networks:
            require_manager(request, str(nid))
        replace_existing = request.query_params.get("replace") in ("1", "true")
        stored_id = store.upsert_network(
            document, replace_existing=replace_existing, owner=principal.id
        )
        return JSONResponse(
            {"id": stored_id, "revision": store.revision}, status_code=201
        )

    @app.post("/networks/{network_id}/publish")
    def publish_network(network_id: str, request: Request) -> JSONResponse:
        require_manager(request, network_id)
        store.publish(network_id)
        return JSONResponse(network_summary(network_id))

    @app.post("/networks/{network_id}/assess")
    def assess_network(network_id: str, request: Request) -> JSONResponse:
        require_manager(request, network_id)
        snap = store.snapshot()
        if network_id not in snap.networks:
            raise NotFoundError(f"network {network_id!r} not found")
        record = snap.record_of(network_id)
        offline = request.query_params.get("offline") in ("1", "true")
        probe = None if offline else archive.resolve
        assessment = fair.assess(
            record.network,
            record.sites,
            record.sensors,
            record.dataset_links,
            archive_probe=probe,
            vocabulary=store.vocabulary,
        )
        payload = fair.assessment_to_dict(assessment)
        store.save_assessment(network_id, payload)
        return JSONResponse(payload)

    @app.get("/networks/{network_id}/assessment")
    def get_assessment(network_id: str, request: Request) -> JSONResponse:
        visible_record(network_id, principal_of(request))
        payload = store.get_assessment(network_id)
        if payload is None:
            raise NotFoundError(f"network {network_id!r} has no stored assessment")
        return JSONResponse(payload)

    @app.post("/networks/{network_id}/deposits", status_code=201)
    def deposit(
        network_id: str,
        request: Request,
        file: UploadFile = File(...),
        title: str = Form(...),
        date_from: str = Form(...),
        date_to: str = Form(...),
        sampling_interval_s: int = Form(...),
        description: str = Form(""),
        license: Optional[str] = Form(None),
        file_format: Optional[str] = Form(None),
        declared_record_count: Optional[int] = Form(None),
        idempotency_token: Optional[str] = Form(None),
    ) -> JSONResponse:
        require_manager(request, network_id)
        network = store.get_network(network_id)
        try:
            coverage = DateRange(
                dt.date.fromisoformat(date_from), dt.date.fromisoformat(date_to)
            )
        except ValueError:
            raise ApiError(400, "bad_request", "date_from/date_to must be ISO dates")
        inferred_format = file_format
        if not inferred_format:
            name = file.filename or ""
            inferred_format = name.rsplit(".", 1)[-1].lower() if "." in name else "bin"
        deposit_draft = archive.create_deposit(
            title=title,
            description=description,
            creators=(network.owner_institution,),
            license=license,
            idempotency_token=idempotency_token,
        )
        content = file.file.read()
        archive.upload_file(
            deposit_draft.deposit_id, file.filename or "upload.bin", content
        )
        doi = archive.publish_deposit(deposit_draft.deposit_id)
        link = store.add_dataset_link(
            network_id,
            title=title,
            archive_url=archive.landing_url(doi),
            file_format=inferred_format,
            temporal_coverage=coverage,
            sampling_interval_s=sampling_interval_s,
            doi=doi,
            license=license,
            declared_record_count=declared_record_count,
            description=description,
        )
        return JSONResponse(
            {
                "deposit_id": deposit_draft.deposit_id,
                "doi": doi,
                "dataset_link": {
                    "id": link.id,
                    "network_id": link.network_id,
                    "doi": link.doi,
                    "archive_url": link.archive_url,
                    "title": link.title,
                    "file_format": link.file_format,
                },
            },
            status_code=201,
        )

    @app.get("/analytics/summary")
    def analytics_summary() -> JSONResponse:
        return JSONResponse(summary_metrics(store.snapshot()))

    @app.post("/analytics/cube")
    def analytics_cube(request: Request, body: dict):
        dimensions = body.get("dimensions") or []
        measures = body.get("measures") or []
        if not isinstance(dimensions, list) or not isinstance(measures, list):
            raise ApiError(400, "bad_cube_query", "dimensions and measures must be lists")
        filter_spec = body.get("filter")
        filter_query = None
        if filter_spec:
            if not isinstance(filter_spec, dict):
                raise ApiError(400, "bad_cube_query", "filter must be an object")
            filter_query = query_from_params(filter_spec)
        query = CubeQuery(
            dimensions=tuple(str(d) for d in dimensions),
            measures=tuple(str(m) for m in measures),
            filter=filter_query,
        )
        result = cube(store.snapshot(), query)
        if request.query_params.get("format") == "csv":
            return PlainTextResponse(cube_to_csv(result), media_type="text/csv")
        return JSONResponse(cube_to_dict(result))

    return app


def serve(config: Optional[ServiceConfig] = None) -> None:
    """Run the service under uvicorn (blocking)."""
    import uvicorn

    config = config if config is not None else ServiceConfig.from_env()
    app = create_app(config)
    uvicorn.run(app, host="0.0.0.0", port=config.port, log_level="info")
