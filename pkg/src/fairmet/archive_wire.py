"""ASGI server side of the archive deposit wire protocol.

Wraps a :class:`fairmet.archive.StubArchive` behind the same REST routes a
production archive exposes, so :class:`fairmet.archive.HttpArchive` can be
exercised end to end over real HTTP semantics (in tests, through
``httpx.ASGITransport`` without opening a socket).
"""

from __future__ import annotations

import asyncio
from typing import Optional

import httpx
from fastapi import FastAPI, Header, Request, UploadFile
from fastapi.responses import JSONResponse

from .archive import (
    ArchiveRequestError,
    DepositNotFoundError,
    DepositStateError,
    StubArchive,
    deposit_to_dict,
)


def create_wire_app(archive: Optional[StubArchive] = None) -> FastAPI:
    backend = archive if archive is not None else StubArchive()
    app = FastAPI(title="archive wire", docs_url=None, redoc_url=None)
    app.state.archive = backend

    @app.exception_handler(DepositNotFoundError)
    async def _not_found(request: Request, exc: DepositNotFoundError) -> JSONResponse:
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(DepositStateError)
    async def _conflict(request: Request, exc: DepositStateError) -> JSONResponse:
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(ArchiveRequestError)
    async def _bad_request(request: Request, exc: ArchiveRequestError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.post("/api/deposits", status_code=201)
    async def create_deposit(
        payload: dict,
        idempotency_key: Optional[str] = Header(default=None, alias="Idempotency-Key"),
    ) -> dict:
        deposit = backend.create_deposit(
            title=str(payload.get("title", "")),
            description=str(payload.get("description", "")),
            creators=tuple(payload.get("creators", ()) or ()),
            license=payload.get("license"),
            idempotency_token=idempotency_key,
        )
        return deposit_to_dict(deposit)

    @app.get("/api/deposits/{deposit_id}")
    async def get_deposit(deposit_id: str) -> dict:
        return deposit_to_dict(backend.get_deposit(deposit_id))

    @app.post("/api/deposits/{deposit_id}/files", status_code=201)
    async def upload_file(deposit_id: str, file: UploadFile) -> dict:
        data = await file.read()
        entry = backend.upload_file(deposit_id, file.filename or "upload.bin", data)
        return {"name": entry.name, "size": entry.size, "checksum": entry.checksum}

    @app.post("/api/deposits/{deposit_id}/publish")
    async def publish_deposit(deposit_id: str) -> dict:
        doi = backend.publish_deposit(deposit_id)
        return {"doi": doi}

    @app.get("/api/resolve")
    async def resolve(doi: str) -> dict:
        return {"status": backend.resolve(doi)}

    return app


class SyncASGITransport(httpx.BaseTransport):
    """Drive an ASGI app from a synchronous httpx client.

    Buffers bodies whole (fine for deposit-sized test payloads), letting
    the blocking HttpArchive talk to the wire app without a socket.
    """

    def __init__(self, app) -> None:
        self._transport = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        content = request.read()

        async def roundtrip() -> tuple[int, list[tuple[bytes, bytes]], bytes]:
            inner = httpx.Request(
                request.method, request.url, headers=request.headers.raw, content=content
            )
            response = await self._transport.handle_async_request(inner)
            body = await response.aread()
            await response.aclose()
            return response.status_code, response.headers.raw, body

        status, headers, body = asyncio.run(roundtrip())
        return httpx.Response(status, headers=headers, content=body)
