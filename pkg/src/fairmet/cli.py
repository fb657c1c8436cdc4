"""Administrative command line: serve, import, export, seed-demo, assess, publish.

Failures exit nonzero and emit machine-parseable lines of the form
``error: <code>: <message>`` on stderr.
"""

from __future__ import annotations

import dataclasses
import json
import sys
from pathlib import Path
from typing import Optional

import click

from . import fair
from .archive import ArchiveError, make_archive_client
from .config import ConfigError, ServiceConfig
from .demo import seed_demo
from .interchange import DocumentError, canonical_json
from .store import (
    CatalogStore,
    NotFoundError,
    StoreError,
    ValidationFailedError,
    VersionConflictError,
)

_ERROR_CODES = (
    (ValidationFailedError, "validation_failed"),
    (NotFoundError, "not_found"),
    (VersionConflictError, "version_conflict"),
    (DocumentError, "bad_document"),
    (StoreError, "conflict"),
    (ArchiveError, "archive_error"),
    (ConfigError, "config"),
    (OSError, "io"),
)


def _fail(code: str, message: str) -> None:
    click.echo(f"error: {code}: {message}", err=True)
    sys.exit(1)


def _run(action):
    try:
        return action()
    except ValidationFailedError as exc:
        for issue in exc.report.issues:
            click.echo(f"  {issue.severity}: {issue.code}: {issue.message}", err=True)
        _fail("validation_failed", str(exc))
    except tuple(cls for cls, _ in _ERROR_CODES) as exc:
        for cls, code in _ERROR_CODES:
            if isinstance(exc, cls):
                _fail(code, str(exc))
        raise


def _make_store(data_dir: Optional[Path]) -> CatalogStore:
    config = ServiceConfig.from_env()
    directory = data_dir if data_dir is not None else config.data_dir
    return CatalogStore(data_dir=directory)


def _make_archive(data_dir: Optional[Path]):
    config = ServiceConfig.from_env()
    directory = data_dir if data_dir is not None else config.data_dir
    state_path = directory / "archive_state.json" if directory else None
    return make_archive_client(
        base_url=config.archive_base_url,
        token=config.archive_token,
        state_path=state_path,
    )


@click.group()
@click.option(
    "--data-dir",
    type=click.Path(path_type=Path),
    default=None,
    help="Catalog directory (defaults to DATA_DIR; in-memory when unset).",
)
@click.pass_context
def main(ctx: click.Context, data_dir: Optional[Path]) -> None:
    """Metadata portal for micrometeorological observation networks."""
    ctx.ensure_object(dict)
    ctx.obj["data_dir"] = data_dir


@main.command()
@click.option("--port", type=int, default=None, help="Override PORT.")
@click.pass_context
def serve(ctx: click.Context, port: Optional[int]) -> None:
    """Run the HTTP service."""
    from .api import serve as run_service

    def action():
        config = ServiceConfig.from_env()
        if ctx.obj["data_dir"] is not None:
            config = dataclasses.replace(config, data_dir=ctx.obj["data_dir"])
        if port is not None:
            config = dataclasses.replace(config, port=port)
        run_service(config)

    _run(action)


@main.command("import")
@click.argument("path", type=click.Path(path_type=Path, exists=False))
@click.option("--replace", is_flag=True, help="Overwrite existing networks with the same id.")
@click.pass_context
def import_catalog(ctx: click.Context, path: Path, replace: bool) -> None:
    """Import an exported document bundle (or a single document)."""

    def action():
        store = _make_store(ctx.obj["data_dir"])
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError:
            _fail("io", f"file not found: {path}")
        except json.JSONDecodeError as exc:
            _fail("bad_document", f"{path} is not valid JSON: {exc}")
        if isinstance(payload, dict) and "documents" in payload:
            documents = payload["documents"]
        elif isinstance(payload, dict):
            documents = [payload]
        elif isinstance(payload, list):
            documents = payload
        else:
            _fail("bad_document", f"{path} holds neither a document nor a bundle")
        report = store.import_catalog(documents, replace_existing=replace)
        for entry in report.entries:
            if entry.status == "imported":
                click.echo(f"imported: {entry.network_id}")
            else:
                label = entry.network_id or f"document {entry.index}"
                click.echo(
                    f"error: import_failed: document {entry.index} ({label}): {entry.message}",
                    err=True,
                )
        click.echo(f"{report.imported} imported, {report.failed} failed")
        if report.failed:
            sys.exit(1)

    _run(action)


@main.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.pass_context
def export(ctx: click.Context, path: Path) -> None:
    """Write the whole catalog as one canonical JSON bundle."""

    def action():
        store = _make_store(ctx.obj["data_dir"])
        text = canonical_json({"documents": store.export_catalog()})
        if str(path) == "-":
            click.echo(text, nl=False)
        else:
            Path(path).write_text(text, encoding="utf-8")
            click.echo(f"exported {len(store.snapshot().networks)} networks to {path}")

    _run(action)


@main.command("seed-demo")
@click.pass_context
def seed_demo_command(ctx: click.Context) -> None:
    """Install the published demo network with an archived dataset link."""

    def action():
        store = _make_store(ctx.obj["data_dir"])
        archive = _make_archive(ctx.obj["data_dir"])
        link = seed_demo(store, archive)
        network = store.get_network(link.network_id)
        click.echo(f"seeded: {network.id} ({network.name})")
        click.echo(f"doi: {link.doi}")

    _run(action)


@main.command()
@click.argument("network_id")
@click.option("--offline", is_flag=True, help="Skip DOI resolution probes (A1 becomes Partial).")
@click.pass_context
def assess(ctx: click.Context, network_id: str, offline: bool) -> None:
    """Grade one network against the 16 metrics and store the report."""

    def action():
        store = _make_store(ctx.obj["data_dir"])
        archive = _make_archive(ctx.obj["data_dir"])
        record = store.get_record(network_id)
        probe = None if offline else archive.resolve
        assessment = fair.assess(
            record.network,
            record.sites,
            record.sensors,
            record.dataset_links,
            archive_probe=probe,
            vocabulary=store.vocabulary,
        )
        store.save_assessment(network_id, fair.assessment_to_dict(assessment))
        click.echo(fair.render_text(assessment))

    _run(action)


@main.command()
@click.argument("network_id")
@click.pass_context
def publish(ctx: click.Context, network_id: str) -> None:
    """Flip a draft network to published after full validation."""

    def action():
        store = _make_store(ctx.obj["data_dir"])
        network = store.publish(network_id)
        click.echo(f"published: {network.id} ({network.name})")

    _run(action)


if __name__ == "__main__":
    main()
