"""Service configuration from environment variables and the token file.

Authentication is deliberately simple: a flat JSON token file mapping each
bearer token to a role (``reader``, ``contributor`` or ``admin``). Anyone
without a token is an anonymous reader of published records.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional

ROLE_READER = "reader"
ROLE_CONTRIBUTOR = "contributor"
ROLE_ADMIN = "admin"
ROLES = (ROLE_READER, ROLE_CONTRIBUTOR, ROLE_ADMIN)

DEFAULT_PORT = 8000


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ServiceConfig:
    port: int = DEFAULT_PORT
    data_dir: Optional[Path] = None
    token_file: Optional[Path] = None
    archive_base_url: Optional[str] = None
    archive_token: Optional[str] = None

    @classmethod
    def from_env(cls, env: Optional[Mapping[str, str]] = None) -> "ServiceConfig":
        env = os.environ if env is None else env
        port_raw = env.get("PORT", "").strip()
        if port_raw:
            try:
                port = int(port_raw)
            except ValueError:
                raise ConfigError(f"PORT must be an integer, got {port_raw!r}") from None
            if not 1 <= port <= 65535:
                raise ConfigError(f"PORT out of range: {port}")
        else:
            port = DEFAULT_PORT
        data_dir = env.get("DATA_DIR", "").strip()
        token_file = env.get("TOKEN_FILE", "").strip()
        return cls(
            port=port,
            data_dir=Path(data_dir) if data_dir else None,
            token_file=Path(token_file) if token_file else None,
            archive_base_url=env.get("ARCHIVE_BASE_URL", "").strip() or None,
            archive_token=env.get("ARCHIVE_TOKEN", "").strip() or None,
        )


def load_tokens(path: Optional[Path]) -> dict[str, str]:
    """Read the token file: a JSON object mapping token -> role."""
    if path is None:
        return {}
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"token file {path} not found") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"token file {path} is not valid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise ConfigError(f"token file {path} must hold a JSON object")
    tokens: dict[str, str] = {}
    for token, role in payload.items():
        if not isinstance(token, str) or not token:
            raise ConfigError("token file keys must be non-empty strings")
        if role not in ROLES:
            raise ConfigError(f"unknown role {role!r} for a token (expected one of {ROLES})")
        tokens[token] = role
    return tokens


def principal_id(token: str) -> str:
    """Stable non-secret identifier for a token, used for record ownership."""
    return "tok-" + hashlib.sha256(token.encode("utf-8")).hexdigest()[:10]
