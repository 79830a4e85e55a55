"""Deployment configuration, read from the environment.

LEO_SECRET is the only required setting; the sealing key is derived
from it, so changing it invalidates stored API keys.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import EmptySecret


@dataclass
class Config:
    secret: str
    db_path: str = "leo.sqlite3"
    auth_instance: str | None = None
    session_ttl_hours: float = 24.0
    bind_addr: str = "127.0.0.1:8000"
    cors_origins: list[str] = field(default_factory=list)

    @classmethod
    def from_env(cls, env=os.environ) -> "Config":
        secret = env.get("LEO_SECRET", "")
        if not secret:
            raise EmptySecret("LEO_SECRET must be set to a non-empty value")
        return cls(
            secret=secret,
            db_path=env.get("LEO_DB_PATH", "leo.sqlite3"),
            auth_instance=env.get("LEO_AUTH_INSTANCE") or None,
            session_ttl_hours=float(env.get("LEO_SESSION_TTL_HOURS", "24")),
            bind_addr=env.get("LEO_BIND_ADDR", "127.0.0.1:8000"),
            cors_origins=[o for o in env.get("LEO_CORS_ORIGINS", "").split(",") if o],
        )
