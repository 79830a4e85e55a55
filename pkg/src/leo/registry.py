"""Provider discovery and configured-instance management.

Providers register at startup through an explicit registration table
(the default build ships three adapters); instances of those providers
are what operators configure with a host and, where a backend wants
one, an API key. API keys are sealed before they touch disk.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable
from urllib.parse import urlparse

from .auth import seal, unseal
from .contract import Provider, ProviderDescriptor
from .errors import DuplicateKind, InvalidHost, UnknownInstance, UnknownKind
from .storage import Database


class ProviderRegistry:
    """Registered provider implementations, one per kind."""

    def __init__(self, providers: Iterable[Provider]):
        self._providers: dict[str, Provider] = {}
        for provider in providers:
            kind = provider.describe().kind
            if kind in self._providers:
                raise DuplicateKind(f"two providers claim kind {kind!r}")
            self._providers[kind] = provider

    @classmethod
    def discover(cls, providers: Iterable[Provider] | None = None) -> "ProviderRegistry":
        """Register all available providers; defaults to the shipped build."""
        if providers is None:
            providers = default_providers()
        return cls(providers)

    def descriptors(self) -> list[ProviderDescriptor]:
        return [self._providers[kind].describe() for kind in sorted(self._providers)]

    def resolve(self, kind: str) -> Provider:
        try:
            return self._providers[kind]
        except KeyError:
            raise UnknownKind(f"no provider registered for kind {kind!r}") from None


def default_providers() -> list[Provider]:
    from .providers.elabftw import ElabFtwProvider
    from .providers.mock import MockProvider
    from .providers.omero import OmeroProvider

    return [ElabFtwProvider(), MockProvider(), OmeroProvider()]


@dataclass
class ProviderInstance:
    instance_id: str
    display_name: str
    kind: str
    host: str
    api_key_sealed: bytes | None
    created_at: str

    def to_json(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "display_name": self.display_name,
            "kind": self.kind,
            "host": self.host,
            "has_api_key": self.api_key_sealed is not None,
            "created_at": self.created_at,
        }


def require_absolute_url(host: str) -> None:
    parsed = urlparse(host)
    if not parsed.scheme or not parsed.netloc:
        raise InvalidHost(f"host {host!r} is not an absolute URL")


class InstanceStore:
    """Persisted provider instances; never holds a plaintext API key."""

    def __init__(self, db: Database, sealing_key: bytes):
        self._db = db
        self._key = sealing_key

    def create(self, *, display_name: str, kind: str, host: str,
               api_key: str | None = None) -> ProviderInstance:
        require_absolute_url(host)
        instance = ProviderInstance(
            instance_id="ins-" + secrets.token_hex(6),
            display_name=display_name,
            kind=kind,
            host=host,
            api_key_sealed=seal(self._key, api_key.encode()) if api_key else None,
            created_at=datetime.now(timezone.utc).isoformat(),
        )
        with self._db.connection() as conn:
            conn.execute(
                "INSERT INTO instances VALUES (?, ?, ?, ?, ?, ?)",
                (instance.instance_id, instance.display_name, instance.kind,
                 instance.host, instance.api_key_sealed, instance.created_at),
            )
        return instance

    def list(self) -> list[ProviderInstance]:
        with self._db.connection() as conn:
            rows = conn.execute("SELECT * FROM instances ORDER BY created_at, rowid").fetchall()
        return [self._from_row(row) for row in rows]

    def get(self, instance_id: str) -> ProviderInstance:
        with self._db.connection() as conn:
            row = conn.execute(
                "SELECT * FROM instances WHERE instance_id = ?", (instance_id,)
            ).fetchone()
        if row is None:
            raise UnknownInstance(f"no instance {instance_id!r}")
        return self._from_row(row)

    def delete(self, instance_id: str) -> None:
        with self._db.connection() as conn:
            deleted = conn.execute(
                "DELETE FROM instances WHERE instance_id = ?", (instance_id,)
            ).rowcount
        if not deleted:
            raise UnknownInstance(f"no instance {instance_id!r}")

    def open_api_key(self, instance: ProviderInstance) -> str | None:
        if instance.api_key_sealed is None:
            return None
        return unseal(self._key, instance.api_key_sealed).decode()

    @staticmethod
    def _from_row(row) -> ProviderInstance:
        return ProviderInstance(
            instance_id=row["instance_id"],
            display_name=row["display_name"],
            kind=row["kind"],
            host=row["host"],
            api_key_sealed=row["api_key_sealed"],
            created_at=row["created_at"],
        )
