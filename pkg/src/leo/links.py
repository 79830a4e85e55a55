"""Persistent links between objects held in provider instances.

A link is a set of two or more endpoints. Endpoints carry the stable
(instance_id, origin_id, element_type) triple plus a title snapshot so
summaries render without contacting any provider. Request-scoped
local_ids are never persisted.
"""

from __future__ import annotations

import secrets
import sqlite3
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Sequence

from .errors import DuplicateEndpoint, NotFound, StorageError, TooFewEndpoints
from .storage import Database


@dataclass(frozen=True)
class LinkEndpoint:
    instance_id: str
    origin_id: str
    element_type: str
    title_snapshot: str

    @property
    def identity(self) -> tuple[str, str, str]:
        return (self.instance_id, self.origin_id, self.element_type)

    def to_json(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "origin_id": self.origin_id,
            "element_type": self.element_type,
            "title_snapshot": self.title_snapshot,
        }


@dataclass
class Link:
    link_id: str
    endpoints: list[LinkEndpoint]
    created_by: str
    created_at: str

    def to_json(self) -> dict:
        return {
            "link_id": self.link_id,
            "endpoints": [endpoint.to_json() for endpoint in self.endpoints],
            "created_by": self.created_by,
            "created_at": self.created_at,
        }


def check_endpoint_set(endpoints: Sequence) -> None:
    """Arity and uniqueness rules shared by the store and the API layer."""
    if len(endpoints) < 2:
        raise TooFewEndpoints("a link needs at least two endpoints")
    seen = set()
    for endpoint in endpoints:
        identity = (endpoint.instance_id, endpoint.origin_id, endpoint.element_type)
        if identity in seen:
            raise DuplicateEndpoint(f"endpoint {identity} appears twice")
        seen.add(identity)


class LinkStore:
    def __init__(self, db: Database):
        self._db = db

    def create(self, endpoints: Sequence[LinkEndpoint], created_by: str) -> Link:
        check_endpoint_set(endpoints)
        link = Link(
            link_id="lnk-" + secrets.token_hex(6),
            endpoints=list(endpoints),
            created_by=created_by,
            created_at=datetime.now(timezone.utc).isoformat(),
        )
        try:
            with self._db.connection() as conn:
                conn.execute(
                    "INSERT INTO links VALUES (?, ?, ?)",
                    (link.link_id, link.created_by, link.created_at),
                )
                conn.executemany(
                    "INSERT INTO link_endpoints VALUES (?, ?, ?, ?, ?, ?)",
                    [
                        (link.link_id, position, e.instance_id, e.origin_id,
                         e.element_type, e.title_snapshot)
                        for position, e in enumerate(link.endpoints)
                    ],
                )
        except sqlite3.Error as exc:
            raise StorageError(f"could not persist link: {exc}") from exc
        return link

    def list(self) -> list[Link]:
        """All links, newest first."""
        with self._db.connection() as conn:
            link_rows = conn.execute("SELECT * FROM links ORDER BY rowid DESC").fetchall()
            endpoint_rows = conn.execute(
                "SELECT * FROM link_endpoints ORDER BY link_id, position"
            ).fetchall()
        endpoints_by_link: dict[str, list[LinkEndpoint]] = {}
        for row in endpoint_rows:
            endpoints_by_link.setdefault(row["link_id"], []).append(self._endpoint_from_row(row))
        return [
            Link(row["link_id"], endpoints_by_link.get(row["link_id"], []),
                 row["created_by"], row["created_at"])
            for row in link_rows
        ]

    def get(self, link_id: str) -> Link:
        with self._db.connection() as conn:
            row = conn.execute("SELECT * FROM links WHERE link_id = ?", (link_id,)).fetchone()
            if row is None:
                raise NotFound(f"no link {link_id!r}")
            endpoint_rows = conn.execute(
                "SELECT * FROM link_endpoints WHERE link_id = ? ORDER BY position", (link_id,)
            ).fetchall()
        return Link(
            row["link_id"],
            [self._endpoint_from_row(e) for e in endpoint_rows],
            row["created_by"],
            row["created_at"],
        )

    def delete(self, link_id: str) -> None:
        with self._db.connection() as conn:
            deleted = conn.execute("DELETE FROM links WHERE link_id = ?", (link_id,)).rowcount
        if not deleted:
            raise NotFound(f"no link {link_id!r}")

    def links_referencing(self, instance_id: str) -> list[str]:
        with self._db.connection() as conn:
            rows = conn.execute(
                "SELECT DISTINCT link_id FROM link_endpoints WHERE instance_id = ?",
                (instance_id,),
            ).fetchall()
        return [row["link_id"] for row in rows]

    @staticmethod
    def _endpoint_from_row(row) -> LinkEndpoint:
        return LinkEndpoint(
            instance_id=row["instance_id"],
            origin_id=row["origin_id"],
            element_type=row["element_type"],
            title_snapshot=row["title_snapshot"],
        )
