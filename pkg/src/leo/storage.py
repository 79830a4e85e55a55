"""Embedded relational persistence (sqlite).

One short-lived connection per operation keeps the store safe under
concurrent requests; WAL mode plus a busy timeout lets concurrent
writers queue instead of erroring.
"""

from __future__ import annotations

import sqlite3
from contextlib import contextmanager
from pathlib import Path

_SCHEMA = """
CREATE TABLE IF NOT EXISTS instances (
    instance_id    TEXT PRIMARY KEY,
    display_name   TEXT NOT NULL,
    kind           TEXT NOT NULL,
    host           TEXT NOT NULL,
    api_key_sealed BLOB,
    created_at     TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS links (
    link_id    TEXT PRIMARY KEY,
    created_by TEXT NOT NULL,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS link_endpoints (
    link_id        TEXT NOT NULL REFERENCES links(link_id) ON DELETE CASCADE,
    position       INTEGER NOT NULL,
    instance_id    TEXT NOT NULL,
    origin_id      TEXT NOT NULL,
    element_type   TEXT NOT NULL,
    title_snapshot TEXT NOT NULL,
    PRIMARY KEY (link_id, position)
);
"""


class Database:
    def __init__(self, path: str | Path):
        self.path = str(path)
        with self.connection() as conn:
            conn.executescript(_SCHEMA)
            conn.execute("PRAGMA journal_mode=WAL")

    @contextmanager
    def connection(self):
        conn = sqlite3.connect(self.path, timeout=30.0)
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA foreign_keys=ON")
        conn.execute("PRAGMA busy_timeout=30000")
        try:
            yield conn
            conn.commit()
        except BaseException:
            conn.rollback()
            raise
        finally:
            conn.close()
