"""Extraction of tables embedded in notebook HTML bodies.

Every ``<table>`` element becomes one extraction entry in document
order. The first row supplies the column headers; markup inside cells
is flattened to text and cells are trimmed of surrounding whitespace.
Tables the mapping rules cannot handle (merged cells, blank or absent
headers, rows wider than the header row) are reported as rejected
entries instead of aborting the whole document.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from html.parser import HTMLParser

from .errors import InvalidTableIndex, UnsupportedTable


def table_signature(headers: list[str]) -> str:
    """Canonical fingerprint of an ordered header list."""
    canonical = json.dumps(list(headers), ensure_ascii=False, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


@dataclass
class Table:
    headers: list[str]
    rows: list[list[str]]
    source_index: int

    @property
    def signature(self) -> str:
        return table_signature(self.headers)

    def to_json(self) -> dict:
        return {
            "index": self.source_index,
            "supported": True,
            "headers": self.headers,
            "row_count": len(self.rows),
        }


@dataclass
class RejectedTable:
    source_index: int
    reason: str

    def to_json(self) -> dict:
        return {
            "index": self.source_index,
            "supported": False,
            "reason": self.reason,
        }


@dataclass
class TableExtraction:
    tables: list[Table] = field(default_factory=list)
    rejected: list[RejectedTable] = field(default_factory=list)

    def entries(self) -> list[Table | RejectedTable]:
        """All tables in document order, rejected ones included."""
        return sorted(self.tables + self.rejected, key=lambda t: t.source_index)

    def entry(self, index: int) -> Table:
        """The table at a document position; raises if rejected or absent."""
        entries = self.entries()
        if index < 0 or index >= len(entries):
            raise InvalidTableIndex(f"document has {len(entries)} tables, no index {index}")
        found = entries[index]
        if isinstance(found, RejectedTable):
            raise UnsupportedTable(found.reason, details={"index": index})
        return found


class _RawTable:
    def __init__(self, source_index: int):
        self.source_index = source_index
        self.rows: list[list[str]] = []
        self.current_row: list[str] | None = None
        self.cell_chunks: list[str] | None = None
        self.merged_cells = False
        self.colspan_seen = False
        self.rowspan_seen = False


class _TableParser(HTMLParser):
    """Tolerant parser: unclosed rows/cells are flushed implicitly, and
    nested tables are captured separately without leaking text into the
    enclosing cell."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.finished: list[_RawTable] = []
        self._stack: list[_RawTable] = []
        self._count = 0

    def handle_starttag(self, tag, attrs):
        if tag == "table":
            self._stack.append(_RawTable(self._count))
            self._count += 1
            return
        if not self._stack:
            return
        table = self._stack[-1]
        if tag == "tr":
            self._flush_row(table)
            table.current_row = []
        elif tag in ("td", "th"):
            if table.current_row is None:
                table.current_row = []
            self._flush_cell(table)
            table.cell_chunks = []
            for name, value in attrs:
                if name in ("colspan", "rowspan") and _spans_cells(value):
                    table.merged_cells = True

    def handle_endtag(self, tag):
        if not self._stack:
            return
        table = self._stack[-1]
        if tag == "table":
            self._flush_row(table)
            self.finished.append(self._stack.pop())
        elif tag == "tr":
            self._flush_row(table)
        elif tag in ("td", "th"):
            self._flush_cell(table)

    def handle_data(self, data):
        if self._stack and self._stack[-1].cell_chunks is not None:
            self._stack[-1].cell_chunks.append(data)

    @staticmethod
    def _flush_cell(table: _RawTable):
        if table.cell_chunks is not None:
            table.current_row.append("".join(table.cell_chunks).strip())
            table.cell_chunks = None

    def _flush_row(self, table: _RawTable):
        self._flush_cell(table)
        if table.current_row is not None:
            table.rows.append(table.current_row)
            table.current_row = None


def _spans_cells(value) -> bool:
    try:
        return int(str(value).strip()) > 1
    except (TypeError, ValueError):
        return False


def extract_tables(html: str) -> TableExtraction:
    parser = _TableParser()
    parser.feed(html)
    parser.close()
    # unterminated trailing table
    while parser._stack:
        table = parser._stack[-1]
        parser._flush_row(table)
        parser.finished.append(parser._stack.pop())

    extraction = TableExtraction()
    for raw in sorted(parser.finished, key=lambda t: t.source_index):
        entry = _finalize(raw)
        if isinstance(entry, Table):
            extraction.tables.append(entry)
        else:
            extraction.rejected.append(entry)
    return extraction


def _finalize(raw: _RawTable) -> Table | RejectedTable:
    if raw.merged_cells:
        return RejectedTable(raw.source_index, "merged cells (colspan/rowspan) are not supported")
    if not raw.rows:
        return RejectedTable(raw.source_index, "table has no rows")
    headers = [h.strip() for h in raw.rows[0]]
    if not headers or any(not h for h in headers):
        return RejectedTable(raw.source_index, "header row has blank cells")
    rows = []
    for number, cells in enumerate(raw.rows[1:], start=2):
        if len(cells) > len(headers):
            return RejectedTable(raw.source_index, f"row {number} has more cells than headers")
        rows.append(cells + [""] * (len(headers) - len(cells)))
    return Table(headers=headers, rows=rows, source_index=raw.source_index)
