"""Adapter for eLabFTW-style lab notebooks.

Authenticates with the instance's API key (sent in the Authorization
header); user credentials play no role here, so this provider cannot
act as a login authority. Linkable objects are the experiments, as a
flat forest; the experiment body is served for table extraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import httpx

from ..contract import (
    Capability,
    ConnectParams,
    Element,
    ElementForest,
    ElementRef,
    ExtraValue,
    MetadataBatch,
    MetadataRecord,
    Provider,
    ProviderConnection,
    ProviderDescriptor,
    build_forest,
)
from ..errors import AuthRejected, ConnectFailed, ConnectionLost, ProviderError, UnknownElement


@dataclass
class ElabFtwConnection(ProviderConnection):
    client: httpx.Client


def elabftw_forest(experiments: list[dict]) -> ElementForest:
    """Pure mapping from an experiment listing to a flat forest."""
    roots = []
    for record in experiments:
        if "id" not in record:
            raise ProviderError(f"experiment record without 'id': {record!r}")
        if "title" not in record:
            raise ProviderError(f"experiment record without 'title': {record!r}")
        roots.append(Element(str(record["id"]), record["title"], "Experiment"))
    return build_forest(roots)


class ElabFtwProvider(Provider):
    EXPERIMENTS_PATH = "/api/v2/experiments"
    EXPERIMENT_PATH = "/api/v2/experiments/{experiment_id}"

    def __init__(self, transport: httpx.BaseTransport | None = None, timeout: float = 15.0):
        self._transport = transport
        self._timeout = timeout

    def describe(self) -> ProviderDescriptor:
        return ProviderDescriptor(
            kind="elabftw",
            display_name="eLabFTW lab notebook",
            capabilities=frozenset(
                {Capability.BROWSE, Capability.READ_METADATA, Capability.BODY_DOCUMENT}
            ),
            config_fields=("host", "api_key"),
        )

    def connect(self, params: ConnectParams) -> ElabFtwConnection:
        self.require_config(params)
        client = httpx.Client(
            base_url=params.host,
            transport=self._transport,
            timeout=self._timeout,
            headers={"Authorization": params.api_key or ""},
        )
        # the key is only verifiable by using it
        try:
            response = client.get(self.EXPERIMENTS_PATH)
        except httpx.TransportError as exc:
            client.close()
            raise ConnectFailed(f"cannot reach {params.host}: {exc}") from exc
        if response.status_code in (401, 403):
            client.close()
            raise AuthRejected("notebook rejected the API key")
        if response.status_code >= 400:
            client.close()
            raise ConnectFailed(f"notebook answered status {response.status_code}")
        return ElabFtwConnection(client)

    def get_elements(self, conn: ElabFtwConnection) -> ElementForest:
        return elabftw_forest(self._listing(conn))

    def get_metadata(self, conn: ElabFtwConnection, selected: Sequence[ElementRef]) -> MetadataBatch:
        if not selected:
            raise ValueError("selection must be non-empty")
        batch = MetadataBatch(records=[])
        for ref in selected:
            detail = self._experiment(conn, ref.origin_id)
            if detail is None or ref.element_type != "Experiment":
                batch.missing.append(ref)
                continue
            extras = {"body": ExtraValue(detail.get("body") or "", html=True)}
            if detail.get("date"):
                extras["date"] = ExtraValue(str(detail["date"]))
            batch.records.append(
                MetadataRecord(
                    record_type="Experiment",
                    name=detail.get("title") or ref.origin_id,
                    id=ref.origin_id,
                    extras=extras,
                )
            )
        return batch

    def get_body_document(self, conn: ElabFtwConnection, ref: ElementRef) -> str:
        detail = self._experiment(conn, ref.origin_id)
        if detail is None:
            raise UnknownElement(ref.origin_id)
        return detail.get("body") or ""

    # -- helpers ---------------------------------------------------------

    def _listing(self, conn: ElabFtwConnection) -> list[dict]:
        try:
            response = conn.client.get(self.EXPERIMENTS_PATH)
        except httpx.TransportError as exc:
            raise ConnectionLost(f"notebook connection lost: {exc}") from exc
        try:
            payload = response.json()
        except ValueError as exc:
            raise ProviderError(f"non-JSON experiment listing: {exc}") from exc
        if not isinstance(payload, list):
            raise ProviderError("experiment listing is not an array")
        return payload

    def _experiment(self, conn: ElabFtwConnection, experiment_id: str) -> dict | None:
        path = self.EXPERIMENT_PATH.format(experiment_id=experiment_id)
        try:
            response = conn.client.get(path)
        except httpx.TransportError as exc:
            raise ConnectionLost(f"notebook connection lost: {exc}") from exc
        if response.status_code == 404:
            return None
        try:
            return response.json()
        except ValueError as exc:
            raise ProviderError(f"non-JSON experiment detail: {exc}") from exc
