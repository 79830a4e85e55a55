"""Adapter for OMERO-style image repositories over their JSON API.

Authenticates per user session with the user's own credentials (CSRF
token fetch, then login). Browsing walks the three-tier hierarchy:
project listing, datasets per project, images per dataset. Key-value
metadata is written as one annotation group per table signature via an
idempotent PUT; the response's ``created`` flag distinguishes a fresh
group from a replacement.

Endpoint paths below are class attributes so a deployment facing a
repository with a different base layout can subclass and override; the
host URL itself may also carry a path prefix.
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
    ResolvedPlan,
    WriteResult,
    build_forest,
)
from ..errors import AuthRejected, ConnectFailed, ConnectionLost, ProviderError

_COLLECTIONS = {"Project": "projects", "Dataset": "datasets", "Image": "images"}


@dataclass
class OmeroConnection(ProviderConnection):
    client: httpx.Client


def _name_and_id(payload: dict, element_type: str) -> tuple[str, int]:
    if "@id" not in payload:
        raise ProviderError(f"{element_type} record without '@id': {payload!r}")
    if "Name" not in payload:
        raise ProviderError(f"{element_type} record without 'Name': {payload!r}")
    return payload["Name"], payload["@id"]


def omero_forest(
    projects: list[dict],
    datasets_by_project: dict[int, list[dict]],
    images_by_dataset: dict[int, list[dict]],
) -> ElementForest:
    """Pure mapping from listing payloads to the element forest.

    origin_ids are namespaced by type ("Image:42") because raw numeric
    ids collide across object types.
    """
    roots = []
    for project_payload in projects:
        name, project_id = _name_and_id(project_payload, "Project")
        project = Element(f"Project:{project_id}", name, "Project")
        for dataset_payload in datasets_by_project.get(project_id, []):
            name, dataset_id = _name_and_id(dataset_payload, "Dataset")
            dataset = Element(f"Dataset:{dataset_id}", name, "Dataset")
            for image_payload in images_by_dataset.get(dataset_id, []):
                name, image_id = _name_and_id(image_payload, "Image")
                dataset.children.append(Element(f"Image:{image_id}", name, "Image"))
            project.children.append(dataset)
        roots.append(project)
    return build_forest(roots)


class OmeroProvider(Provider):
    validates_credentials = True

    TOKEN_PATH = "/api/v0/token/"
    LOGIN_PATH = "/api/v0/login/"
    PROJECTS_PATH = "/api/v0/m/projects/"
    PROJECT_DATASETS_PATH = "/api/v0/m/projects/{project_id}/datasets/"
    DATASET_IMAGES_PATH = "/api/v0/m/datasets/{dataset_id}/images/"
    OBJECT_PATH = "/api/v0/m/{collection}/{object_id}/"
    MAP_ANNOTATIONS_PATH = "/api/v0/m/images/{image_id}/mapannotations/"
    MAP_ANNOTATION_GROUP_PATH = "/api/v0/m/images/{image_id}/mapannotations/{namespace}/"

    def __init__(self, transport: httpx.BaseTransport | None = None, timeout: float = 15.0):
        self._transport = transport
        self._timeout = timeout

    def describe(self) -> ProviderDescriptor:
        return ProviderDescriptor(
            kind="omero",
            display_name="OMERO image repository",
            capabilities=frozenset(
                {Capability.BROWSE, Capability.READ_METADATA, Capability.WRITE_METADATA}
            ),
            config_fields=("host",),
        )

    def connect(self, params: ConnectParams) -> OmeroConnection:
        self.require_config(params)
        client = httpx.Client(
            base_url=params.host, transport=self._transport, timeout=self._timeout
        )
        try:
            token = self._json(client.get(self.TOKEN_PATH)).get("data")
            response = client.post(
                self.LOGIN_PATH,
                data={"username": params.username or "", "password": params.password or ""},
                headers={"X-CSRFToken": str(token)},
            )
        except httpx.TransportError as exc:
            client.close()
            raise ConnectFailed(f"cannot reach {params.host}: {exc}") from exc
        if response.status_code in (401, 403):
            client.close()
            raise AuthRejected("repository rejected the credentials")
        payload = self._json(response)
        if not payload.get("success"):
            client.close()
            raise AuthRejected("repository rejected the credentials")
        return OmeroConnection(client)

    def get_elements(self, conn: OmeroConnection) -> ElementForest:
        projects = self._data(conn, self.PROJECTS_PATH)
        datasets_by_project: dict[int, list[dict]] = {}
        images_by_dataset: dict[int, list[dict]] = {}
        for project in projects:
            _, project_id = _name_and_id(project, "Project")
            datasets = self._data(conn, self.PROJECT_DATASETS_PATH.format(project_id=project_id))
            datasets_by_project[project_id] = datasets
            for dataset in datasets:
                _, dataset_id = _name_and_id(dataset, "Dataset")
                images_by_dataset[dataset_id] = self._data(
                    conn, self.DATASET_IMAGES_PATH.format(dataset_id=dataset_id)
                )
        return omero_forest(projects, datasets_by_project, images_by_dataset)

    def get_metadata(self, conn: OmeroConnection, selected: Sequence[ElementRef]) -> MetadataBatch:
        if not selected:
            raise ValueError("selection must be non-empty")
        batch = MetadataBatch(records=[])
        for ref in selected:
            record = self._fetch_record(conn, ref)
            if record is None:
                batch.missing.append(ref)
            else:
                batch.records.append(record)
        return batch

    def write_metadata(self, conn: OmeroConnection, plan: ResolvedPlan) -> WriteResult:
        result = WriteResult()
        for row in plan.rows:
            image_id = self._object_id(row.ref.origin_id)
            path = self.MAP_ANNOTATION_GROUP_PATH.format(
                image_id=image_id, namespace=plan.signature
            )
            try:
                response = conn.client.put(path, json={"pairs": [list(p) for p in row.pairs]})
            except httpx.TransportError as exc:
                result.failures.append((row.row_index, f"write failed: {exc}"))
                continue
            if response.status_code >= 400:
                result.failures.append(
                    (row.row_index, f"write rejected with status {response.status_code}")
                )
                continue
            if not self._json(response).get("created", False):
                result.overwritten += 1
            result.applied += 1
        return result

    # -- helpers ---------------------------------------------------------

    def _fetch_record(self, conn: OmeroConnection, ref: ElementRef) -> MetadataRecord | None:
        collection = _COLLECTIONS.get(ref.element_type)
        if collection is None:
            return None
        object_id = self._object_id(ref.origin_id)
        path = self.OBJECT_PATH.format(collection=collection, object_id=object_id)
        try:
            response = conn.client.get(path)
        except httpx.TransportError as exc:
            raise ConnectionLost(f"repository connection lost: {exc}") from exc
        if response.status_code == 404:
            return None
        payload = self._json(response).get("data", {})
        name, numeric_id = _name_and_id(payload, ref.element_type)
        extras: dict[str, ExtraValue] = {}
        if ref.element_type == "Image":
            annotations_path = self.MAP_ANNOTATIONS_PATH.format(image_id=object_id)
            for group in self._data(conn, annotations_path):
                for key, value in group.get("pairs", []):
                    extras[str(key)] = ExtraValue(str(value))
        return MetadataRecord(
            record_type=ref.element_type,
            name=name,
            id=ref.origin_id,
            extras=extras,
        )

    def _data(self, conn: OmeroConnection, path: str) -> list[dict]:
        try:
            response = conn.client.get(path)
        except httpx.TransportError as exc:
            raise ConnectionLost(f"repository connection lost: {exc}") from exc
        payload = self._json(response)
        data = payload.get("data")
        if not isinstance(data, list):
            raise ProviderError(f"listing at {path!r} has no 'data' array")
        return data

    @staticmethod
    def _json(response: httpx.Response) -> dict:
        try:
            return response.json()
        except ValueError as exc:
            raise ProviderError(f"non-JSON response from repository: {exc}") from exc

    @staticmethod
    def _object_id(origin_id: str) -> str:
        _, _, object_id = origin_id.partition(":")
        if not object_id:
            raise ProviderError(f"malformed origin_id {origin_id!r}")
        return object_id
