"""In-memory provider used for tests and demo deployments.

Hosts look like ``mock://world-<fixture>[/repo|/eln]``. The optional
path picks a facet: ``/repo`` exposes only the Project/Dataset/Image
hierarchy, ``/eln`` only the notebook experiments, and a bare host
exposes both. Facets of one fixture share world state, so metadata
written through one instance is readable through another — mirroring
two systems that a real deployment would run side by side.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence
from urllib.parse import urlparse

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
from ..errors import AuthRejected, ConnectFailed, UnknownElement
from .worlds import MockExperiment, MockImage, MockWorld, load_world

FIXTURE_USERNAME = "root"
FIXTURE_PASSWORD = "omero"

_FACETS = {"": "both", "repo": "repo", "eln": "eln"}


@dataclass
class MockConnection(ProviderConnection):
    world: MockWorld
    facet: str
    username: str


class MockProvider(Provider):
    validates_credentials = True

    def __init__(self):
        self._worlds: dict[str, MockWorld] = {}
        self._cache_lock = threading.Lock()

    def describe(self) -> ProviderDescriptor:
        return ProviderDescriptor(
            kind="mock",
            display_name="Mock provider",
            capabilities=frozenset(Capability),
            config_fields=("host",),
        )

    def connect(self, params: ConnectParams) -> MockConnection:
        self.require_config(params)
        fixture, facet = self._parse_host(params.host)
        if params.username != FIXTURE_USERNAME or params.password != FIXTURE_PASSWORD:
            raise AuthRejected("mock world rejected the credentials")
        with self._cache_lock:
            world = self._worlds.get(fixture)
            if world is None:
                world = load_world(fixture)
                self._worlds[fixture] = world
        return MockConnection(world, facet, params.username or "")

    @staticmethod
    def _parse_host(host: str) -> tuple[str, str]:
        parsed = urlparse(host)
        path = parsed.path.strip("/")
        if parsed.scheme != "mock" or not parsed.netloc.startswith("world-") or path not in _FACETS:
            raise ConnectFailed(f"no mock world at {host!r}")
        fixture = parsed.netloc[len("world-"):]
        try:
            load_world(fixture)
        except Exception:
            raise ConnectFailed(f"no mock world at {host!r}") from None
        return fixture, _FACETS[path]

    def get_elements(self, conn: MockConnection) -> ElementForest:
        roots: list[Element] = []
        if conn.facet in ("both", "repo"):
            for project in conn.world.projects:
                project_el = Element(project.origin_id, project.name, "Project")
                for dataset in project.datasets:
                    dataset_el = Element(dataset.origin_id, dataset.name, "Dataset")
                    dataset_el.children = [
                        Element(image.origin_id, image.name, "Image") for image in dataset.images
                    ]
                    project_el.children.append(dataset_el)
                roots.append(project_el)
        if conn.facet in ("both", "eln"):
            roots.extend(
                Element(exp.origin_id, exp.title, "Experiment") for exp in conn.world.experiments
            )
        return build_forest(roots)

    def get_metadata(self, conn: MockConnection, selected: Sequence[ElementRef]) -> MetadataBatch:
        if not selected:
            raise ValueError("selection must be non-empty")
        batch = MetadataBatch(records=[])
        for ref in selected:
            found = self._resolve(conn, ref)
            if found is None:
                batch.missing.append(ref)
            else:
                batch.records.append(self._record_for(conn.world, ref.element_type, found))
        return batch

    def get_body_document(self, conn: MockConnection, ref: ElementRef) -> str:
        found = self._resolve(conn, ref)
        if isinstance(found, MockExperiment):
            return found.body
        raise UnknownElement(ref.origin_id, f"{ref.origin_id!r} has no body document")

    def write_metadata(self, conn: MockConnection, plan: ResolvedPlan) -> WriteResult:
        result = WriteResult()
        for row in plan.rows:
            found = self._resolve(conn, row.ref)
            if not isinstance(found, MockImage):
                result.failures.append((row.row_index, f"image {row.ref.origin_id!r} not found"))
                continue
            if found.origin_id in conn.world.fail_writes_for:
                result.failures.append((row.row_index, "write refused by provider"))
                continue
            with conn.world.lock:
                groups = conn.world.annotations.setdefault(found.origin_id, {})
                if plan.signature in groups:
                    result.overwritten += 1
                groups[plan.signature] = row.pairs
            result.applied += 1
        return result

    def _resolve(self, conn: MockConnection, ref: ElementRef):
        """Find the world object a ref points at, honoring the facet."""
        if conn.facet in ("both", "repo"):
            for project in conn.world.projects:
                if ref.element_type == "Project" and project.origin_id == ref.origin_id:
                    return project
                for dataset in project.datasets:
                    if ref.element_type == "Dataset" and dataset.origin_id == ref.origin_id:
                        return dataset
                    if ref.element_type == "Image":
                        for image in dataset.images:
                            if image.origin_id == ref.origin_id:
                                return image
        if conn.facet in ("both", "eln"):
            for experiment in conn.world.experiments:
                if ref.element_type == "Experiment" and experiment.origin_id == ref.origin_id:
                    return experiment
        return None

    def _record_for(self, world: MockWorld, element_type: str, obj) -> MetadataRecord:
        if isinstance(obj, MockExperiment):
            return MetadataRecord(
                record_type="Experiment",
                name=obj.title,
                id=obj.origin_id,
                extras={"body": ExtraValue(obj.body, html=True)},
            )
        extras: dict[str, ExtraValue] = {}
        if isinstance(obj, MockImage):
            if obj.tags:
                extras["Tags"] = ExtraValue(", ".join(obj.tags))
            for pairs in world.annotations.get(obj.origin_id, {}).values():
                for key, value in pairs:
                    extras[key] = ExtraValue(value)
        return MetadataRecord(
            record_type=element_type,
            name=obj.name,
            id=obj.origin_id,
            extras=extras,
        )
