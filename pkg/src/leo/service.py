"""Session-aware facade over all subsystems.

The HTTP layer (and tests) talk to a Service; everything underneath is
session-agnostic. All provider traffic for a request runs with the
requesting user's unsealed credentials plus the instance's unsealed
API key, both held only for the duration of the call.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence

from .auth import Session, SessionStore, derive_key
from .config import Config
from .contract import (
    Capability,
    ConnectParams,
    ElementForest,
    ElementRef,
    MetadataRecord,
    Provider,
    ProviderConnection,
    validate_forest,
)
from .errors import (
    AuthRejected,
    CapabilityUnsupported,
    ConfigMissing,
    ConnectFailed,
    InstanceInUse,
    LeoError,
    PopulationSourceMissing,
    TargetNotLinked,
    UnknownElement,
    UnknownInstance,
    ValidationFailed,
)
from .links import Link, LinkEndpoint, LinkStore, check_endpoint_set
from .population import PopulationReport, build_report, resolve_rows, validate_mapping
from .registry import InstanceStore, ProviderInstance, ProviderRegistry, require_absolute_url
from .storage import Database
from .tables import TableExtraction, extract_tables


@dataclass(frozen=True)
class EndpointSpec:
    """Client-supplied endpoint selection (no title yet)."""

    instance_id: str
    origin_id: str
    element_type: str


@dataclass
class EndpointDetail:
    endpoint: LinkEndpoint
    instance_display_name: str
    metadata: MetadataRecord | None = None
    error: dict | None = None

    def to_json(self) -> dict:
        payload = self.endpoint.to_json()
        payload["instance_display_name"] = self.instance_display_name
        payload["metadata"] = self.metadata.to_json() if self.metadata else None
        payload["error"] = self.error
        return payload


class Service:
    def __init__(self, config: Config, providers: Sequence[Provider] | None = None):
        self.config = config
        key = derive_key(config.secret)
        self.registry = ProviderRegistry.discover(providers)
        self.db = Database(config.db_path)
        self.instances = InstanceStore(self.db, key)
        self.sessions = SessionStore(key, ttl_hours=config.session_ttl_hours)
        self.links = LinkStore(self.db)
        self.auth_instance_id = config.auth_instance
        self._populate_locks: dict[str, threading.Lock] = {}
        self._populate_locks_guard = threading.Lock()

    # -- auth -------------------------------------------------------------

    def login(self, username: str, password: str, instance_id: str | None = None) -> str:
        instance_id = instance_id or self.auth_instance_id
        if not instance_id:
            raise UnknownInstance("no authentication instance configured")
        instance = self.instances.get(instance_id)
        provider = self.registry.resolve(instance.kind)
        if not provider.validates_credentials:
            raise AuthRejected(
                f"instances of kind {instance.kind!r} cannot validate user credentials"
            )
        provider.connect(self._params(instance, username, password))
        return self.sessions.create(username, password, instance_id)

    def logout(self, token: str) -> None:
        self.sessions.logout(token)

    def authorize(self, token: str) -> Session:
        return self.sessions.authorize(token)

    # -- instances ----------------------------------------------------------

    def create_instance(self, session: Session, *, display_name: str, kind: str,
                        host: str, api_key: str | None = None) -> ProviderInstance:
        provider = self.registry.resolve(kind)
        require_absolute_url(host)
        username, password = self.sessions.credentials(session)
        try:
            provider.connect(ConnectParams(
                host=host, username=username, password=password, api_key=api_key))
        except (ConnectFailed, AuthRejected, ConfigMissing) as exc:
            raise ValidationFailed(exc) from exc
        return self.instances.create(
            display_name=display_name, kind=kind, host=host, api_key=api_key)

    def bootstrap_instance(self, *, display_name: str, kind: str, host: str,
                           api_key: str | None = None) -> ProviderInstance:
        """Deployment-time instance creation: no session, no live probe.

        First login against the instance performs the real validation.
        """
        self.registry.resolve(kind)
        return self.instances.create(
            display_name=display_name, kind=kind, host=host, api_key=api_key)

    def list_instances(self, session: Session) -> list[ProviderInstance]:
        return self.instances.list()

    def delete_instance(self, session: Session, instance_id: str, cascade: bool = False) -> None:
        self.instances.get(instance_id)
        referencing = self.links.links_referencing(instance_id)
        if referencing and not cascade:
            raise InstanceInUse(
                f"instance {instance_id!r} is referenced by {len(referencing)} link(s)",
                details={"links": referencing},
            )
        for link_id in referencing:
            self.links.delete(link_id)
        self.instances.delete(instance_id)

    def instance_elements(self, session: Session, instance_id: str) -> ElementForest:
        instance = self.instances.get(instance_id)
        provider, conn = self._connect(session, instance)
        forest = provider.get_elements(conn)
        validate_forest(forest)
        return forest

    # -- links --------------------------------------------------------------

    def create_link(self, session: Session, endpoints: Sequence[EndpointSpec]) -> Link:
        check_endpoint_set(endpoints)
        verified: list[LinkEndpoint] = []
        for spec in endpoints:
            instance = self.instances.get(spec.instance_id)
            provider, conn = self._connect(session, instance)
            record = provider.get_one_metadata(
                conn, ElementRef(spec.origin_id, spec.element_type))
            verified.append(LinkEndpoint(
                instance_id=spec.instance_id,
                origin_id=spec.origin_id,
                element_type=spec.element_type,
                title_snapshot=record.name,
            ))
        return self.links.create(verified, created_by=session.username)

    def list_links(self, session: Session) -> list[dict]:
        names = {i.instance_id: i.display_name for i in self.instances.list()}
        summaries = []
        for link in self.links.list():
            summaries.append({
                "link_id": link.link_id,
                "created_by": link.created_by,
                "created_at": link.created_at,
                "endpoints": [
                    {
                        "title_snapshot": e.title_snapshot,
                        "element_type": e.element_type,
                        "instance_display_name": names.get(e.instance_id, e.instance_id),
                    }
                    for e in link.endpoints
                ],
            })
        return summaries

    def link_detail(self, session: Session, link_id: str) -> dict:
        link = self.links.get(link_id)
        details = []
        for endpoint in link.endpoints:
            detail = EndpointDetail(endpoint, endpoint.instance_id)
            try:
                instance = self.instances.get(endpoint.instance_id)
                detail.instance_display_name = instance.display_name
                provider, conn = self._connect(session, instance)
                detail.metadata = provider.get_one_metadata(
                    conn, ElementRef(endpoint.origin_id, endpoint.element_type))
            except LeoError as exc:
                detail.error = exc.to_payload()
            details.append(detail)
        return {
            "link_id": link.link_id,
            "created_by": link.created_by,
            "created_at": link.created_at,
            "endpoints": [d.to_json() for d in details],
        }

    def delete_link(self, session: Session, link_id: str) -> None:
        self.links.delete(link_id)

    # -- population -----------------------------------------------------------

    def link_tables(self, session: Session, link_id: str) -> TableExtraction:
        link = self.links.get(link_id)
        _, body = self._body_document(session, link)
        return extract_tables(body)

    def populate(self, session: Session, link_id: str, table_index: int,
                 target: EndpointSpec) -> PopulationReport:
        with self._populate_lock(link_id):
            link = self.links.get(link_id)
            target_endpoint = self._require_linked(link, target)
            _, body = self._body_document(session, link)
            table = extract_tables(body).entry(table_index)
            plan = validate_mapping(table, target_endpoint)

            instance = self.instances.get(target_endpoint.instance_id)
            provider, conn = self._connect(session, instance)
            if not provider.describe().supports(Capability.WRITE_METADATA):
                raise CapabilityUnsupported(
                    f"provider {instance.kind!r} does not accept metadata writes")
            resolution = resolve_rows(plan, provider.get_elements(conn))
            write_result = provider.write_metadata(conn, resolution.plan)
            return build_report(
                total_rows=len(table.rows),
                resolution=resolution,
                applied=write_result.applied,
                overwritten=write_result.overwritten,
                write_failures=write_result.failures,
            )

    # -- internals --------------------------------------------------------------

    def _params(self, instance: ProviderInstance, username: str | None,
                password: str | None) -> ConnectParams:
        return ConnectParams(
            host=instance.host,
            username=username,
            password=password,
            api_key=self.instances.open_api_key(instance),
        )

    def _connect(self, session: Session,
                 instance: ProviderInstance) -> tuple[Provider, ProviderConnection]:
        provider = self.registry.resolve(instance.kind)
        username, password = self.sessions.credentials(session)
        return provider, provider.connect(self._params(instance, username, password))

    def _body_document(self, session: Session, link: Link) -> tuple[LinkEndpoint, str]:
        """The link's single notebook-entry endpoint and its HTML body.

        Candidates are endpoints whose provider kind can serve bodies;
        with several candidate endpoints (e.g. two notebook instances)
        exactly one must actually resolve to a document.
        """
        candidates = [
            e for e in link.endpoints
            if self.registry.resolve(
                self.instances.get(e.instance_id).kind
            ).describe().supports(Capability.BODY_DOCUMENT)
        ]
        found: list[tuple[LinkEndpoint, str]] = []
        for endpoint in candidates:
            instance = self.instances.get(endpoint.instance_id)
            provider, conn = self._connect(session, instance)
            try:
                body = provider.get_body_document(
                    conn, ElementRef(endpoint.origin_id, endpoint.element_type))
            except UnknownElement:
                continue
            found.append((endpoint, body))
        if len(found) != 1:
            raise PopulationSourceMissing(
                f"link must contain exactly one document-bearing endpoint, found {len(found)}")
        return found[0]

    @staticmethod
    def _require_linked(link: Link, target: EndpointSpec) -> LinkEndpoint:
        for endpoint in link.endpoints:
            if endpoint.identity == (target.instance_id, target.origin_id, target.element_type):
                return endpoint
        raise TargetNotLinked(
            f"{target.origin_id!r} is not an endpoint of link {link.link_id!r}")

    def _populate_lock(self, link_id: str) -> threading.Lock:
        with self._populate_locks_guard:
            return self._populate_locks.setdefault(link_id, threading.Lock())
