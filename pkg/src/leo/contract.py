"""Provider-neutral contract every data-provider adapter implements.

A provider exposes a forest of linkable elements, metadata for selected
elements, optionally the HTML body of an element (lab-notebook entries),
and optionally key-value metadata writes. Adapters translate their
backend's wire format into these shapes; nothing outside this module may
depend on a specific backend.

``local_id`` values are request-scoped: they exist only to let a client
address elements inside one response and must never be persisted. Stable
selection handles are ``(origin_id, element_type)`` pairs (`ElementRef`).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import ClassVar, Iterator, Sequence

from .errors import CapabilityUnsupported, ConfigMissing, ProviderError, UnknownElement


class Capability(str, Enum):
    BROWSE = "browse"
    READ_METADATA = "read_metadata"
    WRITE_METADATA = "write_metadata"
    BODY_DOCUMENT = "body_document"


@dataclass(frozen=True)
class ProviderDescriptor:
    """Static self-description of a provider kind."""

    kind: str
    display_name: str
    capabilities: frozenset[Capability]
    config_fields: tuple[str, ...]

    def __post_init__(self):
        if not self.kind:
            raise ValueError("provider kind must be non-empty")
        if Capability.BROWSE not in self.capabilities:
            raise ValueError(f"provider {self.kind!r} must at least support browsing")

    def supports(self, capability: Capability) -> bool:
        return capability in self.capabilities

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "display_name": self.display_name,
            "capabilities": sorted(c.value for c in self.capabilities),
            "config_fields": list(self.config_fields),
        }


@dataclass(frozen=True)
class ElementRef:
    """Stable handle for one element: provider-internal id plus its type."""

    origin_id: str
    element_type: str

    def __post_init__(self):
        if not self.origin_id or not self.element_type:
            raise ValueError("ElementRef fields must be non-empty")


@dataclass
class Element:
    """One linkable object in a provider's element forest.

    ``parent`` holds the parent element's local_id, or None for roots;
    the string sentinel some backends use for "no parent" is never
    represented here.
    """

    origin_id: str
    title: str
    element_type: str
    local_id: int = 0
    parent: int | None = None
    children: list[Element] = field(default_factory=list)

    @property
    def ref(self) -> ElementRef:
        return ElementRef(self.origin_id, self.element_type)

    def to_json(self) -> dict:
        payload = {
            "origin_id": self.origin_id,
            "title": self.title,
            "type": self.element_type,
            "id": self.local_id,
        }
        if self.parent is not None:
            payload["parent"] = self.parent
        if self.children:
            payload["children"] = [child.to_json() for child in self.children]
        return payload


@dataclass
class ElementForest:
    """Roots of one get_elements response, local_ids already assigned."""

    roots: list[Element]

    def __iter__(self) -> Iterator[Element]:
        stack = list(reversed(self.roots))
        while stack:
            element = stack.pop()
            yield element
            stack.extend(reversed(element.children))

    def __len__(self) -> int:
        return sum(1 for _ in self)

    def find(self, ref: ElementRef) -> Element | None:
        for element in self:
            if element.origin_id == ref.origin_id and element.element_type == ref.element_type:
                return element
        return None

    def to_json(self) -> dict:
        return {"roots": [root.to_json() for root in self.roots]}


def build_forest(roots: list[Element]) -> ElementForest:
    """Assign request-scoped local_ids (pre-order, from 1) and parent refs."""

    counter = 1

    def assign(element: Element, parent: int | None):
        nonlocal counter
        element.local_id = counter
        element.parent = parent
        counter += 1
        for child in element.children:
            assign(child, element.local_id)

    for root in roots:
        assign(root, None)
    return ElementForest(roots)


def validate_forest(forest: ElementForest) -> None:
    """Check the forest invariants in one traversal; raises ProviderError.

    Verifies: unique local_ids, non-empty origin_ids, parent references
    that resolve to the actual parent, and absence of cycles and shared
    subtrees (each element reachable exactly once from the roots).
    """

    seen_ids: set[int] = set()
    seen_objects: set[int] = set()
    stack: list[tuple[Element, int | None]] = [(root, None) for root in forest.roots]
    while stack:
        element, parent_id = stack.pop()
        if id(element) in seen_objects:
            raise ProviderError(f"element {element.origin_id!r} reachable twice (not a forest)")
        seen_objects.add(id(element))
        if not element.origin_id:
            raise ProviderError("element with empty origin_id")
        if not element.element_type:
            raise ProviderError(f"element {element.origin_id!r} has empty type")
        if element.local_id in seen_ids:
            raise ProviderError(f"duplicate local_id {element.local_id}")
        seen_ids.add(element.local_id)
        if element.parent != parent_id:
            raise ProviderError(
                f"element {element.origin_id!r} parent={element.parent} "
                f"does not match actual parent {parent_id}"
            )
        for child in element.children:
            stack.append((child, element.local_id))


@dataclass(frozen=True)
class ExtraValue:
    """Metadata value tagged by representation: plain text or HTML."""

    value: str
    html: bool = False

    def to_json(self) -> dict:
        return {"value": self.value, "html": self.html}


@dataclass
class MetadataRecord:
    """Type/Name/ID core plus free-form extra keys."""

    record_type: str
    name: str
    id: str
    extras: dict[str, ExtraValue] = field(default_factory=dict)

    def __post_init__(self):
        if not self.record_type or not self.name or not self.id:
            raise ValueError("MetadataRecord requires non-empty type, name and id")

    def to_json(self) -> dict:
        return {
            "type": self.record_type,
            "name": self.name,
            "id": self.id,
            "extras": {key: value.to_json() for key, value in self.extras.items()},
        }


@dataclass
class MetadataBatch:
    """get_metadata result: records in input order, unresolvable refs kept."""

    records: list[MetadataRecord]
    missing: list[ElementRef] = field(default_factory=list)


@dataclass(frozen=True)
class ResolvedRow:
    """One table row resolved to a target image."""

    row_index: int
    ref: ElementRef
    pairs: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class ResolvedPlan:
    """Write-ready plan: rows resolved against one provider instance.

    ``signature`` fingerprints the source table's headers; providers
    replace any existing annotation group with the same signature.
    """

    signature: str
    rows: tuple[ResolvedRow, ...]


@dataclass
class WriteResult:
    """Per-image outcome of one write_metadata call."""

    applied: int = 0
    overwritten: int = 0
    failures: list[tuple[int, str]] = field(default_factory=list)  # (row_index, message)


@dataclass(frozen=True)
class ConnectParams:
    """Session credentials plus one instance's configuration."""

    host: str
    username: str | None = None
    password: str | None = None
    api_key: str | None = None

    def get(self, name: str) -> str | None:
        return getattr(self, name, None)


class ProviderConnection:
    """Opaque handle scoped to one user session and one instance."""


class Provider(ABC):
    """Interface every data-provider adapter implements.

    Implementations must tolerate concurrent calls on distinct
    connections; a single connection is used by one request at a time.
    """

    # True when connect() genuinely verifies username/password, making the
    # provider usable as the login authority.
    validates_credentials: ClassVar[bool] = False

    @abstractmethod
    def describe(self) -> ProviderDescriptor:
        """Static descriptor; deterministic across calls."""

    @abstractmethod
    def connect(self, params: ConnectParams) -> ProviderConnection:
        """Open a connection for one session against one instance."""

    @abstractmethod
    def get_elements(self, conn: ProviderConnection) -> ElementForest:
        """Forest of linkable objects; local_ids assigned per response."""

    @abstractmethod
    def get_metadata(self, conn: ProviderConnection, selected: Sequence[ElementRef]) -> MetadataBatch:
        """Metadata for selected refs; unresolvable refs land in .missing."""

    def get_body_document(self, conn: ProviderConnection, ref: ElementRef) -> str:
        raise CapabilityUnsupported(f"{self.describe().kind} has no body documents")

    def write_metadata(self, conn: ProviderConnection, plan: ResolvedPlan) -> WriteResult:
        raise CapabilityUnsupported(f"{self.describe().kind} does not accept metadata writes")

    def require_config(self, params: ConnectParams) -> None:
        for name in self.describe().config_fields:
            if not params.get(name):
                raise ConfigMissing(f"instance config is missing required field {name!r}")

    def get_one_metadata(self, conn: ProviderConnection, ref: ElementRef) -> MetadataRecord:
        batch = self.get_metadata(conn, [ref])
        if batch.missing:
            raise UnknownElement(ref.origin_id)
        return batch.records[0]
