"""Error taxonomy shared by all subsystems.

Every modeled failure carries a stable machine code and an HTTP status
class so the API layer can surface it without translation tables. The
``code`` values are part of the public API contract.
"""

from __future__ import annotations

from typing import Any


class LeoError(Exception):
    """Base class for every modeled failure."""

    code = "internal_error"
    status = 500

    def __init__(self, message: str, *, details: Any = None):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_payload(self) -> dict:
        payload = {"code": self.code, "message": self.message}
        if self.details is not None:
            payload["details"] = self.details
        return payload


# -- provider connection / contract ------------------------------------------

class ConnectFailed(LeoError):
    code = "connect_failed"
    status = 502


class AuthRejected(LeoError):
    code = "auth_rejected"
    status = 401


class ConfigMissing(LeoError):
    code = "config_missing"
    status = 422


class ConnectionLost(LeoError):
    code = "connection_lost"
    status = 502


class ProviderError(LeoError):
    code = "provider_error"
    status = 502


class CapabilityUnsupported(LeoError):
    code = "capability_unsupported"
    status = 422


class UnknownElement(LeoError):
    code = "unknown_element"
    status = 422

    def __init__(self, origin_id: str, message: str | None = None, *, details: Any = None):
        super().__init__(message or f"element {origin_id!r} not found", details=details)
        self.origin_id = origin_id


class UnknownFixture(LeoError):
    code = "unknown_fixture"
    status = 422


# -- registry -----------------------------------------------------------------

class DuplicateKind(LeoError):
    code = "duplicate_kind"
    status = 500


class UnknownKind(LeoError):
    code = "unknown_kind"
    status = 422


class InvalidHost(LeoError):
    code = "invalid_host"
    status = 422


class ValidationFailed(LeoError):
    """Instance validation probe failed; surfaces the probe's own code."""

    status = 422

    def __init__(self, cause: LeoError):
        super().__init__(cause.message, details=cause.details)
        self.cause = cause
        self.code = cause.code


class UnknownInstance(LeoError):
    code = "unknown_instance"
    status = 404


class InstanceInUse(LeoError):
    code = "instance_in_use"
    status = 422


# -- sessions -----------------------------------------------------------------

class EmptySecret(LeoError):
    code = "empty_secret"
    status = 500


class DecryptFailed(LeoError):
    code = "decrypt_failed"
    status = 400


class InvalidToken(LeoError):
    code = "invalid_token"
    status = 401


# -- links --------------------------------------------------------------------

class TooFewEndpoints(LeoError):
    code = "too_few_endpoints"
    status = 422


class DuplicateEndpoint(LeoError):
    code = "duplicate_endpoint"
    status = 422


class NotFound(LeoError):
    code = "not_found"
    status = 404


class StorageError(LeoError):
    code = "storage_error"
    status = 500


# -- tables / population ------------------------------------------------------

class UnsupportedTable(LeoError):
    code = "unsupported_table"
    status = 422


class MissingRequiredColumn(LeoError):
    code = "missing_required_column"
    status = 422

    def __init__(self, column: str):
        super().__init__(f"table has no {column!r} column", details={"column": column})
        self.column = column


class DuplicateColumn(LeoError):
    code = "duplicate_column"
    status = 422


class InvalidTargetType(LeoError):
    code = "invalid_target_type"
    status = 422


class TargetGone(LeoError):
    code = "target_gone"
    status = 404


class InvalidTableIndex(LeoError):
    code = "invalid_table_index"
    status = 422


class PopulationSourceMissing(LeoError):
    code = "missing_body_document"
    status = 422


class TargetNotLinked(LeoError):
    code = "target_not_linked"
    status = 422
