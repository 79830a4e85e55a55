"""Sessions with sealed credentials.

Login is delegated to a configured provider instance: whoever that
backend accepts is a user here. Accepted credentials are kept only in
AEAD-sealed form (AES-256-GCM under a key derived from the server
secret, 12-byte random nonce stored with the blob) so later requests
can re-open provider connections on the user's behalf. Plaintext exists
in memory only while connecting.
"""

from __future__ import annotations

import hashlib
import json
import secrets as _secrets
import threading
import time
from dataclasses import dataclass, field

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

from .errors import DecryptFailed, EmptySecret, InvalidToken

_NONCE_BYTES = 12


def derive_key(server_secret: bytes | str) -> bytes:
    """32-byte sealing key: the SHA-256 digest of the server secret."""
    if isinstance(server_secret, str):
        server_secret = server_secret.encode()
    if not server_secret:
        raise EmptySecret("server secret must be non-empty")
    return hashlib.sha256(server_secret).digest()


def seal(key: bytes, plaintext: bytes) -> bytes:
    """Encrypt with a fresh random nonce; blob = nonce || ciphertext || tag."""
    nonce = _secrets.token_bytes(_NONCE_BYTES)
    return nonce + AESGCM(key).encrypt(nonce, plaintext, None)


def unseal(key: bytes, blob: bytes) -> bytes:
    """Authenticate and decrypt a sealed blob."""
    if len(blob) < _NONCE_BYTES + 16:
        raise DecryptFailed("sealed blob is truncated")
    try:
        return AESGCM(key).decrypt(blob[:_NONCE_BYTES], blob[_NONCE_BYTES:], None)
    except InvalidTag:
        raise DecryptFailed("sealed blob failed authentication") from None


@dataclass
class Session:
    token: str
    username: str
    credentials_sealed: bytes
    auth_instance: str
    created_at: float
    last_seen: float = field(default=0.0)


class SessionStore:
    """Live sessions, in memory; tokens are 256-bit bearer secrets.

    A session stays valid until logout or until it has been idle for
    ``ttl_hours``. Lookups are cheap and concurrent; create/destroy are
    serialized per store.
    """

    def __init__(self, key: bytes, ttl_hours: float = 24.0, clock=time.time):
        if len(key) != 32:
            raise ValueError("sealing key must be exactly 32 bytes")
        self._key = key
        self._ttl_seconds = ttl_hours * 3600.0
        self._clock = clock
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, username: str, password: str, auth_instance: str) -> str:
        """Record a session for credentials a provider has just accepted."""
        blob = seal(self._key, json.dumps({"username": username, "password": password}).encode())
        now = self._clock()
        token = _secrets.token_hex(32)
        with self._lock:
            self._sessions[token] = Session(token, username, blob, auth_instance, now, now)
        return token

    def authorize(self, token: str) -> Session:
        with self._lock:
            session = self._sessions.get(token)
            if session is None:
                raise InvalidToken("unknown or expired session token")
            now = self._clock()
            if now - session.last_seen > self._ttl_seconds:
                del self._sessions[token]
                raise InvalidToken("session expired")
            session.last_seen = now
            return session

    def credentials(self, session: Session) -> tuple[str, str]:
        """Open the sealed credentials; use transiently and do not store."""
        data = json.loads(unseal(self._key, session.credentials_sealed))
        return data["username"], data["password"]

    def logout(self, token: str) -> None:
        with self._lock:
            if token not in self._sessions:
                raise InvalidToken("unknown or expired session token")
            del self._sessions[token]

    def live_count(self) -> int:
        with self._lock:
            return len(self._sessions)
