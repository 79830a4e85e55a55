"""Key derivation, sealed-credential round-trips, session lifecycle."""

from __future__ import annotations

import os

import pytest
from hypothesis import given, strategies as st

from leo.auth import SessionStore, derive_key, seal, unseal
from leo.errors import DecryptFailed, EmptySecret, InvalidToken

# Frozen reference digests, computed with coreutils sha256sum; the first
# two are also published test vectors.
REFERENCE_DIGESTS = {
    "abc": "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
    "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq":
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1",
    "correct horse battery staple":
        "c4bbcb1fbec99d65bf59d85c8cb62ee2db963f0fe106f483d9afa73bd4e39a8a",
}

KEY = derive_key("test secret")


@pytest.mark.parametrize("secret,digest", REFERENCE_DIGESTS.items())
def test_derive_key_matches_reference_digests(secret, digest):
    assert derive_key(secret).hex() == digest
    assert derive_key(secret.encode()).hex() == digest


def test_derive_key_is_deterministic_and_32_bytes():
    assert derive_key("abc") == derive_key("abc")
    assert len(derive_key("abc")) == 32


def test_empty_secret_aborts():
    with pytest.raises(EmptySecret):
        derive_key("")
    with pytest.raises(EmptySecret):
        derive_key(b"")


def test_seal_round_trip():
    assert unseal(KEY, seal(KEY, b"user:pass")) == b"user:pass"


def test_seal_uses_fresh_nonces():
    assert seal(KEY, b"same") != seal(KEY, b"same")


def test_unseal_rejects_any_flipped_byte():
    blob = bytearray(seal(KEY, b"payload"))
    for position in range(len(blob)):
        corrupted = bytearray(blob)
        corrupted[position] ^= 0x01
        with pytest.raises(DecryptFailed):
            unseal(KEY, bytes(corrupted))


def test_unseal_rejects_wrong_key_and_truncation():
    blob = seal(KEY, b"payload")
    with pytest.raises(DecryptFailed):
        unseal(derive_key("other secret"), blob)
    with pytest.raises(DecryptFailed):
        unseal(KEY, blob[:10])


@given(st.binary(max_size=256))
def test_seal_round_trips_arbitrary_payloads(payload):
    assert unseal(KEY, seal(KEY, payload)) == payload


# -- session store -------------------------------------------------------

def test_session_lifecycle():
    store = SessionStore(KEY)
    token = store.create("alice", "s3cret", "ins-1")
    assert len(token) == 64  # 256-bit hex
    session = store.authorize(token)
    assert session.username == "alice"
    assert store.credentials(session) == ("alice", "s3cret")
    assert store.live_count() == 1
    store.logout(token)
    assert store.live_count() == 0
    with pytest.raises(InvalidToken):
        store.authorize(token)
    with pytest.raises(InvalidToken):
        store.logout(token)


def test_unknown_token_rejected():
    store = SessionStore(KEY)
    with pytest.raises(InvalidToken):
        store.authorize(os.urandom(32).hex())


def test_sessions_expire_after_idle_ttl():
    now = [1000.0]
    store = SessionStore(KEY, ttl_hours=1.0, clock=lambda: now[0])
    token = store.create("bob", "pw", "ins-1")
    now[0] += 1800
    store.authorize(token)  # refreshes last_seen
    now[0] += 3599
    store.authorize(token)
    now[0] += 3601
    with pytest.raises(InvalidToken):
        store.authorize(token)
    assert store.live_count() == 0


def test_sealed_blob_does_not_contain_plaintext():
    store = SessionStore(KEY)
    token = store.create("alice", "hunter2-plaintext", "ins-1")
    session = store.authorize(token)
    assert b"hunter2-plaintext" not in session.credentials_sealed
