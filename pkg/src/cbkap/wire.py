"""Two-party key exchange over TCP.

Frame: type (1 byte) | payload length (u32, big-endian) | payload.
Both peers run the same script: send HELLO(sha256 of params), read the
peer's HELLO and abort on mismatch; swap PUBKEY frames; compute the
secret; swap DONE. A secret is returned only after DONE arrives.
"""
from __future__ import annotations

import logging
import socket
import struct
from typing import Callable

from . import codec as ser
from .errors import CbkapError, ProtocolError
from .protocol import PrivateKey, PublicKey, PublicParams, SharedSecret, public_key, shared_secret

log = logging.getLogger(__name__)

HELLO, PUBKEY, DONE = 0x01, 0x02, 0x03
FRAME_TYPES = {HELLO: "HELLO", PUBKEY: "PUBKEY", DONE: "DONE"}
MAX_PAYLOAD = 1 << 24
TIMEOUT = 30.0


def encode_frame(ftype: int, payload: bytes) -> bytes:
    if ftype not in FRAME_TYPES:
        raise ProtocolError(f"unknown frame type {ftype}")
    return struct.pack(">BI", ftype, len(payload)) + payload


def _recv_exact(sock: socket.socket, k: int) -> bytes:
    buf = bytearray()
    while len(buf) < k:
        chunk = sock.recv(k - len(buf))
        if not chunk:
            raise ProtocolError(f"connection closed after {len(buf)} of {k} bytes")
        buf += chunk
    return bytes(buf)


def recv_frame(sock: socket.socket) -> tuple[int, bytes]:
    ftype, length = struct.unpack(">BI", _recv_exact(sock, 5))
    if ftype not in FRAME_TYPES:
        raise ProtocolError(f"unknown frame type {ftype}")
    if length > MAX_PAYLOAD:
        raise ProtocolError(f"frame length {length} exceeds limit")
    return ftype, _recv_exact(sock, length)


def _expect(sock: socket.socket, want: int) -> bytes:
    ftype, payload = recv_frame(sock)
    if ftype != want:
        raise ProtocolError(f"expected {FRAME_TYPES[want]}, got {FRAME_TYPES[ftype]}")
    return payload


def run_session(sock: socket.socket, params: PublicParams, sk: PrivateKey) -> SharedSecret:
    """Drive one exchange on a connected socket."""
    digest = ser.params_hash(params)
    sock.sendall(encode_frame(HELLO, digest))
    peer_digest = _expect(sock, HELLO)
    if peer_digest != digest:
        raise ProtocolError("params hash mismatch")

    mine = public_key(params, sk)
    sock.sendall(encode_frame(PUBKEY, ser.serialize(mine)))
    raw = _expect(sock, PUBKEY)
    try:
        theirs = ser.deserialize(raw)
    except CbkapError as exc:
        raise ProtocolError(f"bad peer public key: {exc}") from None
    if not isinstance(theirs, PublicKey) or theirs.p != params.p or theirs.state.n != params.n:
        raise ProtocolError("peer public key does not match params")

    secret = shared_secret(params, sk, theirs)
    sock.sendall(encode_frame(DONE, b""))
    _expect(sock, DONE)
    return secret


def serve(port: int, params: PublicParams, sk: PrivateKey, host: str = "127.0.0.1",
          ready: Callable[[int], None] | None = None) -> SharedSecret:
    """Accept a single connection and run the exchange on it.

    ``ready`` receives the bound port (useful with ``port=0``).
    """
    with socket.create_server((host, port)) as srv:
        srv.settimeout(TIMEOUT)
        bound = srv.getsockname()[1]
        log.info("listening on %s:%d", host, bound)
        if ready:
            ready(bound)
        try:
            conn, addr = srv.accept()
        except OSError as exc:
            raise ProtocolError(f"accept failed: {exc}") from None
        with conn:
            conn.settimeout(TIMEOUT)
            log.info("connection from %s:%d", *addr[:2])
            try:
                return run_session(conn, params, sk)
            except OSError as exc:
                raise ProtocolError(f"socket error: {exc}") from None


def connect(host: str, port: int, params: PublicParams, sk: PrivateKey) -> SharedSecret:
    try:
        sock = socket.create_connection((host, port), timeout=TIMEOUT)
    except OSError as exc:
        raise ProtocolError(f"cannot connect to {host}:{port}: {exc}") from None
    with sock:
        try:
            return run_session(sock, params, sk)
        except OSError as exc:
            raise ProtocolError(f"socket error: {exc}") from None
