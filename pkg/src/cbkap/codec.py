"""Canonical binary encoding (and a JSON view) of protocol objects.

Layout, all integers big-endian::

    header   "AEKE" | version 0x01 | tag | n (u16) | p (u32)
    element  W = ceil(bits(p) / 8) bytes
    matrix   n*n elements, row-major (n comes from the header)
    perm     n one-based images, u16 each
    word     letter count (u32), then per letter index (u16) and sign byte (0x00 +, 0x01 -)

    tag 0x01 params   mode u8 (0 defended, 1 baseline) | deg_m u16 | word_len_keys u32 |
                      tau: count u16 + elements | A gens: count u32 + words |
                      B gens: count u32 + words | beta word | m matrix
    tag 0x02 pubkey   matrix | perm
    tag 0x03 privkey  side u8 (0 alice, 1 bob) | coeffs: count u16 + elements |
                      n_b matrix | word
    tag 0x04 secret   matrix | perm

Decoding is strict: anything non-canonical (out-of-range residues, unknown
tags, trailing bytes) is a ParseError carrying the byte offset.
"""
from __future__ import annotations

import hashlib
import json
import struct

import numpy as np

from .cbraid import BraidLetter, BraidWord, EState, Permutation, TauVector
from .errors import CbkapError, ParseError, UsageError
from .ff import GF
from .protocol import MODES, SIDES, PrivateKey, PublicKey, PublicParams, SharedSecret

MAGIC = b"AEKE"
VERSION = 1
TAG_PARAMS, TAG_PUBKEY, TAG_PRIVKEY, TAG_SECRET = 1, 2, 3, 4
_TAGS = {PublicParams: TAG_PARAMS, PublicKey: TAG_PUBKEY, PrivateKey: TAG_PRIVKEY,
         SharedSecret: TAG_SECRET}


class _Writer:
    def __init__(self, field: GF):
        self.field = field
        self.parts: list[bytes] = []

    def u8(self, v):
        self.parts.append(struct.pack(">B", v))

    def u16(self, v):
        self.parts.append(struct.pack(">H", v))

    def u32(self, v):
        self.parts.append(struct.pack(">I", v))

    def elem(self, v):
        self.parts.append(self.field.encode(v))

    def matrix(self, a):
        for v in np.asarray(a).ravel():
            self.elem(int(v))

    def perm(self, g: Permutation):
        for v in g.images:
            self.u16(v)

    def word(self, w: BraidWord):
        self.u32(len(w))
        for i, s in w:
            self.u16(i)
            self.u8(0 if s == 1 else 1)

    def words(self, ws):
        self.u32(len(ws))
        for w in ws:
            self.word(w)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0
        self.field: GF | None = None
        self.n = 0

    def take(self, k: int) -> bytes:
        if self.pos + k > len(self.data):
            raise ParseError(f"truncated input, needed {k} more bytes", self.pos)
        out = self.data[self.pos:self.pos + k]
        self.pos += k
        return out

    def u8(self):
        return self.take(1)[0]

    def u16(self):
        return struct.unpack(">H", self.take(2))[0]

    def u32(self):
        return struct.unpack(">I", self.take(4))[0]

    def elem(self) -> int:
        at = self.pos
        v = int.from_bytes(self.take(self.field.width), "big")
        if v >= self.field.p:
            raise ParseError(f"field element {v} >= p={self.field.p}", at)
        return v

    def matrix(self) -> np.ndarray:
        return np.array([self.elem() for _ in range(self.n * self.n)],
                        dtype=np.int64).reshape(self.n, self.n)

    def perm(self) -> Permutation:
        at = self.pos
        imgs = tuple(self.u16() for _ in range(self.n))
        try:
            return Permutation(imgs)
        except UsageError as exc:
            raise ParseError(str(exc), at) from None

    def word(self) -> BraidWord:
        count = self.u32()
        if count * 3 > len(self.data) - self.pos:
            raise ParseError(f"word claims {count} letters", self.pos - 4)
        letters = []
        for _ in range(count):
            at = self.pos
            i, s = self.u16(), self.u8()
            if s > 1 or not 1 <= i < self.n:
                raise ParseError(f"bad letter ({i}, sign byte {s})", at)
            letters.append(BraidLetter(i, 1 if s == 0 else -1))
        return BraidWord(tuple(letters))

    def words(self) -> tuple[BraidWord, ...]:
        count = self.u32()
        if count > len(self.data) - self.pos:
            raise ParseError(f"list claims {count} words", self.pos - 4)
        return tuple(self.word() for _ in range(count))


def serialize(obj) -> bytes:
    tag = _TAGS.get(type(obj))
    if tag is None:
        raise UsageError(f"cannot serialize {type(obj).__name__}")
    p = obj.p
    field = GF(p)
    w = _Writer(field)
    if tag == TAG_PARAMS:
        n = obj.n
        w.u8(MODES.index(obj.mode))
        w.u16(obj.deg_m)
        w.u32(obj.word_len_keys)
        w.u16(len(obj.tau))
        for t in obj.tau.values:
            w.elem(t)
        w.words(obj.a_generators)
        w.words(obj.b_generators)
        w.word(obj.beta)
        w.matrix(obj.m)
    elif tag == TAG_PRIVKEY:
        n = obj.n_matrix.shape[0]
        w.u8(SIDES.index(obj.side))
        w.u16(len(obj.coeffs))
        for c in obj.coeffs:
            w.elem(c)
        w.matrix(obj.n_matrix)
        w.word(obj.word)
    else:
        n = obj.state.n
        w.matrix(obj.state.matrix)
        w.perm(obj.state.perm)
    header = MAGIC + struct.pack(">BBHI", VERSION, tag, n, p)
    return header + b"".join(w.parts)


def deserialize(data: bytes):
    r = _Reader(bytes(data))
    if r.take(4) != MAGIC:
        raise ParseError("bad magic", 0)
    version, tag = r.u8(), r.u8()
    if version != VERSION:
        raise ParseError(f"unsupported version {version}", 4)
    if tag not in _TAGS.values():
        raise ParseError(f"unknown object tag {tag}", 5)
    r.n, p = r.u16(), r.u32()
    try:
        r.field = GF(p)
    except UsageError as exc:
        raise ParseError(str(exc), 8) from None
    if r.n < 2:
        raise ParseError(f"dimension {r.n} too small", 6)

    body = r.pos
    try:
        if tag == TAG_PARAMS:
            mode = r.u8()
            if mode >= len(MODES):
                raise ParseError(f"unknown mode byte {mode}", r.pos - 1)
            deg_m, wlk = r.u16(), r.u32()
            tau_len = r.u16()
            tau = tuple(r.elem() for _ in range(tau_len))
            a_gens, b_gens = r.words(), r.words()
            beta = r.word()
            m = r.matrix()
            obj = PublicParams(n=r.n, p=p, mode=MODES[mode], deg_m=deg_m, word_len_keys=wlk,
                               tau=TauVector(tau, p), a_generators=a_gens, b_generators=b_gens,
                               beta=beta, m=m)
        elif tag == TAG_PRIVKEY:
            side = r.u8()
            if side >= len(SIDES):
                raise ParseError(f"unknown side byte {side}", r.pos - 1)
            ncoef = r.u16()
            coeffs = tuple(r.elem() for _ in range(ncoef))
            obj = PrivateKey(side=SIDES[side], p=p, coeffs=coeffs, n_matrix=r.matrix(), word=r.word())
        else:
            state = EState(r.matrix(), r.perm())
            obj = PublicKey(state, p) if tag == TAG_PUBKEY else SharedSecret(state, p)
    except ParseError:
        raise
    except CbkapError as exc:
        raise ParseError(f"invalid object: {exc}", body) from None
    if r.pos != len(r.data):
        raise ParseError(f"{len(r.data) - r.pos} trailing bytes", r.pos)
    return obj


def header_info(data: bytes) -> tuple[int, int, int]:
    """``(tag, n, p)`` from a serialized object's header."""
    if len(data) < 12 or data[:4] != MAGIC:
        raise ParseError("bad header", 0)
    _, tag, n, p = struct.unpack(">BBHI", data[4:12])
    return tag, n, p


def params_hash(params: PublicParams) -> bytes:
    """SHA-256 of the canonical params bytes."""
    return hashlib.sha256(serialize(params)).digest()


def to_json(obj) -> str:
    """Human-readable view; not canonical and not used on the wire."""
    if isinstance(obj, PublicParams):
        d = {"type": "params", "n": obj.n, "p": obj.p, "mode": obj.mode, "degM": obj.deg_m,
             "wordLenKeys": obj.word_len_keys, "tau": list(obj.tau.values),
             "aGenerators": [str(w) for w in obj.a_generators],
             "bGenerators": [str(w) for w in obj.b_generators],
             "beta": str(obj.beta), "m": obj.m.tolist()}
    elif isinstance(obj, PrivateKey):
        d = {"type": "privkey", "p": obj.p, "side": obj.side, "coeffs": list(obj.coeffs),
             "nMatrix": obj.n_matrix.tolist(), "word": str(obj.word)}
    elif isinstance(obj, (PublicKey, SharedSecret)):
        d = {"type": "pubkey" if isinstance(obj, PublicKey) else "secret", "p": obj.p,
             "matrix": obj.state.matrix.tolist(), "perm": str(obj.state.perm)}
    else:
        raise UsageError(f"cannot render {type(obj).__name__}")
    return json.dumps(d, indent=2)


def from_json(text: str):
    d = json.loads(text)
    kind = d.get("type")
    if kind == "params":
        return PublicParams(n=d["n"], p=d["p"], mode=d["mode"], deg_m=d["degM"],
                            word_len_keys=d["wordLenKeys"], tau=TauVector(tuple(d["tau"]), d["p"]),
                            a_generators=tuple(BraidWord.parse(w) for w in d["aGenerators"]),
                            b_generators=tuple(BraidWord.parse(w) for w in d["bGenerators"]),
                            beta=BraidWord.parse(d["beta"]), m=np.array(d["m"], dtype=np.int64))
    if kind == "privkey":
        return PrivateKey(side=d["side"], p=d["p"], n_matrix=np.array(d["nMatrix"], dtype=np.int64),
                          coeffs=tuple(d["coeffs"]), word=BraidWord.parse(d["word"]))
    if kind in ("pubkey", "secret"):
        st = EState(np.array(d["matrix"], dtype=np.int64), Permutation.parse(d["perm"]))
        return PublicKey(st, d["p"]) if kind == "pubkey" else SharedSecret(st, d["p"])
    raise UsageError(f"unknown JSON object type {kind!r}")
