"""CBKAP: TTP setup, key generation, public keys and the shared secret.

Alice owns the strands ``1..n/2`` (letters ``1..(n-2)/2``) and Bob the
strands ``n/2+1..n`` (letters ``n/2+1..n-1``). Bob's permutations can send a
variable index to ``n``, so the tau vector has ``n`` entries rather than
``n-1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

import numpy as np

from . import linalg
from .cbraid import BraidLetter, BraidWord, EState, TauVector, e_mul_word, fold, random_pure_word
from .errors import KeygenError, SetupError, UsageError
from .ff import GF

Side = Literal["alice", "bob"]
Mode = Literal["defended", "baseline"]
SIDES = ("alice", "bob")
MODES = ("defended", "baseline")
MAX_RETRIES = 100


def a_alphabet(n: int) -> list[int]:
    return list(range(1, (n - 2) // 2 + 1))


def b_alphabet(n: int) -> list[int]:
    return list(range(n // 2 + 1, n))


def alphabet(side: Side, n: int) -> list[int]:
    return a_alphabet(n) if side == "alice" else b_alphabet(n)


@dataclass(frozen=True)
class ParamsConfig:
    n: int = 8
    p: int = 251
    word_len_keys: int = 20
    deg_m: int | None = None  # None means n
    beta_len: int = 16
    mode: Mode = "defended"
    seed: int = 0
    extra_generators: int = 0  # random length-3 words added to each side's generator list
    test_mode: bool = False  # allows n = 4, 6

    def __post_init__(self):
        lo = 4 if self.test_mode else 8
        if self.n < lo or self.n % 2:
            raise UsageError(f"n must be even and >= {lo}, got {self.n}")
        GF(self.p)
        if self.word_len_keys < 1:
            raise UsageError("word_len_keys must be >= 1")
        if self.deg_m is not None and self.deg_m < 2:
            raise UsageError("deg_m must be >= 2")
        if self.beta_len < 2:
            raise UsageError("beta_len must be >= 2")
        if self.mode not in MODES:
            raise UsageError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must fit in an unsigned 64-bit integer")

    @property
    def degree_m(self) -> int:
        return self.n if self.deg_m is None else self.deg_m


def _check_word(w: BraidWord, allowed: list[int], what: str):
    bad = [i for i, _ in w if i not in allowed]
    if bad:
        raise UsageError(f"{what} uses letters {bad} outside {allowed}")


@dataclass(frozen=True, eq=False)
class PublicParams:
    n: int
    p: int
    mode: Mode
    deg_m: int
    word_len_keys: int
    tau: TauVector
    a_generators: tuple[BraidWord, ...]
    b_generators: tuple[BraidWord, ...]
    beta: BraidWord
    m: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise UsageError(f"unknown mode {self.mode!r}")
        if len(self.tau) != self.n or self.tau.p != self.p:
            raise UsageError("tau must hold n values over the params field")
        A, B = a_alphabet(self.n), b_alphabet(self.n)
        for w in self.a_generators:
            _check_word(w, A, "A generator")
        for w in self.b_generators:
            _check_word(w, B, "B generator")
        if self.beta not in self.b_generators:
            raise UsageError("beta must be one of the B generators")
        if not self.beta.permutation(self.n).is_identity():
            raise UsageError("beta must have identity permutation")
        m = np.array(self.m, dtype=np.int64)
        if m.shape != (self.n, self.n):
            raise UsageError("m has the wrong shape")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @property
    def field(self) -> GF:
        return GF(self.p)

    @cached_property
    def m_powers(self) -> list[np.ndarray]:
        """``I, m, ..., m^(deg_m - 1)``."""
        out = [linalg.identity(self.n)]
        for _ in range(self.deg_m - 1):
            out.append(linalg.mat_mul(out[-1], self.m, self.p))
        return out

    def generators(self, side: Side) -> tuple[BraidWord, ...]:
        return self.a_generators if side == "alice" else self.b_generators

    def poly_in_m(self, coeffs) -> np.ndarray:
        acc = np.zeros((self.n, self.n), dtype=np.int64)
        for c, mp in zip(coeffs, self.m_powers):
            acc = (acc + int(c) * mp) % self.p
        return acc

    def _key(self):
        return (self.n, self.p, self.mode, self.deg_m, self.word_len_keys, self.tau,
                self.a_generators, self.b_generators, self.beta, self.m.tobytes())

    def __eq__(self, other):
        if not isinstance(other, PublicParams):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


@dataclass(frozen=True, eq=False)
class PrivateKey:
    side: Side
    p: int
    n_matrix: np.ndarray = field(repr=False)
    coeffs: tuple[int, ...]
    word: BraidWord

    def __post_init__(self):
        if self.side not in SIDES:
            raise UsageError(f"side must be one of {SIDES}")
        nm = np.array(self.n_matrix, dtype=np.int64)
        if nm.ndim != 2 or nm.shape[0] != nm.shape[1]:
            raise UsageError("key matrix must be square")
        nm.setflags(write=False)
        object.__setattr__(self, "n_matrix", nm)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def _key(self):
        return (self.side, self.p, self.n_matrix.tobytes(), self.n_matrix.shape, self.coeffs, self.word)

    def __eq__(self, other):
        if not isinstance(other, PrivateKey):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


@dataclass(frozen=True)
class PublicKey:
    state: EState
    p: int


@dataclass(frozen=True)
class SharedSecret:
    state: EState
    p: int


def ttp_setup(cfg: ParamsConfig) -> PublicParams:
    """Generate all public data, deterministically from ``cfg.seed``."""
    n, p = cfg.n, cfg.p
    rng = np.random.default_rng(cfg.seed)
    tau = TauVector(tuple(int(t) for t in rng.integers(1, p, size=n)), p)

    def gens(alpha):
        out = [BraidWord(((i, 1),)) for i in alpha]
        out += [BraidWord(((i, 1), (i, 1))) for i in alpha]
        for _ in range(cfg.extra_generators):
            out.append(BraidWord(tuple(BraidLetter(int(i), int(s)) for i, s in
                                       zip(rng.choice(alpha, 3), rng.choice([1, -1], 3)))))
        return out

    A, B = a_alphabet(n), b_alphabet(n)
    a_gens, b_gens = gens(A), gens(B)

    ident = linalg.identity(n)
    for _ in range(MAX_RETRIES):
        beta = random_pure_word(rng, B, cfg.beta_len, n)
        pi_beta = fold(beta, tau, n).matrix
        if not np.array_equal(pi_beta, ident):
            break
    else:
        raise SetupError(f"Pi(beta) was the identity in {MAX_RETRIES} draws")
    if beta not in b_gens:
        b_gens.append(beta)

    deg = cfg.degree_m
    for _ in range(MAX_RETRIES):
        if cfg.mode == "defended":
            c = rng.integers(0, p, size=deg)
            m = np.zeros((n, n), dtype=np.int64)
            power = ident
            for cl in c:
                m = (m + int(cl) * power) % p
                power = linalg.mat_mul(power, pi_beta, p)
        else:
            m = linalg.random_matrix(rng, n, n, p)
        # a scalar m would make F[m] one-dimensional, so it is resampled too
        if linalg.rank(m, p) == n and linalg.min_poly_degree(m, p) >= 2:
            break
    else:
        raise SetupError(f"no usable m in {MAX_RETRIES} draws")

    return PublicParams(n=n, p=p, mode=cfg.mode, deg_m=deg, word_len_keys=cfg.word_len_keys,
                        tau=tau, a_generators=tuple(a_gens), b_generators=tuple(b_gens),
                        beta=beta, m=m)


def keygen(params: PublicParams, side: Side, seed: int) -> PrivateKey:
    if side not in SIDES:
        raise UsageError(f"side must be one of {SIDES}")
    rng = np.random.default_rng([seed, SIDES.index(side)])
    for _ in range(MAX_RETRIES):
        coeffs = rng.integers(0, params.p, size=params.deg_m)
        n_matrix = params.poly_in_m(coeffs)
        if linalg.rank(n_matrix, params.p) == params.n:
            break
    else:
        raise KeygenError(f"no invertible key matrix in {MAX_RETRIES} draws")

    gens = params.generators(side)
    word = BraidWord()
    for k in rng.integers(0, len(gens), size=params.word_len_keys):
        w = gens[int(k)]
        word = word + (w if rng.random() < 0.5 else w.inverse())
    return PrivateKey(side=side, p=params.p, n_matrix=n_matrix, coeffs=tuple(int(c) for c in coeffs), word=word)


def public_key(params: PublicParams, sk: PrivateKey) -> PublicKey:
    _check_word(sk.word, alphabet(sk.side, params.n), f"{sk.side}'s word")
    start = EState(sk.n_matrix, EState.identity(params.n).perm)
    state = e_mul_word(start, sk.word, params.tau)
    return PublicKey(state, params.p)


def shared_secret(params: PublicParams, mine: PrivateKey, theirs: PublicKey) -> SharedSecret:
    """``(n_mine . P_theirs, g_theirs) * word_mine``."""
    _check_word(mine.word, alphabet(mine.side, params.n), f"{mine.side}'s word")
    st = theirs.state
    if st.n != params.n or theirs.p != params.p or mine.p != params.p:
        raise UsageError("key does not match params dimension/field")
    start = EState(linalg.mat_mul(mine.n_matrix, st.matrix, params.p), st.perm)
    return SharedSecret(e_mul_word(start, mine.word, params.tau), params.p)


def exchange(params: PublicParams, alice_seed: int, bob_seed: int):
    """Run both sides offline; returns ``(sk_a, sk_b, pk_a, pk_b, secret_a, secret_b)``."""
    sk_a, sk_b = keygen(params, "alice", alice_seed), keygen(params, "bob", bob_seed)
    pk_a, pk_b = public_key(params, sk_a), public_key(params, sk_b)
    return (sk_a, sk_b, pk_a, pk_b,
            shared_secret(params, sk_a, pk_b), shared_secret(params, sk_b, pk_a))


def in_poly_algebra(params: PublicParams, x: np.ndarray) -> bool:
    """Whether ``x`` is a polynomial in ``m`` (membership in F[m])."""
    return linalg.in_span(params.m_powers, x, params.p)
