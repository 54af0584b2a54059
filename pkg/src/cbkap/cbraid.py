"""Colored Burau generators, the S_n action on variables, and E-multiplication.

Conventions:

* permutations are stored 1-based, ``images[i-1] == g(i)``, and compose as
  ``(g * h)(i) == g(h(i))``;
* ``g`` acts on variables by ``t_j -> t_{g(j)}``, which makes
  ``g . (h . x) == (g * h) . x`` a left action;
* a letter ``(i, +1)`` is the semidirect-product generator ``(x_i(t), s_i)``
  and ``(i, -1)`` its inverse ``(s_i . x_i(t)^-1, s_i)``.

Matrices are only ever built after substituting tau values, so everything
stays over GF(p).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import linalg
from .errors import EvaluationError, UsageError


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise UsageError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, i: int, n: int) -> Permutation:
        """The simple transposition s_i = (i, i+1)."""
        if not 1 <= i < n:
            raise UsageError(f"s_{i} is not defined in S_{n}")
        img = list(range(1, n + 1))
        img[i - 1], img[i] = img[i], img[i - 1]
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise UsageError(f"degree mismatch: {self.degree} vs {other.degree}")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, g in enumerate(self.images, start=1):
            inv[g - 1] = i
        return Permutation(tuple(inv))

    def swap_right(self, i: int) -> Permutation:
        """``self * s_i`` without building s_i."""
        img = list(self.images)
        img[i - 1], img[i] = img[i], img[i - 1]
        return Permutation(tuple(img))

    def is_identity(self) -> bool:
        return all(g == i for i, g in enumerate(self.images, start=1))

    def __str__(self):
        return " ".join(map(str, self.images))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        try:
            return cls(tuple(int(tok) for tok in text.split()))
        except ValueError as exc:
            raise UsageError(f"bad permutation text {text!r}: {exc}") from None


def perm_compose(g: Permutation, h: Permutation) -> Permutation:
    return g * h


class BraidLetter(NamedTuple):
    index: int
    sign: int = 1

    def inverse(self) -> BraidLetter:
        return BraidLetter(self.index, -self.sign)


@dataclass(frozen=True)
class BraidWord:
    letters: tuple[BraidLetter, ...] = ()

    def __post_init__(self):
        letters = tuple(BraidLetter(int(i), int(s)) for i, s in self.letters)
        for i, s in letters:
            if i < 1 or s not in (1, -1):
                raise UsageError(f"bad braid letter ({i}, {s})")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_ints(cls, signed: Iterable[int]) -> BraidWord:
        """``[1, 2, -3]`` is x_1 x_2 x_3^-1."""
        out = []
        for k in signed:
            if k == 0:
                raise UsageError("0 is not a braid letter")
            out.append(BraidLetter(abs(k), 1 if k > 0 else -1))
        return cls(tuple(out))

    @classmethod
    def parse(cls, text: str) -> BraidWord:
        text = text.strip()
        if not text:
            return cls()
        try:
            return cls.from_ints(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise UsageError(f"bad braid word text {text!r}: {exc}") from None

    def to_ints(self) -> list[int]:
        return [i * s for i, s in self.letters]

    def __str__(self):
        return ",".join(map(str, self.to_ints()))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: BraidWord) -> BraidWord:
        return BraidWord(self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(tuple(l.inverse() for l in reversed(self.letters)))

    def max_index(self) -> int:
        return max((i for i, _ in self.letters), default=0)

    def permutation(self, n: int) -> Permutation:
        g = Permutation.identity(n)
        for i, _ in self.letters:
            if i >= n:
                raise UsageError(f"letter index {i} out of range for n={n}")
            g = g.swap_right(i)
        return g


@dataclass(frozen=True)
class TauVector:
    """Nonzero evaluation values ``tau_1, tau_2, ...`` in GF(p)."""

    values: tuple[int, ...]
    p: int

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if any(not 0 < v < self.p for v in vals):
            raise UsageError(f"tau values must be nonzero residues mod {self.p}: {vals}")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, j: int) -> int:
        """1-based lookup of tau_j."""
        if not 1 <= j <= len(self.values):
            raise EvaluationError(f"evaluation needs tau_{j} but only {len(self.values)} values exist")
        return self.values[j - 1]


class EState:
    """Element (matrix, permutation) of N x G. Immutable."""

    __slots__ = ("matrix", "perm")

    def __init__(self, matrix: np.ndarray, perm: Permutation):
        matrix = np.array(matrix, dtype=np.int64)
        if matrix.shape != (perm.degree, perm.degree):
            raise UsageError(f"matrix shape {matrix.shape} does not match degree {perm.degree}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "perm", perm)

    def __setattr__(self, name, value):
        raise AttributeError("EState is immutable")

    @classmethod
    def identity(cls, n: int) -> EState:
        return cls(linalg.identity(n), Permutation.identity(n))

    @property
    def n(self) -> int:
        return self.perm.degree

    def __eq__(self, other):
        if not isinstance(other, EState):
            return NotImplemented
        return self.perm == other.perm and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.perm, self.matrix.tobytes()))

    def __repr__(self):
        return f"EState(perm=[{self.perm}], matrix=\n{self.matrix})"


def _generator_plus(i: int, t: int, n: int, p: int) -> np.ndarray:
    x = linalg.identity(n)
    if i == 1:
        x[0, 0] = -t % p
        x[0, 1] = 1
    else:
        x[i - 1, i - 2] = t % p
        x[i - 1, i - 1] = -t % p
        x[i - 1, i] = 1
    return x


def _generator_minus(i: int, t: int, n: int, p: int) -> np.ndarray:
    # closed-form inverse of _generator_plus: row i becomes (1, -1/t, 1/t)
    x = linalg.identity(n)
    tinv = pow(t, -1, p)
    if i > 1:
        x[i - 1, i - 2] = 1
    x[i - 1, i - 1] = -tinv % p
    x[i - 1, i] = tinv
    return x


def cb_generator_matrix(i: int, sign: int, g: Permutation, tau: TauVector) -> np.ndarray:
    """``Pi(g . x_i(t)^sign)``: x_i with t_i replaced by tau_{g(i)}, inverted if sign is -1."""
    n = g.degree
    if not 1 <= i <= n - 1:
        raise UsageError(f"generator index {i} out of range 1..{n - 1}")
    if sign not in (1, -1):
        raise UsageError(f"sign must be +1 or -1, got {sign}")
    t = tau[g(i)]
    if sign == 1:
        return _generator_plus(i, t, n, tau.p)
    return _generator_minus(i, t, n, tau.p)


def e_mul_letter(s: EState, letter: BraidLetter, tau: TauVector) -> EState:
    i, sign = letter
    if not 1 <= i <= s.n - 1:
        raise UsageError(f"letter index {i} out of range for n={s.n}")
    g2 = s.perm.swap_right(i)
    if sign == 1:
        x = cb_generator_matrix(i, 1, s.perm, tau)
    else:
        # (s_i . x_i^-1, s_i): evaluate x_i under g*s_i, then invert
        x = cb_generator_matrix(i, -1, g2, tau)
    return EState(linalg.mat_mul(s.matrix, x, tau.p), g2)


def e_mul_word(s: EState, w: BraidWord, tau: TauVector) -> EState:
    for letter in w:
        s = e_mul_letter(s, letter, tau)
    return s


def pi_of_word(w: BraidWord, tau: TauVector, g0: Permutation) -> np.ndarray:
    """Matrix part of ``(I, g0) * w``, i.e. ``Pi(g0 . w)`` for a pure word."""
    n = g0.degree
    return e_mul_word(EState(linalg.identity(n), g0), w, tau).matrix


def fold(w: BraidWord, tau: TauVector, n: int) -> EState:
    """``(Pi(w), perm(w))``: the word folded from the identity state."""
    return e_mul_word(EState.identity(n), w, tau)


def e_commutes(a: BraidWord, b: BraidWord, tau: TauVector, n: int) -> bool:
    """Whether ``(Pi(a), g_a) * b == (Pi(b), g_b) * a``."""
    lhs = e_mul_word(fold(a, tau, n), b, tau)
    rhs = e_mul_word(fold(b, tau, n), a, tau)
    return lhs == rhs


def closing_suffix(g: Permutation) -> BraidWord:
    """A positive word ``w`` with ``g * perm(w) == e`` (bubble sort of g's images).

    Only transpositions of adjacent points inside g's support are used, so a
    permutation of a strand block closes with that block's letters.
    """
    img = list(g.images)
    swaps = []
    changed = True
    while changed:
        changed = False
        for j in range(len(img) - 1):
            if img[j] > img[j + 1]:
                img[j], img[j + 1] = img[j + 1], img[j]
                swaps.append(j + 1)
                changed = True
    return BraidWord(tuple(BraidLetter(j, 1) for j in swaps))


def random_word(rng: np.random.Generator, alphabet: Sequence[int], length: int,
                signed: bool = True) -> BraidWord:
    idx = rng.choice(np.asarray(alphabet), size=length)
    signs = rng.choice([1, -1], size=length) if signed else np.ones(length, dtype=int)
    return BraidWord(tuple(BraidLetter(int(i), int(s)) for i, s in zip(idx, signs)))


def random_pure_word(rng: np.random.Generator, alphabet: Sequence[int], length: int,
                     n: int) -> BraidWord:
    """Random word over ``alphabet`` closed up to an identity total permutation."""
    w = random_word(rng, alphabet, length)
    return w + closing_suffix(w.permutation(n))
