"""Arithmetic in a prime field GF(p) with the modulus carried by a context."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import SingularMatrixError, UsageError

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def inverse_mod(a: int, p: int) -> int:
    """Inverse of ``a`` modulo the prime ``p``."""
    a %= p
    if a == 0:
        raise SingularMatrixError("zero has no multiplicative inverse")
    return pow(a, -1, p)


@dataclass(frozen=True)
class GF:
    """Field context: a prime modulus ``2 <= p < 2**31``.

    Calling the context builds an element: ``GF(7)(12) == GF(7)(5)``.
    """

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p < MAX_PRIME:
            raise UsageError(f"modulus must be an integer in [2, 2**31), got {self.p!r}")
        if not is_prime(self.p):
            raise UsageError(f"modulus {self.p} is not prime")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(int(value) % self.p, self)

    @property
    def width(self) -> int:
        """Bytes per element in the canonical big-endian encoding."""
        return (self.p.bit_length() + 7) // 8

    def encode(self, value: int) -> bytes:
        return int(value).to_bytes(self.width, "big")

    def decode(self, data: bytes) -> FieldElement:
        v = int.from_bytes(data, "big")
        if len(data) != self.width or v >= self.p:
            raise UsageError(f"non-canonical field element encoding {data.hex()}")
        return FieldElement(v, self)

    # functional interface, mirrors the operator overloads below
    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self._check(a) + self._check(b)

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self._check(a) - self._check(b)

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self._check(a) * self._check(b)

    def neg(self, a: FieldElement) -> FieldElement:
        return -self._check(a)

    def inv(self, a: FieldElement) -> FieldElement:
        return self._check(a).inverse()

    def _check(self, a: FieldElement) -> FieldElement:
        if not isinstance(a, FieldElement) or a.field != self:
            raise UsageError(f"{a!r} does not belong to GF({self.p})")
        return a


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: GF

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise UsageError(f"{self.value} is not a canonical residue mod {self.field.p}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise UsageError(
                    f"field mismatch: GF({self.field.p}) vs GF({other.field.p})")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _wrap(self, v: int) -> FieldElement:
        return FieldElement(v % self.field.p, self.field)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __neg__(self):
        return self._wrap(-self.value)

    def inverse(self) -> FieldElement:
        return FieldElement(inverse_mod(self.value, self.field.p), self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.value * inverse_mod(o, self.field.p))

    def __int__(self):
        return self.value

    def __bytes__(self):
        return self.field.encode(self.value)

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"
