"""Dense matrix algebra over GF(p).

Matrices are ``numpy.int64`` arrays of canonical residues; the modulus is
passed explicitly. Elimination picks the first nonzero pivot in column
order, so every echelon form (and hence every kernel basis) is
deterministic.
"""
from __future__ import annotations

import numpy as np

from .errors import SingularMatrixError, UsageError
from .ff import GF

_INT63 = 2**63 - 1


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def random_invertible(rng: np.random.Generator, n: int, p: int, retries: int = 100) -> np.ndarray:
    for _ in range(retries):
        a = random_matrix(rng, n, n, p)
        if rank(a, p) == n:
            return a
    raise SingularMatrixError(f"no invertible {n}x{n} matrix in {retries} draws")


def _check_square(a: np.ndarray) -> int:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise UsageError(f"expected a square matrix, got shape {a.shape}")
    return a.shape[0]


def mat_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product ``a @ b`` mod p."""
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise UsageError(f"cannot multiply shapes {a.shape} and {b.shape}")
    k = a.shape[1]
    if k * (p - 1) ** 2 <= _INT63:
        return (a @ b) % p
    # split b into 16-bit halves so every partial dot product stays below 2**63
    lo, hi = b & 0xFFFF, b >> 16
    return ((a @ lo) % p + (((a @ hi) % p) << 16) % p) % p


def mat_vec(a: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    return mat_mul(a, v.reshape(-1, 1), p).ravel()


def mat_pow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    n = _check_square(a)
    if e < 0:
        raise UsageError("negative exponent; invert first")
    result, base = identity(n), a % p
    while e:
        if e & 1:
            result = mat_mul(result, base, p)
        base = mat_mul(base, base, p)
        e >>= 1
    return result


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` and its pivot columns."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r]) % p) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    return len(rref(a, p)[1])


def mat_inv(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix; raises SingularMatrixError if none exists."""
    n = _check_square(a)
    aug = np.hstack([np.asarray(a, dtype=np.int64) % p, identity(n)])
    red, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError(f"{n}x{n} matrix is singular mod {p}")
    return red[:, n:]


def kernel_basis(a: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of the right null space ``{v : a v = 0}``.

    One vector per free column ``f`` of the reduced echelon form, with a 1 in
    position ``f`` and zeros in every other free position.
    """
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise UsageError(f"expected a 2-d matrix, got shape {a.shape}")
    cols = a.shape[1]
    red, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for row, c in enumerate(pivots):
            v[c] = (-red[row, f]) % p
        basis.append(v)
    return basis


def solve_combination(vectors: list[np.ndarray], target: np.ndarray, p: int) -> np.ndarray | None:
    """Coefficients ``x`` with ``sum x_i vectors[i] == target``, or None.

    Vectors may be matrices; they are flattened. When the vectors are
    dependent one particular solution (free coefficients zero) is returned.
    """
    target = np.asarray(target, dtype=np.int64).ravel() % p
    if not vectors:
        return np.zeros(0, dtype=np.int64) if not target.any() else None
    cols = np.stack([np.asarray(v, dtype=np.int64).ravel() for v in vectors], axis=1)
    k = cols.shape[1]
    red, pivots = rref(np.hstack([cols, target.reshape(-1, 1)]), p)
    if k in pivots:
        return None
    x = np.zeros(k, dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = red[row, k]
    return x


def in_span(vectors: list[np.ndarray], target: np.ndarray, p: int) -> bool:
    return solve_combination(vectors, target, p) is not None


def min_poly_degree(a: np.ndarray, p: int) -> int:
    """Degree of the minimal polynomial, i.e. ``dim F[a]``.

    Smallest d with ``I, a, ..., a^d`` linearly dependent, found by growing
    the Krylov sequence of flattened powers.
    """
    n = _check_square(a)
    powers = [identity(n).ravel()]
    cur = identity(n)
    for d in range(1, n + 1):
        cur = mat_mul(cur, a, p)
        powers.append(cur.ravel())
        if rank(np.stack(powers), p) < d + 1:
            return d
    raise AssertionError("Cayley-Hamilton violated")  # unreachable


def encode_matrix(a: np.ndarray, field: GF) -> bytes:
    """``n`` as 2-byte big-endian, then the n*n entries row-major."""
    n = _check_square(a)
    return n.to_bytes(2, "big") + encode_entries(a, field)


def encode_entries(a: np.ndarray, field: GF) -> bytes:
    return b"".join(field.encode(int(x)) for x in np.asarray(a).ravel())


def decode_entries(data: bytes, n: int, field: GF) -> np.ndarray:
    w = field.width
    if len(data) != n * n * w:
        raise UsageError(f"expected {n * n * w} bytes for a {n}x{n} matrix, got {len(data)}")
    vals = [int.from_bytes(data[i:i + w], "big") for i in range(0, len(data), w)]
    if any(v >= field.p for v in vals):
        raise UsageError("matrix entry out of range")
    return np.array(vals, dtype=np.int64).reshape(n, n)


def decode_matrix(data: bytes, field: GF) -> np.ndarray:
    if len(data) < 2:
        raise UsageError("matrix encoding shorter than its header")
    n = int.from_bytes(data[:2], "big")
    return decode_entries(data[2:], n, field)
