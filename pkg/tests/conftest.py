"""Independent oracles: plain-Python arithmetic, no package code."""
import itertools

import pytest


def naive_matmul(a, b, p):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(int(a[i][t]) * int(b[t][j]) for t in range(k)) % p for j in range(m)]
            for i in range(n)]


def cofactor_det(a, p):
    a = [[int(x) for x in row] for row in a]
    if len(a) == 1:
        return a[0][0] % p
    total = 0
    for j in range(len(a)):
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        total += (-1) ** j * a[0][j] * cofactor_det(minor, p)
    return total % p


def brute_kernel(a, p):
    """Every vector v with a v = 0, by enumeration."""
    cols = len(a[0])
    return {v for v in itertools.product(range(p), repeat=cols)
            if all(sum(int(r[j]) * v[j] for j in range(cols)) % p == 0 for r in a)}


def span(vectors, p):
    """All linear combinations, by enumeration."""
    vectors = [tuple(int(x) for x in v) for v in vectors]
    if not vectors:
        return None
    dim = len(vectors[0])
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(vectors)):
        out.add(tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % p for i in range(dim)))
    return out


@pytest.fixture
def rng():
    import numpy as np
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
