import pytest
from hypothesis import given, strategies as st

from cbkap.errors import SingularMatrixError, UsageError
from cbkap.ff import GF, is_prime

F7, F5 = GF(7), GF(5)


def brute_inverse(a, p):
    return next(x for x in range(1, p) if a * x % p == 1)


def test_arith_examples():
    assert F7.add(F7(5), F7(4)).value == 2
    assert F7.mul(F7(0), F7(6)).value == 0
    assert F5.neg(F5(2)).value == 3
    assert F7.sub(F7(2), F7(5)).value == 4


@pytest.mark.parametrize("p,a,expected", [(7, 3, 5), (7, 1, 1), (5, 4, 4)])
def test_inverse_examples(p, a, expected):
    assert brute_inverse(a, p) == expected
    assert GF(p).inv(GF(p)(a)).value == expected


def test_inverse_of_zero():
    with pytest.raises(SingularMatrixError):
        F7(0).inverse()


def test_mismatched_contexts():
    with pytest.raises(UsageError):
        F7(1) + F5(1)
    with pytest.raises(UsageError):
        F7.mul(F7(2), F5(2))


@pytest.mark.parametrize("bad", [1, 4, 91, 2**31 + 11, -7])
def test_context_rejects_non_primes(bad):
    with pytest.raises(UsageError):
        GF(bad)


def test_primality_against_sieve():
    limit = 2000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    assert [is_prime(k) for k in range(limit)] == sieve
    assert is_prime(65521) and is_prime(2**31 - 1)


@pytest.mark.parametrize("p,width", [(7, 1), (251, 1), (257, 2), (65521, 2), (2**31 - 1, 4)])
def test_encoding_width(p, width):
    f = GF(p)
    assert f.width == width
    assert f.decode(f.encode(p - 1)).value == p - 1
    with pytest.raises(UsageError):
        f.decode(p.to_bytes(width, "big"))


primes = st.sampled_from([5, 7, 251, 65521, 2**31 - 1])


@given(primes, st.integers(), st.integers(), st.integers())
def test_field_axioms(p, x, y, z):
    f = GF(p)
    a, b, c = f(x), f(y), f(z)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == f(0)
    for r in (a + b, a - b, a * b, -a):
        assert 0 <= r.value < p


@given(primes, st.integers())
def test_inverse_property(p, x):
    f = GF(p)
    a = f(x)
    if a.value:
        assert a * a.inverse() == f(1)
        assert (f(1) / a) == a.inverse()
