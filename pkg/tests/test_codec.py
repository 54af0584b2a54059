import numpy as np
import pytest

from cbkap import linalg
from cbkap.cbraid import BraidWord, EState
from cbkap.codec import deserialize, from_json, header_info, params_hash, serialize, to_json
from cbkap.errors import ParseError, UsageError
from cbkap.protocol import ParamsConfig, PrivateKey, SharedSecret, exchange, ttp_setup


@pytest.fixture(scope="module")
def objects():
    pp = ttp_setup(ParamsConfig(n=8, p=251, seed=5))
    sk_a, sk_b, pk_a, pk_b, sec_a, _ = exchange(pp, 1, 2)
    return [pp, sk_a, sk_b, pk_a, pk_b, sec_a]


def test_golden_identity_secret():
    data = serialize(SharedSecret(EState.identity(4), 7))
    expected = bytes.fromhex(
        "41454b45" "01" "04" "0004" "00000007"   # header
        "01000000" "00010000" "00000100" "00000001"  # I_4, one byte per element
        "0001" "0002" "0003" "0004")   # identity permutation
    assert data == expected
    assert header_info(data) == (4, 4, 7)


def test_golden_private_key_layout():
    sk = PrivateKey("bob", 65521, np.diag([1, 65520]), (3, 0), BraidWord.parse("1,-1"))
    data = serialize(sk)
    assert data.hex() == ("41454b45" "01" "03" "0002" "0000fff1"
                          "01" "0002" "0003" "0000"
                          "0001" "0000" "0000" "fff0"
                          "00000002" "000100" "000101")
    assert deserialize(data) == sk


def test_roundtrip(objects):
    for obj in objects:
        data = serialize(obj)
        back = deserialize(data)
        assert back == obj
        assert serialize(back) == data
        assert from_json(to_json(obj)) == obj


def test_equal_values_equal_bytes(objects):
    pp = objects[0]
    again = ttp_setup(ParamsConfig(n=8, p=251, seed=5))
    assert again == pp and serialize(again) == serialize(pp)
    assert params_hash(again) == params_hash(pp) and len(params_hash(pp)) == 32


def test_truncated_input(objects):
    for obj in objects:
        data = serialize(obj)
        for cut in (0, 3, 11, len(data) // 2, len(data) - 1):
            with pytest.raises(ParseError):
                deserialize(data[:cut])


def test_parse_errors_carry_offsets(objects):
    data = serialize(objects[3])
    with pytest.raises(ParseError) as exc:
        deserialize(b"XXXX" + data[4:])
    assert exc.value.offset == 0
    with pytest.raises(ParseError) as exc:
        deserialize(data + b"\x00")
    assert exc.value.offset == len(data)
    bad = bytearray(data)
    bad[12] = 0xFF  # first matrix entry, 255 >= 251
    with pytest.raises(ParseError) as exc:
        deserialize(bytes(bad))
    assert exc.value.offset == 12
    bad = bytearray(data)
    bad[5] = 9
    with pytest.raises(ParseError):
        deserialize(bytes(bad))
    bad = bytearray(data)
    bad[-1] = bad[-3]  # duplicate permutation image
    with pytest.raises(ParseError):
        deserialize(bytes(bad))


def test_non_prime_modulus_rejected(objects):
    data = bytearray(serialize(objects[3]))
    data[8:12] = (250).to_bytes(4, "big")
    with pytest.raises(ParseError):
        deserialize(bytes(data))


def test_unserializable():
    with pytest.raises(UsageError):
        serialize(linalg.identity(3))
