import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cbkap import linalg
from cbkap.cbraid import (BraidLetter, BraidWord, EState, Permutation, TauVector,
                          cb_generator_matrix, closing_suffix, e_commutes, e_mul_letter,
                          e_mul_word, fold, perm_compose, pi_of_word, random_pure_word,
                          random_word)
from cbkap.errors import EvaluationError, UsageError
from conftest import naive_matmul

E4 = Permutation.identity(4)
TAU4 = TauVector((2, 3, 4), 7)


def s(i, n):
    return Permutation.transposition(i, n)


def test_compose_examples():
    g = Permutation((3, 1, 2, 4))
    assert perm_compose(g, E4) == g
    assert perm_compose(s(1, 4), s(1, 4)) == E4
    # hand evaluation: (s1 s2)(1) = s1(1) = 2, (s1 s2)(2) = s1(3) = 3, (s1 s2)(3) = s1(2) = 1
    assert perm_compose(s(1, 3), s(2, 3)) == Permutation((2, 3, 1))


def test_compose_degree_mismatch():
    with pytest.raises(UsageError):
        E4 * Permutation.identity(3)


def test_permutation_validation_and_text():
    with pytest.raises(UsageError):
        Permutation((1, 1, 2))
    g = Permutation((2, 3, 1))
    assert Permutation.parse(str(g)) == g
    assert str(g) == "2 3 1"
    assert g * g.inverse() == Permutation.identity(3)


def test_word_text_form():
    w = BraidWord.parse("1,2,-3")
    assert w.letters == ((1, 1), (2, 1), (3, -1))
    assert str(w) == "1,2,-3"
    assert BraidWord.parse("") == BraidWord()
    assert w.inverse() == BraidWord.parse("3,-2,-1")
    with pytest.raises(UsageError):
        BraidWord.parse("1,0")
    with pytest.raises(UsageError):
        BraidWord.parse("1,x")


def test_generator_x1():
    x = cb_generator_matrix(1, 1, E4, TAU4)
    assert x.tolist() == [[5, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    xinv = cb_generator_matrix(1, -1, E4, TAU4)
    assert np.array_equal(linalg.mat_mul(x, xinv, 7), linalg.identity(4))


def test_generator_twisted_by_s1():
    x = cb_generator_matrix(2, 1, s(1, 4), TAU4)
    expected = np.eye(4, dtype=np.int64)
    expected[1] = [2, 5, 1, 0]  # row 2 uses tau_{s1(2)} = tau_1 = 2
    assert np.array_equal(x, expected)


@pytest.mark.parametrize("n,p", [(4, 7), (8, 251), (6, 5)])
def test_minus_generator_is_mat_inv(n, p, rng):
    tau = TauVector(tuple(rng.integers(1, p, n)), p)
    for i in range(1, n):
        g = Permutation(tuple(rng.permutation(n) + 1))
        plus = cb_generator_matrix(i, 1, g, tau)
        assert np.array_equal(cb_generator_matrix(i, -1, g, tau), linalg.mat_inv(plus, p))


def test_generator_index_errors():
    with pytest.raises(UsageError):
        cb_generator_matrix(0, 1, E4, TAU4)
    with pytest.raises(UsageError):
        cb_generator_matrix(4, 1, E4, TAU4)


def test_tau_index_n_is_an_evaluation_error():
    # with only n-1 tau values, x_3 twisted by s_3 needs tau_4
    with pytest.raises(EvaluationError):
        cb_generator_matrix(3, 1, s(3, 4), TAU4)
    with pytest.raises(EvaluationError):
        fold(BraidWord.parse("3,3"), TAU4, 4)


def test_tau_must_be_nonzero():
    with pytest.raises(UsageError):
        TauVector((1, 0, 2), 7)


def test_left_action_axiom(rng):
    n, p = 8, 251
    tau = TauVector(tuple(rng.integers(1, p, n)), p)
    for _ in range(50):
        g = Permutation(tuple(rng.permutation(n) + 1))
        h = Permutation(tuple(rng.permutation(n) + 1))
        i = int(rng.integers(1, n))
        # acting by h then g sends t_i to t_{h(i)} and then to t_{g(h(i))}
        direct = cb_generator_matrix(i, 1, g * h, tau)
        t = tau[g(h(i))]
        only_t = TauVector(tuple(t if j == i else 1 for j in range(1, n + 1)), p)
        staged = cb_generator_matrix(i, 1, Permutation.identity(n), only_t)
        assert np.array_equal(direct, staged)


def test_e_mul_letter_one_step():
    out = e_mul_letter(EState.identity(4), BraidLetter(1, 1), TAU4)
    assert out.perm == s(1, 4)
    assert np.array_equal(out.matrix, cb_generator_matrix(1, 1, E4, TAU4))


def test_e_mul_word_empty():
    st0 = EState(np.arange(16).reshape(4, 4) % 7, Permutation((2, 1, 4, 3)))
    assert e_mul_word(st0, BraidWord(), TAU4) == st0


def test_pi_of_word_x1_squared():
    # x_1 at t1 = 2, then x_1 twisted by s_1 (t1 -> t2 = 3), multiplied by hand
    first = [[5, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    second = [[4, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    expected = naive_matmul(first, second, 7)
    assert expected[0] == [6, 6, 0, 0]
    w = BraidWord.parse("1,1")
    assert pi_of_word(w, TAU4, E4).tolist() == expected
    assert np.array_equal(pi_of_word(w, TAU4, E4), fold(w, TAU4, 4).matrix)
    assert np.array_equal(pi_of_word(BraidWord(), TAU4, E4), linalg.identity(4))


def _setup(n, p, rng):
    return TauVector(tuple(rng.integers(1, p, n)), p)


def _random_state(rng, n, p):
    return EState(linalg.random_matrix(rng, n, n, p), Permutation(tuple(rng.permutation(n) + 1)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(4, 7), (8, 7), (4, 251), (8, 251)]), st.integers(0, 2**32))
def test_fold_homomorphism(np_, seed):
    n, p = np_
    rng = np.random.default_rng(seed)
    tau = _setup(n, p, rng)
    w1 = random_word(rng, range(1, n - 1), 6)
    w2 = random_word(rng, range(1, n - 1), 6)
    s0 = _random_state(rng, n, p)
    assert e_mul_word(s0, w1 + w2, tau) == e_mul_word(e_mul_word(s0, w1, tau), w2, tau)
    assert e_mul_word(EState.identity(n), w1 + w1.inverse(), tau) == EState.identity(n)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(4, 7), (8, 251)]), st.integers(0, 2**32))
def test_inverse_letter_cancels(np_, seed):
    n, p = np_
    rng = np.random.default_rng(seed)
    # full-length tau so any permutation can be evaluated
    tau = _setup(n, p, rng)
    s0 = _random_state(rng, n, p)
    letter = BraidLetter(int(rng.integers(1, n)), int(rng.choice([1, -1])))
    assert e_mul_letter(e_mul_letter(s0, letter, tau), letter.inverse(), tau) == s0


def test_e_commutes_examples(rng):
    n, p = 8, 7
    tau = TauVector((2, 3, 4, 5, 6, 1, 2, 3), p)
    assert e_commutes(BraidWord(), BraidWord.parse("5,-6,7"), tau, n)
    for _ in range(20):
        a = random_word(rng, [1, 2, 3], 5)
        b = random_word(rng, [5, 6, 7], 5)
        assert e_commutes(a, b, tau, n)
    assert not e_commutes(BraidWord.parse("4"), BraidWord.parse("5"), tau, n)


def test_closing_suffix(rng):
    for _ in range(50):
        w = random_word(rng, [5, 6, 7], 9)
        g = w.permutation(8)
        suffix = closing_suffix(g)
        assert (w + suffix).permutation(8).is_identity()
        assert all(i in (5, 6, 7) for i, _ in suffix)
        pure = random_pure_word(rng, [1, 2, 3], 7, 8)
        assert pure.permutation(8).is_identity()


def test_estate_immutable():
    st0 = EState.identity(4)
    with pytest.raises(ValueError):
        st0.matrix[0, 0] = 3
    with pytest.raises(AttributeError):
        st0.perm = E4
