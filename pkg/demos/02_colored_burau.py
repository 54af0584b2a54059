"""Colored Burau generators and E-multiplication on N x S_n."""
from cbkap.cbraid import (BraidWord, EState, Permutation, TauVector, cb_generator_matrix,
                          e_commutes, e_mul_word, fold)

n, p = 4, 7
tau = TauVector((2, 3, 4, 5), p)
e = Permutation.identity(n)

# x_1 with t_1 -> tau_1 = 2: top row (-2, 1) = (5, 1) mod 7
print(cb_generator_matrix(1, +1, e, tau))

# the permutation twists which tau gets substituted: s_1 sends t_2 to t_1
s1 = Permutation.transposition(1, n)
print(cb_generator_matrix(2, +1, s1, tau))

# E-multiplication folds a word into an (N, S_n) state
w = BraidWord.parse("1,2,-1,3")
state = fold(w, tau, n)
print(state)

# a word followed by its inverse comes back to the identity state
print("w w^-1 trivial:", e_mul_word(state, w.inverse(), tau) == EState.identity(n))

# Alice's letters {1,2,3} and Bob's {5,6,7} E-commute at n = 8; neighbours 4 and 5 do not
tau8 = TauVector((2, 3, 4, 5, 6, 1, 2, 3), p)
print("A/B commute:", e_commutes(BraidWord.parse("1,-2,3,3"), BraidWord.parse("5,7,-6"), tau8, 8))
print("4/5 commute:", e_commutes(BraidWord.parse("4"), BraidWord.parse("5"), tau8, 8))
