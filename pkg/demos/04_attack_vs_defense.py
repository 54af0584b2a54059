"""The KTT linear attack on Bob's n_b, with and without the F[m] defense.

Baseline: m is a random matrix, so n_b is a generic polynomial in it and the
attack's solution space collapses to the line through n_b.
Defended: m is a polynomial in Pi(beta) for a pure B-word beta, so every
n_b * poly(m) passes every equation Eve can write down.
"""
from collections import Counter

from cbkap import linalg
from cbkap.attack import (assemble_equations, gen_spurious, run_attack, structure_equation,
                          recover_space, verify_defense_family)
from cbkap.protocol import ParamsConfig, keygen, public_key, ttp_setup

for mode in ("baseline", "defended"):
    params = ttp_setup(ParamsConfig(n=8, p=251, mode=mode, seed=5))
    bob = keygen(params, "bob", seed=5)
    pub = public_key(params, bob)
    report, eqs = run_attack(params, pub, seed=5, ground_truth=bob)
    print(f"{mode:>9}: solution dim {report.solution_dim}, floor deg mu(m) = "
          f"{report.defense_floor}, recovered n_b: {report.succeeded}")
    if mode == "defended":
        print("           n_b * poly(m) solves everything:",
              verify_defense_family(params, pub, eqs, bob))

# the spurious-element equations alone are weak: Bob's whole strand block stays free
params = ttp_setup(ParamsConfig(n=8, p=251, mode="baseline", seed=5))
pub = public_key(params, keygen(params, "bob", seed=5))
eqs = assemble_equations(params, pub, gen_spurious(params, 10, seed=5))
print("dim without n_b m = m n_b:", len(recover_space(eqs, 8, 251)))
print("dim with it:              ", len(recover_space(eqs + [structure_equation(params)], 8, 251)))

# a short sweep
tally = Counter()
for seed in range(20):
    for mode in ("baseline", "defended"):
        params = ttp_setup(ParamsConfig(n=8, p=251, mode=mode, seed=seed))
        bob = keygen(params, "bob", seed)
        report, _ = run_attack(params, public_key(params, bob), seed, ground_truth=bob)
        tally[mode, report.succeeded] += 1
print(dict(tally))
