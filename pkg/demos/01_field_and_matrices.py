"""GF(p) scalars and matrices: the arithmetic everything else runs on."""
import numpy as np

from cbkap import linalg
from cbkap.ff import GF

F = GF(251)
a, b = F(200), F(100)
print("200 + 100 =", a + b)          # 49 (mod 251)
print("1 / 200   =", a.inverse())
print("check     =", a * a.inverse())

# matrices are plain int64 arrays; the modulus travels alongside
rng = np.random.default_rng(0)
m = linalg.random_invertible(rng, 4, 251)
print("m =\n", m)
print("m @ m^-1 =\n", linalg.mat_mul(m, linalg.mat_inv(m, 251), 251))

# kernels come back in a deterministic echelon basis
k = linalg.kernel_basis(np.array([[1, 2], [2, 4]]), 5)
print("kernel of [[1,2],[2,4]] over GF(5):", [v.tolist() for v in k])

# dim F[m] is the degree of the minimal polynomial
print("deg mu(m)        =", linalg.min_poly_degree(m, 251))
print("deg mu(diag 1,1,2)=", linalg.min_poly_degree(np.diag([1, 1, 2]), 251))
