"""
Hermitian matrices as complex numbers, and the ring Z_n
=======================================================
"""

import numpy as np

from hypernum.hermitian import eigen_split, heisenberg_bracket, random_hermitian, split
from hypernum.zn import HyperNumber, decompose, projector

rng = np.random.default_rng(0)
h = random_hermitian(3, rng)
b = split(h)
print("S symmetric:", np.allclose(b.S, b.S.T), " A antisymmetric:", np.allclose(b.A, -b.A.T))

x = rng.normal(size=3) + 1j * rng.normal(size=3)
print("block action error:", np.max(np.abs(b.act(x) - h @ x)))

c = heisenberg_bracket(random_hermitian(3, rng), h)
print("bracket is anti-Hermitian:", np.allclose(c, -c.conj().T))

# complex eigenvalues read as (expectation, width)
print(eigen_split([2.0 - 0.05j, 3.5 - 0.2j]))

z = HyperNumber([1, 2j, -3])
for k, pi in decompose(z):
    print(k, pi.k, "z*pi == k*pi:", z * pi == pi.scale(k))
print(projector(3, 0) * projector(3, 1))
