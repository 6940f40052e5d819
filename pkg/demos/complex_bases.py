"""
Complex numbers as matrices
===========================

Three cyclic bases realize the powers 1, i, -1, -i.  The [0,1] bases never
need a minus sign: negative weights go onto the image of -1 instead.
"""

from fractions import Fraction

from hypernum import Complex, builtin_basis, decode, encode, rep_mul, validate_cyclic

z = Complex(Fraction(3, 2), -2)
w = Complex(-1, Fraction(1, 3))

for name in ("std2x2", "zeroone_a", "zeroone_b"):
    basis = builtin_basis(name)
    print(name, "valid:", validate_cyclic(basis).ok)
    print(encode(z, basis).matrix)
    # products of matrices decode to products of numbers
    print("z*w =", decode(rep_mul(encode(z, basis), encode(w, basis))), "expected", z * w)
    print()
