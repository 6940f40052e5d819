"""
Quaternion multiplication in three realizations
===============================================

The abstract table and the 2x2 matrices E, I', J', K' agree.  The second
matrix set E, I, J, K multiplies commutatively, which the literal table makes
visible.
"""

from hypernum.quaternion import Quaternion, det_norm, qmul, qnorm, render_table, table_mismatches

for tag in ("abstract", "pauli", "EIJK"):
    print(render_table(tag))
    print("products off the quaternion table:", table_mismatches(tag) or "none")
    print()

p = Quaternion(1, 2, -1, 3, basis="pauli")
q = Quaternion(0, 1, 1, -2, basis="pauli")
print("|pq| =", qnorm(qmul(p, q)), " |p||q| =", qnorm(p) * qnorm(q))

# the norm is the square root of the determinant of the 2x2 form
print("norm of (1,1,1,1) from the determinant:", det_norm(Quaternion(1, 1, 1, 1, basis="pauli")))
