"""
Which groups leave a two-level Schroedinger system invariant?
=============================================================

Written on real pairs, the scalar i becomes the matrix J'.  The other
quaternion generators anticommute with it, so they do not map solutions to
solutions; the total gauge group and the complex subgroup spanned by E and
J' do.
"""

from hypernum.symmetry import Grid, TransformGroup, check_invariance, random_smooth_field, schrodinger_system

eq = schrodinger_system(form="doubled")
grid = Grid((16,), 1 / 16, 8, 0.05)
samples = [random_smooth_field(grid, eq.n, seed=s) for s in range(3)]

for group in (
    TransformGroup.total_gauge(eq.n, 2.0, 0.7),
    TransformGroup.embedded_complex(eq.n),
    TransformGroup.quaternion_left(eq.n),
):
    print(check_invariance(eq, group, samples).to_text())
