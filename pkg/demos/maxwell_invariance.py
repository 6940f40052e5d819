"""
Free Maxwell equations: gauge, duality and a plane-wave check
=============================================================

``F = E + iH`` obeys ``i dF/dt = c curl F``.  Scalars commute with every
coefficient, so gauge maps and duality rotations (a phase on F) are
symmetries.  The discrete operator is exact for a plane wave at dt = h/c
and converges at second order otherwise.
"""

import math

from hypernum.symmetry import (
    Grid,
    TransformGroup,
    bundled_sample_field,
    check_invariance,
    functional_scaling,
    maxwell_free_system,
    pde_residual,
    plane_wave,
    random_smooth_field,
)
from hypernum.symmetry.functionals import scaling_to_text

eq = maxwell_free_system(3)
grid = Grid((8, 8, 8), 1 / 8, 6, 0.05)
samples = [random_smooth_field(grid, 3, seed=s) for s in range(2)]
for group in (TransformGroup.total_gauge(3, 10.0, 0.3), TransformGroup.duality_rotation(3, math.pi / 6)):
    print(group.label, check_invariance(eq, group, samples).verdict)

line = maxwell_free_system(1)
for n in (32, 64, 128):
    exact_step, _ = plane_wave(line, Grid((n,), 1 / n, 5, 1 / n))
    half_step, _ = plane_wave(line, Grid((n,), 1 / n, 5, 0.5 / n))
    print(f"n={n:4d}  dt=h: {pde_residual(line, exact_step):.2e}  dt=h/2: {pde_residual(line, half_step):.2e}")

# quadratic functionals scale as beta^2, the charge as beta
field = bundled_sample_field(0)
gauge = TransformGroup.total_gauge(4, 2.0, 0.0)
print(scaling_to_text(functional_scaling(field, gauge), gauge))
