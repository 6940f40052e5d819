"""Invariance of constant-coefficient linear matrix PDEs under transformation groups."""

from .equations import (
    LAMBDA_V,
    LinearMatrixPDE,
    complex_structure,
    conjugate_system,
    doubled_form,
    maxwell_free_system,
    schrodinger_system,
)
from .functionals import EMField4, bundled_sample_field, functional_scaling
from .groups import SingularGeneratorError, TransformGroup
from .sampling import FieldSample, Grid, GridTooSmallError, apply_operator, plane_wave, random_smooth_field
from .verifier import (
    INVARIANT,
    NOT_INVARIANT,
    InvarianceReport,
    check_invariance,
    commutant_check,
    pde_residual,
    residual_check,
)
