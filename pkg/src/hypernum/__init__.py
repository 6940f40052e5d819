"""Matrix realizations of complex, hypercomplex and quaternion numbers, and
an invariance checker for constant-coefficient linear matrix PDEs."""

from ._num import Complex, EXACT, FLOAT, default_mode
from .complex_reps import (
    ComplexRep,
    CyclicBasis,
    SignedPair,
    basis_isomorphism,
    builtin_basis,
    decode,
    encode,
    rep_add,
    rep_mul,
    validate_cyclic,
)
from .zn import HyperNumber, decompose, project, projector, projector_basis, zn_add, zn_mul
from .quaternion import (
    MatrixBasis,
    Quaternion,
    embedded_complex_subalgebra,
    from_matrix,
    group_commutativity_report,
    matrix_basis,
    qconj,
    qmul,
    qnorm,
    to_matrix,
)
from .hermitian import BlockComplexForm, eigen_split, heisenberg_bracket, merge, split
from .symmetry import (
    LinearMatrixPDE,
    TransformGroup,
    check_invariance,
    commutant_check,
    maxwell_free_system,
    residual_check,
    schrodinger_system,
)

__version__ = "0.1.0"
