"""Constant-coefficient first-order linear matrix PDEs.

An equation is ``(At d/dt + Ax d/dx + Ay d/dy + Az d/dz + kappa A0) u = 0``
for an n-component field ``u``.  Coefficients that are absent are zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .._num import (
    EXACT,
    FLOAT,
    Complex,
    conj_transpose,
    imag_part,
    is_exact_matrix,
    is_zero_matrix,
    make_matrix,
    real_part,
    to_mode,
)

COEFFICIENTS = ("At", "Ax", "Ay", "Az", "A0")
DERIVATIVES = ("At", "Ax", "Ay", "Az")
SPATIAL = ("Ax", "Ay", "Az")

#: vacuum conductance 1/(120 pi) Ohm^-1, i.e. one over the free-space impedance
LAMBDA_V = 1.0 / (120.0 * np.pi)


@dataclass(frozen=True, eq=False)
class LinearMatrixPDE:
    At: np.ndarray | None = None
    Ax: np.ndarray | None = None
    Ay: np.ndarray | None = None
    Az: np.ndarray | None = None
    A0: np.ndarray | None = None
    kappa: float = 1.0
    action: str = "left"
    name: str = "custom"
    notes: tuple = field(default=())

    def __post_init__(self):
        present = self.coefficients()
        if not present:
            raise ValueError("equation has no coefficients")
        shapes = {m.shape for m in present.values()}
        if len(shapes) != 1:
            raise ValueError(f"dimension mismatch among coefficients: {sorted(shapes)}")
        (shape,) = shapes
        if len(shape) != 2 or shape[0] != shape[1]:
            raise ValueError(f"coefficients must be square, got {shape}")
        if all(is_zero_matrix(present[k]) for k in DERIVATIVES if k in present):
            raise ValueError("at least one derivative coefficient must be nonzero")
        if self.action not in ("left", "right"):
            raise ValueError("action must be 'left' or 'right'")

    @property
    def n(self) -> int:
        return next(iter(self.coefficients().values())).shape[0]

    def coefficients(self) -> dict[str, np.ndarray]:
        out = {}
        for key in COEFFICIENTS:
            m = getattr(self, key)
            if m is not None:
                out[key] = m
        return out

    @property
    def spatial_dims(self) -> int:
        """Highest spatial axis with a nonzero coefficient (0 if none)."""
        dims = 0
        for axis, key in enumerate(SPATIAL, start=1):
            m = getattr(self, key)
            if m is not None and not is_zero_matrix(m):
                dims = axis
        return dims

    @property
    def has_time(self) -> bool:
        return self.At is not None and not is_zero_matrix(self.At)


def conjugate_system(eq: LinearMatrixPDE) -> LinearMatrixPDE:
    """The equation satisfied by the Hermitian-conjugate field.

    Conjugating ``sum A u' + kappa A0 u = 0`` gives
    ``sum u'^+ A^+ + kappa u^+ A0^+ = 0``, a right action of the adjoint
    coefficients on the row field ``u^+``.  The returned system stores the
    adjoint coefficients and flips ``action``; applying it twice returns the
    original system.
    """
    coeffs = {k: conj_transpose(m) for k, m in eq.coefficients().items()}
    flipped = "right" if eq.action == "left" else "left"
    return replace(eq, **coeffs, action=flipped, name=f"conj({eq.name})")


def _curl_matrices(c: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # (curl F)_a = eps_abc d_b F_c  ->  (L_b)_ac = eps_abc
    eps = np.zeros((3, 3, 3))
    for a, b, cc, s in [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1), (0, 2, 1, -1), (2, 1, 0, -1), (1, 0, 2, -1)]:
        eps[a, b, cc] = s
    return tuple(-c * eps[:, b, :] for b in range(3))


def maxwell_free_system(dimension: int = 3, c: float = 1.0) -> LinearMatrixPDE:
    """Source-free Maxwell equations for ``F = E + i H/lambda``.

    With ``H`` measured in units of the free-space impedance the curl
    equations combine into ``i dF/dt - c curl F = 0``.  In one dimension the
    transverse pair ``(F_y, F_z)`` of a wave along x is kept.
    """
    if dimension == 3:
        lx, ly, lz = _curl_matrices(c)
        at = 1j * np.eye(3)
        return LinearMatrixPDE(At=at, Ax=lx, Ay=ly, Az=lz, kappa=0.0, name="maxwell_free_3d")
    if dimension == 1:
        # d/dx of (F_y, F_z) enters the curl as (-dF_z/dx, dF_y/dx)
        ax = -c * np.array([[0.0, -1.0], [1.0, 0.0]])
        return LinearMatrixPDE(At=1j * np.eye(2), Ax=ax, kappa=0.0, name="maxwell_free_1d")
    raise ValueError("dimension must be 1 or 3")


def schrodinger_system(h=None, form: str = "complex") -> LinearMatrixPDE:
    """``i du/dt - H u = 0`` with ``H`` defaulting to ``diag(1, -1)``.

    ``form="doubled"`` returns the real-doubled version in which the scalar
    ``i`` is the quaternion generator J' (see :func:`doubled_form`).
    """
    if h is None:
        h = [[1, 0], [0, -1]]
    h = make_matrix(h, EXACT) if not isinstance(h, np.ndarray) or h.dtype == object else h
    n = h.shape[0]
    if is_exact_matrix(h):
        at = make_matrix([[Complex(0, 1) if p == q else 0 for q in range(n)] for p in range(n)], EXACT)
        a0 = make_matrix(-h, EXACT)
    else:
        at, a0 = 1j * np.eye(n), -h
    eq = LinearMatrixPDE(At=at, A0=a0, kappa=1, name="schrodinger")
    if form == "complex":
        return eq
    if form == "doubled":
        return doubled_form(eq, "quaternion")
    raise ValueError("form must be 'complex' or 'doubled'")


def complex_structure(structure: str, exact: bool = True) -> np.ndarray:
    """2x2 matrix standing for the scalar ``i`` in a doubled form.

    ``"quaternion"``: J' = [[0, 1], [-1, 0]], a quaternion generator, so the
    other generators anticommute with it.  ``"central"``: ``i*E``, which
    commutes with every 2x2 matrix.
    """
    if structure == "quaternion":
        rows = [[0, 1], [-1, 0]]
    elif structure == "central":
        rows = [[Complex(0, 1), 0], [0, Complex(0, 1)]]
    else:
        raise ValueError("structure must be 'quaternion' or 'central'")
    return make_matrix(rows, EXACT if exact else FLOAT)


def _double(m: np.ndarray, jc: np.ndarray) -> np.ndarray:
    if is_exact_matrix(m):
        a, b = real_part(m), imag_part(m)
        e = make_matrix([[1, 0], [0, 1]], EXACT)
        return make_matrix(np.kron(a, e) + np.kron(b, jc), EXACT)
    m = np.asarray(m, dtype=complex)
    jcf = to_mode(jc, FLOAT).astype(complex)
    out = np.kron(m.real, np.eye(2)) + np.kron(m.imag, jcf)
    return out.real.copy() if np.all(out.imag == 0) else out


def doubled_form(eq: LinearMatrixPDE, structure: str = "quaternion") -> LinearMatrixPDE:
    """Rewrite an n-component complex system on 2n components.

    Each coefficient ``A + iB`` becomes ``A (x) E + B (x) Jc`` where ``Jc`` is
    :func:`complex_structure`.  Transformations of the doubled field act as
    ``I_n (x) G`` for 2x2 ``G``.
    """
    exact = all(is_exact_matrix(m) for m in eq.coefficients().values())
    jc = complex_structure(structure, exact)
    coeffs = {k: _double(m, jc) for k, m in eq.coefficients().items()}
    note = {
        "quaternion": "scalar i realized by the quaternion generator J' (non-central)",
        "central": "scalar i realized by the central matrix i*E",
    }[structure]
    return replace(eq, **coeffs, name=f"{eq.name}[doubled:{structure}]", notes=eq.notes + (note,))
