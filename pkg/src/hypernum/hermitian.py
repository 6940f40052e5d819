"""Hermitian matrices as complex numbers with matrix parts.

A Hermitian ``H`` splits into ``S + iA`` with ``S`` real symmetric and ``A``
real antisymmetric; the real block matrix ``[[S, -A], [A, S]]`` acts on
stacked ``(Re x, Im x)`` exactly as ``H`` acts on ``x``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ._num import (
    EXACT,
    FLOAT_TOL,
    Complex,
    conj_transpose,
    imag_part,
    is_exact_matrix,
    is_zero_matrix,
    make_matrix,
    matrix_from_json,
    matrix_to_json,
    real_part,
)

__all__ = [
    "BlockComplexForm",
    "NotHermitianError",
    "eigen_split",
    "heisenberg_bracket",
    "hermitian_bracket",
    "hermitian_from_json",
    "hermitian_to_json",
    "is_hermitian",
    "merge",
    "random_hermitian",
    "split",
]


class NotHermitianError(ValueError):
    pass


def _square(m: np.ndarray, what: str = "matrix"):
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{what} must be square, got shape {m.shape}")


def is_hermitian(h: np.ndarray, tol: float = FLOAT_TOL) -> bool:
    _square(h)
    return is_zero_matrix(h - conj_transpose(h), tol)


@dataclass(frozen=True, eq=False)
class BlockComplexForm:
    S: np.ndarray
    A: np.ndarray

    def __post_init__(self):
        _square(self.S, "S")
        if self.A.shape != self.S.shape:
            raise ValueError("S and A must have the same shape")

    @property
    def dim(self) -> int:
        return self.S.shape[0]

    @property
    def block(self) -> np.ndarray:
        return np.block([[self.S, -self.A], [self.A, self.S]])

    def act(self, x: np.ndarray) -> np.ndarray:
        """Apply the block form to a complex vector via its real stacking."""
        x = np.asarray(x, dtype=complex)
        stacked = np.concatenate([x.real, x.imag])
        out = self.block.astype(float) @ stacked
        return out[: self.dim] + 1j * out[self.dim:]


def split(h: np.ndarray, tol: float = FLOAT_TOL) -> BlockComplexForm:
    """``H -> (S, A)`` with ``S = Re H`` symmetric and ``A = Im H`` antisymmetric."""
    if not is_hermitian(h, tol):
        raise NotHermitianError("matrix is not Hermitian")
    return BlockComplexForm(real_part(h), imag_part(h))


def merge(b: BlockComplexForm, tol: float = FLOAT_TOL) -> np.ndarray:
    s, a = b.S, b.A
    if not is_zero_matrix(s - s.T, tol):
        raise ValueError("S is not symmetric")
    if not is_zero_matrix(a + a.T, tol):
        raise ValueError("A is not antisymmetric")
    if is_exact_matrix(s) and is_exact_matrix(a):
        rows = [[Complex(s[p, q], a[p, q]) for q in range(b.dim)] for p in range(b.dim)]
        return make_matrix(rows, EXACT)
    return np.asarray(s, dtype=float) + 1j * np.asarray(a, dtype=float)


def heisenberg_bracket(x: np.ndarray, h: np.ndarray) -> np.ndarray:
    """The literal bracket ``xH - Hx`` (no ``i`` or Planck factor).

    For Hermitian inputs the result is anti-Hermitian.
    """
    _square(x)
    if x.shape != h.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {h.shape}")
    return x @ h - h @ x


def hermitian_bracket(x: np.ndarray, h: np.ndarray) -> np.ndarray:
    """``i (xH - Hx)``, the Hermitian variant used with the usual ``i/hbar``."""
    c = heisenberg_bracket(x, h)
    if is_exact_matrix(c):
        return make_matrix(c * Complex(0, 1), EXACT)
    return 1j * c


def eigen_split(values) -> list[tuple[float, float]]:
    """Complex eigenvalues as (expectation, dispersion) = (Re, Im) pairs."""
    out = []
    for v in values:
        z = Complex.of(v)
        out.append((z.re, z.im))
    return out


def hermitian_to_json(h: np.ndarray) -> str:
    rows = matrix_to_json(h)
    return json.dumps([[v if isinstance(v, dict) else {"re": v, "im": 0} for v in row] for row in rows])


def hermitian_from_json(doc: str | list, mode: str | None = None) -> np.ndarray:
    if isinstance(doc, str):
        doc = json.loads(doc)
    h = matrix_from_json(doc, mode)
    if not is_hermitian(h):
        raise NotHermitianError("matrix is not Hermitian")
    return h


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (m + m.conj().T) / 2

