"""Candidate transformation groups, given by constant generator matrices."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .._num import EXACT, FLOAT, is_exact_matrix, make_matrix, to_mode
from ..quaternion import matrix_basis

KINDS = ("total_gauge", "quaternion_left", "embedded_complex", "duality_rotation", "custom")


class SingularGeneratorError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TransformGroup:
    kind: str
    generators: tuple
    names: tuple
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}; expected one of {KINDS}")
        if not self.generators:
            raise ValueError("a group needs at least one generator")
        if len(self.names) != len(self.generators):
            raise ValueError("one name per generator is required")
        shapes = {g.shape for g in self.generators}
        if len(shapes) != 1:
            raise ValueError(f"generators have different shapes: {sorted(shapes)}")
        for name, g in zip(self.names, self.generators):
            f = to_mode(g, FLOAT).astype(complex)
            if f.ndim != 2 or f.shape[0] != f.shape[1]:
                raise ValueError(f"generator {name} is not square")
            if np.linalg.matrix_rank(f) < f.shape[0]:
                raise SingularGeneratorError(f"generator {name} is singular")

    @property
    def n(self) -> int:
        return self.generators[0].shape[0]

    @property
    def label(self) -> str:
        if not self.params:
            return self.kind
        inner = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.kind}({inner})"

    # -- constructors -------------------------------------------------------

    @classmethod
    def total_gauge(cls, n: int, beta: float, alpha: float) -> TransformGroup:
        """``u -> beta exp(i alpha) u`` as a scalar matrix."""
        if not beta > 0:
            raise ValueError("beta must be a positive real")
        g = beta * cmath.exp(1j * alpha) * np.eye(n)
        return cls("total_gauge", (g,), ("beta*exp(i*alpha)",), {"beta": beta, "alpha": alpha})

    @classmethod
    def quaternion_left(cls, n: int, mode: str = EXACT) -> TransformGroup:
        """Left action of I', J', K' on each 2-block of a 2m-component field."""
        if n % 2:
            raise ValueError("quaternion generators act on an even number of components")
        basis = matrix_basis("pauli", mode)
        gens = tuple(_blockwise(g, n // 2) for g in basis.generators)
        return cls("quaternion_left", gens, basis.labels[1:])

    @classmethod
    def embedded_complex(cls, n: int, mode: str = EXACT) -> TransformGroup:
        """The complex subgroup spanned by E and J' inside the quaternions."""
        if n % 2:
            raise ValueError("the embedded complex subgroup acts on an even number of components")
        basis = matrix_basis("pauli", mode)
        return cls("embedded_complex", (_blockwise(basis.matrices[2], n // 2),), ("J'",))

    @classmethod
    def duality_rotation(cls, n: int, theta: float, form: str = "phase") -> TransformGroup:
        """``(E, H) -> (E cos t + H sin t, H cos t - E sin t)``.

        On ``F = E + iH`` this is the phase ``exp(-i t)`` (``form="phase"``);
        ``form="real"`` acts on stacked ``(E, H)`` with ``n = 2m``.
        """
        if form == "phase":
            g = cmath.exp(-1j * theta) * np.eye(n)
        elif form == "real":
            if n % 2:
                raise ValueError("real duality rotation needs stacked (E, H)")
            m = n // 2
            c, s = math.cos(theta), math.sin(theta)
            g = np.block([[c * np.eye(m), s * np.eye(m)], [-s * np.eye(m), c * np.eye(m)]])
        else:
            raise ValueError("form must be 'phase' or 'real'")
        return cls("duality_rotation", (g,), ("R(theta)",), {"theta": theta})

    @classmethod
    def custom(cls, generators, names=None) -> TransformGroup:
        gens = tuple(g if isinstance(g, np.ndarray) else make_matrix(g) for g in generators)
        names = tuple(names) if names is not None else tuple(f"G{k}" for k in range(len(gens)))
        return cls("custom", gens, names)


def _blockwise(g: np.ndarray, m: int) -> np.ndarray:
    if m == 1:
        return g
    eye = make_matrix(np.eye(m, dtype=int).tolist(), EXACT if is_exact_matrix(g) else FLOAT)
    out = np.kron(eye, g)
    return make_matrix(out, EXACT) if is_exact_matrix(g) else out
