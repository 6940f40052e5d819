"""The ring Z_n = C + C + ... + C of hypercomplex n-numbers.

Elements are rows ``[k_0, ..., k_{n-1}]`` of complex numbers with
componentwise arithmetic.  The projectors ``pi_a`` (1 in slot ``a``, 0
elsewhere) are idempotent, mutually annihilating and sum to the identity, so
every element is ``sum_a k_a pi_a`` with eigenvalues ``k_a``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from ._num import Complex, scalar_from_json, scalar_to_json

__all__ = [
    "HyperNumber",
    "decompose",
    "one",
    "project",
    "projector",
    "projector_basis",
    "recompose",
    "zero",
    "zn_add",
    "zn_mul",
]


@dataclass(frozen=True)
class HyperNumber:
    k: tuple

    def __init__(self, k):
        comps = tuple(Complex.of(v) for v in k)
        if not comps:
            raise ValueError("a hypercomplex n-number needs n >= 1 components")
        object.__setattr__(self, "k", comps)

    @property
    def n(self) -> int:
        return len(self.k)

    def __add__(self, other: HyperNumber) -> HyperNumber:
        return zn_add(self, other)

    def __sub__(self, other: HyperNumber) -> HyperNumber:
        _same_n(self, other)
        return HyperNumber([a - b for a, b in zip(self.k, other.k)])

    def __mul__(self, other):
        if isinstance(other, HyperNumber):
            return zn_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __neg__(self) -> HyperNumber:
        return HyperNumber([-a for a in self.k])

    def scale(self, c) -> HyperNumber:
        c = Complex.of(c)
        return HyperNumber([c * a for a in self.k])

    def isclose(self, other: HyperNumber, tol: float = 1e-12) -> bool:
        return self.n == other.n and all(a.isclose(b, tol) for a, b in zip(self.k, other.k))

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "k": [{"re": scalar_to_json(c.re), "im": scalar_to_json(c.im)} for c in self.k]}
        )

    @classmethod
    def from_json(cls, doc: str | dict) -> HyperNumber:
        if isinstance(doc, str):
            doc = json.loads(doc)
        comps = [scalar_from_json(c) for c in doc["k"]]
        if len(comps) != doc["n"]:
            raise ValueError(f"declared n={doc['n']} but {len(comps)} components given")
        return cls(comps)


def _same_n(x: HyperNumber, y: HyperNumber):
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: Z_{x.n} vs Z_{y.n}")


def zn_add(x: HyperNumber, y: HyperNumber) -> HyperNumber:
    _same_n(x, y)
    return HyperNumber([a + b for a, b in zip(x.k, y.k)])


def zn_mul(x: HyperNumber, y: HyperNumber) -> HyperNumber:
    _same_n(x, y)
    return HyperNumber([a * b for a, b in zip(x.k, y.k)])


def zero(n: int) -> HyperNumber:
    return HyperNumber([0] * n)


def one(n: int) -> HyperNumber:
    return HyperNumber([1] * n)


def projector(n: int, alpha: int) -> HyperNumber:
    if not 0 <= alpha < n:
        raise IndexError(f"projector index {alpha} out of range for n={n}")
    return HyperNumber([1 if a == alpha else 0 for a in range(n)])


def projector_basis(n: int) -> list[HyperNumber]:
    return [projector(n, a) for a in range(n)]


def project(z: HyperNumber, alpha: int) -> HyperNumber:
    """``z * pi_alpha = k_alpha * pi_alpha``."""
    if not 0 <= alpha < z.n:
        raise IndexError(f"projector index {alpha} out of range for n={z.n}")
    return projector(z.n, alpha).scale(z.k[alpha])


def decompose(z: HyperNumber) -> list[tuple[Complex, HyperNumber]]:
    return [(z.k[a], projector(z.n, a)) for a in range(z.n)]


def recompose(parts) -> HyperNumber:
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to recompose")
    total = zero(parts[0][1].n)
    for k, pi in parts:
        total = total + pi.scale(k)
    return total
