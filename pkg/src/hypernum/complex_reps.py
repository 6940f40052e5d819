"""Complex numbers carried by square matrices.

A :class:`CyclicBasis` is a pair (unit, gen) whose powers ``gen**0 .. gen**(m-1)``
play the roles of ``1, i, i**2, ...``.  For ``m = 4`` those are the images of
``1, i, -1, -i``.  Three bases are built in:

``std2x2``
    the real 2x2 form ``a + ib -> [[a, -b], [b, a]]``;
``zeroone_a``, ``zeroone_b``
    4x4 permutation ([0,1]) matrices, where negative numbers are realized
    without minus signs, see :class:`SignedPair`.

Encoding and decoding are implemented for ``m = 4`` only; validation accepts
any ``m >= 3``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ._num import (
    EXACT,
    FLOAT,
    FLOAT_TOL,
    Complex,
    NotInSpanError,
    as_real,
    identity,
    is_exact_matrix,
    is_zero_matrix,
    make_matrix,
    matpow,
    matrices_equal,
    matrix_from_json,
    matrix_to_json,
    resolve_mode,
    span_coefficients,
    to_mode,
)

__all__ = [
    "BUILTIN_BASES",
    "BasisIsomorphism",
    "ComplexRep",
    "CyclicBasis",
    "InvalidBasisError",
    "NotRepresentableError",
    "SignedPair",
    "Validation",
    "basis_from_json",
    "basis_isomorphism",
    "basis_to_json",
    "builtin_basis",
    "decode",
    "encode",
    "rep_add",
    "rep_mul",
    "validate_cyclic",
]


class InvalidBasisError(ValueError):
    pass


class NotRepresentableError(ValueError):
    """The matrix does not represent a complex number in this basis."""


_STD_UNIT = [[1, 0], [0, 1]]
_STD_GEN = [[0, -1], [1, 0]]

_E1 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
_E2 = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]]
_E3 = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
_E4 = [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]

_E1P = _E1
_E2P = [[0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0], [1, 0, 0, 0]]
_E3P = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
_E4P = [[0, 0, 0, 1], [0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0]]

#: Printed tables for the built-in bases, power order 1, i, -1, -i.
BUILTIN_BASES = {
    "std2x2": (_STD_UNIT, _STD_GEN, [[-1, 0], [0, -1]], [[0, 1], [-1, 0]]),
    "zeroone_a": (_E1, _E2, _E3, _E4),
    "zeroone_b": (_E1P, _E2P, _E3P, _E4P),
}

#: The 2x2 matrix printed as the imaginary basis element next to the real
#: map a + ib -> [[a, -b], [b, a]].  Its nonzero slots are where b lands; as a
#: complex matrix it squares to +1, so ``std2x2`` uses -i times it.
PRINTED_IMAGINARY_2X2 = [[0, Complex(0, -1)], [Complex(0, 1), 0]]


class Validation(NamedTuple):
    ok: bool
    witness: str | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class CyclicBasis:
    """Ordered powers of a generator that cycle with period ``m``."""

    unit: np.ndarray
    gen: np.ndarray
    m: int = 4
    name: str = "custom"
    _validation: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        if self.unit.ndim != 2 or self.unit.shape[0] != self.unit.shape[1]:
            raise ValueError("unit must be a square matrix")
        if self.unit.shape[0] < 2:
            raise ValueError("basis matrices must be at least 2x2")
        if not isinstance(self.m, int) or self.m < 3:
            raise ValueError("cycle length m must be an integer >= 3")

    @property
    def dim(self) -> int:
        return self.unit.shape[0]

    @property
    def mode(self) -> str:
        return EXACT if is_exact_matrix(self.unit) and is_exact_matrix(self.gen) else FLOAT

    def power(self, k: int) -> np.ndarray:
        """``gen**k`` for ``0 <= k < m``; the 0th power is the unit."""
        k %= self.m
        if k == 0:
            return self.unit
        return matpow(self.gen, k)

    @property
    def powers(self) -> list[np.ndarray]:
        return [self.power(k) for k in range(self.m)]

    def validation(self) -> Validation:
        if not self._validation:
            self._validation.append(validate_cyclic(self))
        return self._validation[0]

    def to_mode(self, mode: str) -> CyclicBasis:
        return CyclicBasis(to_mode(self.unit, mode), to_mode(self.gen, mode), self.m, self.name)


def builtin_basis(name: str, mode: str | None = None) -> CyclicBasis:
    """One of ``std2x2``, ``zeroone_a``, ``zeroone_b``."""
    try:
        unit, gen, *_ = BUILTIN_BASES[name]
    except KeyError:
        raise ValueError(f"unknown basis {name!r}; expected one of {sorted(BUILTIN_BASES)}") from None
    mode = resolve_mode(mode)
    return CyclicBasis(make_matrix(unit, mode), make_matrix(gen, mode), 4, name)


def validate_cyclic(candidate: CyclicBasis, tol: float = FLOAT_TOL) -> Validation:
    """Check the cyclic recurrence of the basis.

    Identities are checked in order and the first one that fails is named in
    the witness: ``gen^m = unit``, distinct powers, unit acting as identity.
    """
    unit, gen, m = candidate.unit, candidate.gen, candidate.m
    if unit.shape != gen.shape:
        raise ValueError(f"dimension mismatch: unit {unit.shape} vs gen {gen.shape}")
    powers = [unit] + [matpow(gen, k) for k in range(1, m)]
    top = powers[-1] @ gen
    if not matrices_equal(top, unit, tol):
        return Validation(False, f"gen^{m} != unit")
    for a in range(m):
        for b in range(a + 1, m):
            if matrices_equal(powers[a], powers[b], tol):
                return Validation(False, f"powers not distinct: gen^{a} == gen^{b}")
    for k, p in enumerate(powers):
        if not (matrices_equal(unit @ p, p, tol) and matrices_equal(p @ unit, p, tol)):
            return Validation(False, f"unit is not an identity on the span: unit*gen^{k} != gen^{k}")
    return Validation(True, None)


@dataclass(frozen=True)
class SignedPair:
    """A real number ``pos - neg`` written with nonnegative parts.

    Its matrix is ``pos*[[1,0],[0,1]] + neg*[[0,1],[1,0]]``: the swap matrix
    stands for -1, so signs never appear among the entries.
    """

    pos: object = 0
    neg: object = 0

    def __post_init__(self):
        if self.pos < 0 or self.neg < 0:
            raise ValueError("SignedPair parts must be nonnegative")

    @classmethod
    def from_real(cls, x) -> SignedPair:
        x = as_real(x)
        return cls(x, 0) if x >= 0 else cls(0, -x)

    @property
    def value(self):
        return self.pos - self.neg

    def canonical(self) -> SignedPair:
        low = min(self.pos, self.neg)
        return SignedPair(self.pos - low, self.neg - low)

    def to_matrix(self, mode: str | None = None) -> np.ndarray:
        return make_matrix([[self.pos, self.neg], [self.neg, self.pos]], mode)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> SignedPair:
        if m.shape != (2, 2) or m[0, 0] != m[1, 1] or m[0, 1] != m[1, 0]:
            raise NotRepresentableError("not of the form [[p, n], [n, p]]")
        return cls(as_real(m[0, 0]), as_real(m[0, 1]))

    def __add__(self, other: SignedPair) -> SignedPair:
        return SignedPair(self.pos + other.pos, self.neg + other.neg).canonical()

    def __mul__(self, other: SignedPair) -> SignedPair:
        return SignedPair(
            self.pos * other.pos + self.neg * other.neg,
            self.pos * other.neg + self.neg * other.pos,
        ).canonical()


@dataclass(frozen=True, eq=False)
class ComplexRep:
    basis: CyclicBasis
    value: Complex
    matrix: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, ComplexRep):
            return NotImplemented
        return self.basis is other.basis and self.value == other.value

    def __hash__(self):
        return hash((id(self.basis), self.value))

    def __add__(self, other):
        return rep_add(self, other)

    def __mul__(self, other):
        return rep_mul(self, other)


def _require_encodable(basis: CyclicBasis):
    if basis.m != 4:
        raise NotImplementedError("encode/decode are only defined for cycle length m = 4")
    check = basis.validation()
    if not check.ok:
        raise InvalidBasisError(f"basis {basis.name!r} failed validation: {check.witness}")


def _coefficients(z: Complex) -> list:
    # weights on 1, i, -1, -i; for the 2x2 form the signed weights suffice
    a, b = z.re, z.im
    return [max(a, 0), max(b, 0), max(-a, 0), max(-b, 0)]


def _combine(basis: CyclicBasis, coeffs) -> np.ndarray:
    powers = basis.powers
    out = powers[0] * coeffs[0]
    for c, p in zip(coeffs[1:], powers[1:]):
        out = out + p * c
    if is_exact_matrix(out):
        return make_matrix(out, EXACT)
    return out


def encode(z, basis: CyclicBasis) -> ComplexRep:
    """Matrix of ``z`` in ``basis``.

    The real and imaginary parts are split into nonnegative weights on the
    images of ``1, i, -1, -i``.  For ``std2x2`` this is ``[[a, -b], [b, a]]``;
    for the [0,1] bases every entry of the result is nonnegative.
    """
    _require_encodable(basis)
    z = Complex.of(z)
    if basis.mode == EXACT and not z.is_exact:
        raise ValueError("exact-mode basis needs exact (int/Fraction) components")
    return ComplexRep(basis, z, _combine(basis, _coefficients(z)))


def decode_matrix(m: np.ndarray, basis: CyclicBasis, tol: float = FLOAT_TOL) -> Complex:
    _require_encodable(basis)
    if m.shape != basis.unit.shape:
        raise NotRepresentableError(f"expected a {basis.unit.shape} matrix, got {m.shape}")
    if basis.mode == EXACT and not is_exact_matrix(m):
        m = to_mode(m, EXACT)
    elif basis.mode == FLOAT:
        m = to_mode(m, FLOAT)
    try:
        c = span_coefficients(basis.powers, m, tol)
    except NotInSpanError as exc:
        raise NotRepresentableError(f"not a complex-number representative: {exc}") from None
    # kernel relations among the powers map to zero because x^2 + 1 divides
    # the minimal polynomial of a valid m = 4 generator
    return Complex(as_real(c[0] - c[2]), as_real(c[1] - c[3]))


def decode(rep: ComplexRep | np.ndarray, basis: CyclicBasis | None = None) -> Complex:
    if isinstance(rep, ComplexRep):
        return decode_matrix(rep.matrix, rep.basis)
    if basis is None:
        raise TypeError("a bare matrix needs a basis to decode against")
    return decode_matrix(rep, basis)


def _check_same(x: ComplexRep, y: ComplexRep):
    if x.basis is not y.basis:
        raise ValueError("basis mismatch between operands")


def rep_mul(x: ComplexRep, y: ComplexRep) -> ComplexRep:
    _check_same(x, y)
    z = decode_matrix(x.matrix @ y.matrix, x.basis)
    return encode(z, x.basis)


def rep_add(x: ComplexRep, y: ComplexRep) -> ComplexRep:
    _check_same(x, y)
    z = decode_matrix(x.matrix + y.matrix, x.basis)
    return encode(z, x.basis)


def rep_inverse(x: ComplexRep) -> ComplexRep:
    return encode(Complex(1, 0) / x.value, x.basis)


@dataclass(frozen=True)
class BasisIsomorphism:
    """Power-to-power correspondence between two bases of equal cycle length."""

    source: CyclicBasis
    target: CyclicBasis

    @property
    def table(self) -> list[tuple[int, np.ndarray, np.ndarray]]:
        return [(k, self.source.power(k), self.target.power(k)) for k in range(self.source.m)]

    def mapping(self) -> dict[int, int]:
        return {k: k for k in range(self.source.m)}

    def apply(self, m: np.ndarray) -> np.ndarray:
        """Carry a matrix in the span of the source powers across."""
        if isinstance(m, ComplexRep):
            m = m.matrix
        try:
            c = span_coefficients(self.source.powers, m)
        except NotInSpanError as exc:
            raise NotRepresentableError(str(exc)) from None
        return _combine(self.target, c)

    def apply_rep(self, rep: ComplexRep) -> ComplexRep:
        mat = self.apply(rep.matrix)
        return ComplexRep(self.target, decode_matrix(mat, self.target), mat)


def basis_isomorphism(a: CyclicBasis, b: CyclicBasis) -> BasisIsomorphism:
    if a.m != b.m:
        raise ValueError(f"cycle lengths differ: {a.m} vs {b.m}")
    for basis in (a, b):
        check = validate_cyclic(basis)
        if not check.ok:
            raise InvalidBasisError(f"basis {basis.name!r} failed validation: {check.witness}")
    return BasisIsomorphism(a, b)


def basis_to_json(basis: CyclicBasis) -> str:
    return json.dumps(
        {
            "m": basis.m,
            "dim": basis.dim,
            "unit": matrix_to_json(basis.unit),
            "gen": matrix_to_json(basis.gen),
        }
    )


def basis_from_json(doc: str | dict, mode: str | None = None, name: str = "custom") -> CyclicBasis:
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        m, dim, unit, gen = doc["m"], doc["dim"], doc["unit"], doc["gen"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"basis document is missing field {exc}") from None
    unit = matrix_from_json(unit, mode)
    gen = matrix_from_json(gen, mode)
    if unit.shape != (dim, dim):
        raise ValueError(f"unit is {unit.shape}, expected {(dim, dim)}")
    if gen.shape != (dim, dim):
        raise ValueError(f"dimension mismatch: gen is {gen.shape}, expected {(dim, dim)}")
    return CyclicBasis(unit, gen, int(m), name)


def is_identity(m: np.ndarray) -> bool:
    mode = EXACT if is_exact_matrix(m) else FLOAT
    return is_zero_matrix(m - identity(m.shape[0], mode))

