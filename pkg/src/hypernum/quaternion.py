"""Quaternions over three interchangeable bases.

``abstract``
    the symbols e, i, j, k with the multiplication table :data:`MUL_TABLE`;
``pauli``
    2x2 complex matrices E, I' = i*sigma_z, J' = i*sigma_y, K' = i*sigma_x;
``EIJK``
    the 2x2 matrices E, I, J, K listed alongside the biquaternion form.

All three share one multiplication engine (the table).  The matrix bases can
be cross-checked against it with literal matrix products, see
:func:`table_mismatches`.  Only ``pauli`` passes that check: the EIJK
matrices multiply commutatively (``I J = J I = K`` and ``I**2 = E``), so
they realize the bicomplex numbers rather than the quaternions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from ._num import (
    EXACT,
    FLOAT,
    Complex,
    NotInSpanError,
    as_real,
    conj_transpose,
    exact_sqrt,
    frobenius,
    im_part,
    is_exact_real,
    is_exact_scalar,
    is_zero_matrix,
    make_matrix,
    re_part,
    resolve_mode,
    span_coefficients,
    to_mode,
)
from .complex_reps import CyclicBasis, InvalidBasisError, NotRepresentableError, validate_cyclic

__all__ = [
    "BASIS_TAGS",
    "BiquaternionForm",
    "MUL_TABLE",
    "MatrixBasis",
    "Quaternion",
    "embedded_complex_subalgebra",
    "from_biquaternion",
    "from_matrix",
    "group_commutativity_report",
    "matrix_basis",
    "multiplication_table",
    "qconj",
    "qinv",
    "qmul",
    "qnorm",
    "render_table",
    "table_mismatches",
    "to_biquaternion",
    "to_matrix",
]

BASIS_TAGS = ("abstract", "EIJK", "pauli")
_ALIASES = {"abstract_eijk": "abstract", "eijk": "EIJK"}

LABELS = {
    "abstract": ("e", "i", "j", "k"),
    "EIJK": ("E", "I", "J", "K"),
    "pauli": ("E", "I'", "J'", "K'"),
}

# MUL_TABLE[r][c] = (sign, index) of basis[r] * basis[c], order e, i, j, k
MUL_TABLE = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)

_I = Complex(0, 1)
_MATRICES = {
    "EIJK": (
        [[1, 0], [0, 1]],
        [[0, -_I], [_I, 0]],
        [[0, 1], [-1, 0]],
        [[_I, 0], [0, _I]],
    ),
    "pauli": (
        [[1, 0], [0, 1]],
        [[_I, 0], [0, -_I]],
        [[0, 1], [-1, 0]],
        [[0, _I], [_I, 0]],
    ),
}


def _tag(tag: str) -> str:
    tag = _ALIASES.get(tag, tag)
    if tag not in BASIS_TAGS:
        raise ValueError(f"unknown basis {tag!r}; expected one of {BASIS_TAGS}")
    return tag


@dataclass(frozen=True)
class Quaternion:
    """``a0 e + a1 i + a2 j + a3 k`` tagged with the basis it is written in."""

    a0: object = 0
    a1: object = 0
    a2: object = 0
    a3: object = 0
    basis: str = "abstract"

    def __post_init__(self):
        object.__setattr__(self, "basis", _tag(self.basis))
        for name in ("a0", "a1", "a2", "a3"):
            object.__setattr__(self, name, as_real(getattr(self, name)))

    @classmethod
    def unit(cls, index: int, basis: str = "abstract") -> Quaternion:
        coeffs = [0, 0, 0, 0]
        coeffs[index] = 1
        return cls(*coeffs, basis=basis)

    @property
    def coeffs(self) -> tuple:
        return (self.a0, self.a1, self.a2, self.a3)

    @property
    def real(self):
        return self.a0

    @property
    def vector(self) -> tuple:
        return (self.a1, self.a2, self.a3)

    @property
    def is_exact(self) -> bool:
        return all(is_exact_real(a) for a in self.coeffs)

    def __add__(self, other: Quaternion) -> Quaternion:
        _same_basis(self, other)
        return Quaternion(*(a + b for a, b in zip(self.coeffs, other.coeffs)), basis=self.basis)

    def __sub__(self, other: Quaternion) -> Quaternion:
        _same_basis(self, other)
        return Quaternion(*(a - b for a, b in zip(self.coeffs, other.coeffs)), basis=self.basis)

    def __neg__(self) -> Quaternion:
        return Quaternion(*(-a for a in self.coeffs), basis=self.basis)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other)
        return Quaternion(*(a * other for a in self.coeffs), basis=self.basis)

    def __rmul__(self, other):
        return Quaternion(*(other * a for a in self.coeffs), basis=self.basis)

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, qinv(other))
        return Quaternion(*(a / other for a in self.coeffs), basis=self.basis)

    def isclose(self, other: Quaternion, tol: float = 1e-10) -> bool:
        return self.basis == other.basis and all(
            abs(float(a) - float(b)) <= tol for a, b in zip(self.coeffs, other.coeffs)
        )

    def to_json(self) -> str:
        return json.dumps({"basis": self.basis, "a": [_num_json(a) for a in self.coeffs]})

    @classmethod
    def from_json(cls, doc: str | dict) -> Quaternion:
        if isinstance(doc, str):
            doc = json.loads(doc)
        a = doc["a"]
        if len(a) != 4:
            raise ValueError("a quaternion needs exactly four coefficients")
        return cls(*a, basis=doc.get("basis", "abstract"))

    def __str__(self):
        labels = LABELS[self.basis]
        return " + ".join(f"{a}{lab}" for a, lab in zip(self.coeffs, labels))


def _num_json(a):
    return str(a) if is_exact_real(a) and not isinstance(a, int) else a


def _same_basis(p: Quaternion, q: Quaternion):
    if p.basis != q.basis:
        raise ValueError(f"basis mismatch: {p.basis} vs {q.basis}")


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Bilinear extension of :data:`MUL_TABLE`; not commutative."""
    _same_basis(p, q)
    out = [0, 0, 0, 0]
    for r, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for c, b in enumerate(q.coeffs):
            sign, idx = MUL_TABLE[r][c]
            out[idx] = out[idx] + sign * a * b
    return Quaternion(*out, basis=p.basis)


def qconj(q: Quaternion) -> Quaternion:
    return Quaternion(q.a0, -q.a1, -q.a2, -q.a3, basis=q.basis)


def qnorm2(q: Quaternion):
    return sum(a * a for a in q.coeffs)


def qnorm(q: Quaternion):
    """Euclidean norm of the coefficients; rational when it is a perfect square."""
    return exact_sqrt(qnorm2(q))


def qinv(q: Quaternion) -> Quaternion:
    n2 = qnorm2(q)
    if n2 == 0:
        raise ZeroDivisionError("zero quaternion has no inverse")
    if is_exact_real(n2):
        n2 = Fraction(n2)
    c = qconj(q)
    return Quaternion(*(a / n2 for a in c.coeffs), basis=q.basis)


# -- matrix bases -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MatrixBasis:
    name: str
    labels: tuple
    matrices: tuple

    @property
    def unit(self) -> np.ndarray:
        return self.matrices[0]

    @property
    def generators(self) -> tuple:
        return self.matrices[1:]

    def __iter__(self):
        return iter(self.matrices)


def matrix_basis(tag: str, mode: str | None = None) -> MatrixBasis:
    tag = _tag(tag)
    if tag == "abstract":
        raise ValueError("the abstract basis has no matrix realization")
    mode = resolve_mode(mode)
    return MatrixBasis(tag, LABELS[tag], tuple(make_matrix(m, mode) for m in _MATRICES[tag]))


def to_matrix(q: Quaternion) -> np.ndarray:
    """``sum a_n B_n`` over the matrix basis named by ``q.basis``.

    For ``pauli`` this is ``[[a0 + i a1, a2 + i a3], [-a2 + i a3, a0 - i a1]]``.
    """
    if q.basis == "abstract":
        raise ValueError("to_matrix needs a quaternion tagged EIJK or pauli")
    mode = EXACT if q.is_exact else FLOAT
    mats = matrix_basis(q.basis, mode).matrices
    out = mats[0] * q.a0
    for a, m in zip(q.coeffs[1:], mats[1:]):
        out = out + m * a
    return make_matrix(out, mode) if mode == EXACT else out


def from_matrix(m, basis: str = "pauli", tol: float = 1e-12) -> Quaternion:
    """Inverse of :func:`to_matrix`; rejects matrices outside the real span."""
    basis = _tag(basis)
    m = np.asarray(m) if not isinstance(m, np.ndarray) else m
    if m.shape != (2, 2):
        raise NotRepresentableError(f"expected a 2x2 matrix, got shape {m.shape}")
    exact = m.dtype == object and all(is_exact_scalar(v) for v in m.ravel())
    mode = EXACT if exact else FLOAT
    mats = list(matrix_basis(basis, mode).matrices)
    try:
        coeffs = span_coefficients(mats, to_mode(m, mode), tol)
    except NotInSpanError as exc:
        raise NotRepresentableError(f"not a {basis} quaternion matrix: {exc}") from None
    return Quaternion(*coeffs, basis=basis)


def det2(m: np.ndarray):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def det_norm(q: Quaternion):
    """``sqrt(det(to_matrix(q)))`` when the determinant is a nonnegative real."""
    d = det2(to_matrix(q))
    if im_part(d) != 0 and abs(complex(d).imag) > 1e-12:
        raise ValueError(f"determinant {d} is not real in the {q.basis} realization")
    d = as_real(re_part(d)) if is_exact_scalar(d) else float(re_part(d))
    if d < 0:
        raise ValueError(f"determinant {d} is negative in the {q.basis} realization")
    return exact_sqrt(d)


# -- biquaternion form ------------------------------------------------------


@dataclass(frozen=True)
class BiquaternionForm:
    """``x = c1 e + c2 j`` with complex ``c1, c2``.

    Slot map: ``c1 = a0 + i a1`` and ``c2 = a2 + i a3``.  Since
    ``(a2 + i a3) j = a2 j + a3 k``, this agrees with the coefficient form.
    """

    c1: Complex
    c2: Complex


def to_biquaternion(q: Quaternion) -> BiquaternionForm:
    return BiquaternionForm(Complex(q.a0, q.a1), Complex(q.a2, q.a3))


def from_biquaternion(b: BiquaternionForm, basis: str = "abstract") -> Quaternion:
    c1, c2 = Complex.of(b.c1), Complex.of(b.c2)
    return Quaternion(c1.re, c1.im, c2.re, c2.im, basis=basis)


# -- tables and commutation -------------------------------------------------


def label_of(m: np.ndarray, basis: MatrixBasis) -> str:
    """Name a matrix in terms of the basis labels (``"K'"``, ``"-E"``, ...)."""
    try:
        q = from_matrix(m, basis.name)
    except NotRepresentableError:
        return "?"
    terms = [(a, lab) for a, lab in zip(q.coeffs, basis.labels) if a != 0]
    if not terms:
        return "0"
    parts = []
    for a, lab in terms:
        if a == 1:
            parts.append(f"+{lab}")
        elif a == -1:
            parts.append(f"-{lab}")
        else:
            parts.append(f"{'+' if a > 0 else '-'}{abs(a)}{lab}")
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def multiplication_table(tag: str) -> list[list[str]]:
    """Labels of ``row * col`` for every pair of basis elements.

    For the matrix bases the entries come from literal matrix products, so the
    table shows what the matrices do, not what the abstract table says.
    """
    tag = _tag(tag)
    labels = LABELS[tag]
    if tag == "abstract":
        return [
            [("-" if s < 0 else "") + labels[idx] for s, idx in row]
            for row in MUL_TABLE
        ]
    basis = matrix_basis(tag, EXACT)
    return [[label_of(x @ y, basis) for y in basis.matrices] for x in basis.matrices]


def render_table(tag: str) -> str:
    tag = _tag(tag)
    labels = LABELS[tag]
    rows = multiplication_table(tag)
    width = max(4, max(len(c) for r in rows for c in r) + 1)
    lines = [f"{'*':<{width}}" + "".join(f"{lab:>{width}}" for lab in labels)]
    for lab, row in zip(labels, rows):
        lines.append(f"{lab:<{width}}" + "".join(f"{c:>{width}}" for c in row))
    return "\n".join(lines) + "\n"


def table_mismatches(tag: str) -> list[tuple[str, str, str, str]]:
    """Products where the realization disagrees with :data:`MUL_TABLE`.

    Returns ``(row, col, expected, realized)`` tuples; empty means the
    realization reproduces the quaternion table.
    """
    tag = _tag(tag)
    labels = LABELS[tag]
    got = multiplication_table(tag)
    out = []
    for r in range(4):
        for c in range(4):
            s, idx = MUL_TABLE[r][c]
            want = ("-" if s < 0 else "") + labels[idx]
            if got[r][c] != want:
                out.append((labels[r], labels[c], want, got[r][c]))
    return out


class CommutationRow(NamedTuple):
    x: str
    y: str
    product: str
    commutes: bool
    anticommutes: bool
    commutator_norm: float


def group_commutativity_report(basis: MatrixBasis | str) -> list[CommutationRow]:
    """Classify ``XY - YX`` and ``XY + YX`` for every unordered pair."""
    if isinstance(basis, str):
        basis = matrix_basis(basis, EXACT)
    rows = []
    mats, labels = basis.matrices, basis.labels
    for a in range(4):
        for b in range(a + 1, 4):
            x, y = mats[a], mats[b]
            comm = x @ y - y @ x
            anti = x @ y + y @ x
            rows.append(
                CommutationRow(
                    labels[a],
                    labels[b],
                    label_of(x @ y, basis),
                    is_zero_matrix(comm),
                    is_zero_matrix(anti),
                    frobenius(comm),
                )
            )
    return rows


def is_abelian(basis: MatrixBasis | str) -> bool:
    return all(row.commutes for row in group_commutativity_report(basis))


def embedded_complex_subalgebra(tag: str, mode: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``(E, J)`` spanning a copy of the complex numbers inside the basis.

    The generator squares to ``-E``; the pair is checked as a cyclic basis of
    length 4 before it is returned.
    """
    tag = _tag(tag)
    basis = matrix_basis(tag, mode)
    unit, gen = basis.matrices[0], basis.matrices[2]
    check = validate_cyclic(CyclicBasis(unit, gen, 4, f"{tag}-complex"))
    if not check.ok:
        raise InvalidBasisError(check.witness)
    return unit, gen


def conj_matches_adjoint(q: Quaternion) -> bool:
    a, b = to_matrix(qconj(q)), conj_transpose(to_matrix(q))
    return is_zero_matrix(a - b)
