"""Scalar and matrix plumbing shared by every module.

Two arithmetic modes are supported.  In *exact* mode matrices are numpy
object arrays holding ``int``/``Fraction`` (real) or :class:`Complex` entries
with rational parts; in *float* mode they are ordinary ``float64`` or
``complex128`` arrays.  The mode of a matrix is read off its dtype.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number, Rational

import numpy as np

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

FLOAT_TOL = 1e-12


class NotInSpanError(ValueError):
    """Raised when a matrix is not a linear combination of the given basis."""


def default_mode() -> str:
    mode = os.environ.get("HYPERNUM_MODE", EXACT).strip().lower()
    if mode not in MODES:
        raise ValueError(f"HYPERNUM_MODE must be one of {MODES}, got {mode!r}")
    return mode


def resolve_mode(mode: str | None) -> str:
    if mode is None:
        return default_mode()
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


@dataclass(frozen=True)
class Complex:
    """A complex number as a pair of real parts.

    The parts may be ``int``/``Fraction`` (exact) or ``float``; arithmetic
    simply combines the parts, so exactness is preserved when both operands
    are exact.
    """

    re: object = 0
    im: object = 0

    def __post_init__(self):
        for part in (self.re, self.im):
            if isinstance(part, float) and not math.isfinite(part):
                raise ValueError("complex components must be finite")

    @classmethod
    def of(cls, value) -> Complex:
        if isinstance(value, Complex):
            return value
        if isinstance(value, complex):
            return cls(value.real, value.imag)
        if isinstance(value, (Number, str)) and not isinstance(value, bool):
            return cls(as_real(value), 0)
        raise TypeError(f"cannot interpret {value!r} as a complex number")

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    @property
    def is_exact(self) -> bool:
        return is_exact_real(self.re) and is_exact_real(self.im)

    def conjugate(self) -> Complex:
        return Complex(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __neg__(self) -> Complex:
        return Complex(-self.re, -self.im)

    def __pos__(self) -> Complex:
        return self

    def _coerce(self, other):
        if isinstance(other, Complex):
            return other
        if isinstance(other, complex):
            return Complex(other.real, other.imag)
        if isinstance(other, Number):
            return Complex(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Complex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Complex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Complex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("complex division by zero")
        num = self * o.conjugate()
        if is_exact_real(d) and num.is_exact:
            return Complex(Fraction(num.re) / d, Fraction(num.im) / d)
        return Complex(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> Complex:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return Complex(1, 0) / self ** (-k)
        out = Complex(1, 0)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def isclose(self, other, tol: float = FLOAT_TOL) -> bool:
        o = Complex.of(other)
        return abs(self - o) <= tol

    def __repr__(self):
        return f"Complex({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


def is_exact_real(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def is_exact_scalar(x) -> bool:
    if isinstance(x, Complex):
        return x.is_exact
    return is_exact_real(x)


def as_real(x):
    """Parse a real scalar, keeping it exact whenever possible."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        s = x.strip()
        try:
            return as_real(Fraction(s))
        except ValueError:
            return float(s)
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise ValueError("entries must be finite")
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    raise TypeError(f"not a real scalar: {x!r}")


def as_exact(x):
    """Exact version of a scalar: floats are converted to their binary value."""
    if isinstance(x, Complex):
        return Complex(as_exact(x.re), as_exact(x.im))
    if isinstance(x, (complex, np.complexfloating)):
        return _simplify(Complex(as_exact(x.real), as_exact(x.imag)))
    if isinstance(x, (float, np.floating)):
        return as_real(Fraction(float(x)))
    return as_real(x)


def _simplify(z):
    if isinstance(z, Complex) and z.im == 0 and z.is_exact:
        return as_real(z.re)
    return z


def re_part(x):
    if isinstance(x, (Complex, complex, np.complexfloating)):
        return x.real
    return x


def im_part(x):
    if isinstance(x, (Complex, complex, np.complexfloating)):
        return x.imag
    return 0


# -- matrices ---------------------------------------------------------------


def is_exact_matrix(m: np.ndarray) -> bool:
    return m.dtype == object


def exact_matrix(rows) -> np.ndarray:
    arr = np.array(rows, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = _simplify(as_exact(v))
    return out


def float_matrix(rows) -> np.ndarray:
    arr = np.array(rows, dtype=object)
    vals = [complex(v) if isinstance(v, Complex) else v for v in arr.ravel()]
    out = np.array(vals, dtype=complex).reshape(arr.shape)
    if np.all(out.imag == 0):
        return out.real.copy()
    return out


def make_matrix(rows, mode: str | None = None) -> np.ndarray:
    mode = resolve_mode(mode)
    return exact_matrix(rows) if mode == EXACT else float_matrix(rows)


def to_mode(m: np.ndarray, mode: str) -> np.ndarray:
    if mode == EXACT:
        return m if is_exact_matrix(m) else exact_matrix(m)
    return float_matrix(m) if is_exact_matrix(m) else m


def identity(dim: int, mode: str | None = None) -> np.ndarray:
    return make_matrix(np.eye(dim, dtype=int).tolist(), mode)


def matpow(m: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        raise ValueError("negative matrix powers are not supported")
    out = identity(m.shape[0], EXACT if is_exact_matrix(m) else FLOAT)
    for _ in range(k):
        out = out @ m
    return out


def conj_transpose(m: np.ndarray) -> np.ndarray:
    if is_exact_matrix(m):
        out = np.empty(m.T.shape, dtype=object)
        for (p, q), v in np.ndenumerate(m):
            out[q, p] = _simplify(v.conjugate()) if isinstance(v, Complex) else v
        return out
    return m.conj().T


def real_part(m: np.ndarray) -> np.ndarray:
    if is_exact_matrix(m):
        return np.vectorize(lambda v: as_real(re_part(v)), otypes=[object])(m)
    return np.real(m).copy()


def imag_part(m: np.ndarray) -> np.ndarray:
    if is_exact_matrix(m):
        return np.vectorize(lambda v: as_real(im_part(v)), otypes=[object])(m)
    return np.imag(m).copy()


def matrices_equal(a: np.ndarray, b: np.ndarray, tol: float = FLOAT_TOL) -> bool:
    """Exact equality when both matrices are exact, else max-abs within tol."""
    if a.shape != b.shape:
        return False
    if is_exact_matrix(a) and is_exact_matrix(b):
        return all(x == y for x, y in zip(a.ravel(), b.ravel()))
    return bool(np.max(np.abs(to_mode(a, FLOAT) - to_mode(b, FLOAT)), initial=0.0) <= tol)


def is_zero_matrix(m: np.ndarray, tol: float = FLOAT_TOL) -> bool:
    if is_exact_matrix(m):
        return all(v == 0 for v in m.ravel())
    return bool(np.max(np.abs(m), initial=0.0) <= tol)


def frobenius(m: np.ndarray) -> float:
    if is_exact_matrix(m):
        total = sum((v.abs2() if isinstance(v, Complex) else v * v) for v in m.ravel())
        return math.sqrt(total)
    return float(np.linalg.norm(m))


def exact_sqrt(x):
    """Square root that stays rational for perfect squares of rationals."""
    if is_exact_real(x) and x >= 0:
        f = Fraction(x)
        n, d = math.isqrt(f.numerator), math.isqrt(f.denominator)
        if n * n == f.numerator and d * d == f.denominator:
            return as_real(Fraction(n, d))
    return math.sqrt(float(x))


def _rational_solve(a: list[list[Fraction]], b: list[Fraction]):
    """Gauss-Jordan over the rationals.  Returns one solution or None."""
    rows, cols = len(a), len(a[0]) if a else 0
    aug = [list(map(Fraction, a[r])) + [Fraction(b[r])] for r in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(all(v == 0 for v in row[:-1]) and row[-1] != 0 for row in aug):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][-1]
    return x


def _realify(mats: list[np.ndarray], target: np.ndarray):
    """Real linear system: one equation per real/imag part of each entry."""
    cols = [[] for _ in mats]
    rhs = []
    for idx in np.ndindex(target.shape):
        for part in (re_part, im_part):
            rhs.append(part(target[idx]))
            for k, m in enumerate(mats):
                cols[k].append(part(m[idx]))
    a = [[cols[k][i] for k in range(len(mats))] for i in range(len(rhs))]
    return a, rhs


def span_coefficients(mats: list[np.ndarray], target: np.ndarray, tol: float = FLOAT_TOL):
    """Real coefficients c with target = sum c_k mats[k].

    Solved exactly over the rationals when every matrix is exact, otherwise by
    least squares with an absolute residual tolerance.  Raises
    :class:`NotInSpanError` when no such combination exists.
    """
    if any(m.shape != target.shape for m in mats):
        raise ValueError("dimension mismatch between target and basis matrices")
    if all(is_exact_matrix(m) for m in mats) and is_exact_matrix(target):
        a, rhs = _realify(mats, target)
        sol = _rational_solve(a, rhs)
        if sol is None:
            raise NotInSpanError("matrix is not in the span of the basis")
        return [as_real(v) for v in sol]
    fm = [to_mode(m, FLOAT).astype(complex) for m in mats]
    ft = to_mode(target, FLOAT).astype(complex)
    a = np.stack([np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in fm], axis=1)
    rhs = np.concatenate([ft.real.ravel(), ft.imag.ravel()])
    sol, *_ = np.linalg.lstsq(a, rhs, rcond=None)
    resid = np.max(np.abs(a @ sol - rhs), initial=0.0)
    if resid > tol * max(1.0, float(np.max(np.abs(rhs), initial=0.0))):
        raise NotInSpanError(f"matrix is not in the span of the basis (residual {resid:.3e})")
    return [float(v) for v in sol]


# -- formatting / JSON ------------------------------------------------------


def format_scalar(x) -> str:
    if isinstance(x, Complex):
        re_, im_ = x.re, x.im
        if im_ == 0:
            return format_scalar(re_)
        if re_ == 0:
            return _fmt_imag(im_)
        sign = "-" if im_ < 0 else "+"
        return f"{format_scalar(re_)}{sign}{_fmt_imag(abs(im_))}"
    if isinstance(x, (complex, np.complexfloating)):
        return format_scalar(Complex(float(x.real), float(x.imag)))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


def _fmt_imag(v) -> str:
    if v == 1:
        return "i"
    if v == -1:
        return "-i"
    return f"{format_scalar(v)}i"


def scalar_to_json(x):
    """Exact values become strings ("3/4"), floats stay floats; complex
    values become {"re": ..., "im": ...}."""
    if isinstance(x, (Complex, complex, np.complexfloating)) and im_part(x) != 0:
        return {"re": scalar_to_json(re_part(x)), "im": scalar_to_json(im_part(x))}
    x = re_part(x)
    if is_exact_real(x):
        return str(as_real(x)) if isinstance(as_real(x), Fraction) else int(x)
    return float(x)


def scalar_from_json(v):
    if isinstance(v, dict):
        re_, im_ = as_real(v.get("re", 0)), as_real(v.get("im", 0))
        return _simplify(Complex(re_, im_)) if im_ != 0 else re_
    if isinstance(v, list) and len(v) == 2:
        return scalar_from_json({"re": v[0], "im": v[1]})
    return as_real(v)


def matrix_to_json(m: np.ndarray):
    return [[scalar_to_json(v) for v in row] for row in m]


def matrix_from_json(rows, mode: str | None = None) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a non-empty list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix rows")
    parsed = [[scalar_from_json(v) for v in row] for row in rows]
    return make_matrix(parsed, mode)
