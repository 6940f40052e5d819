"""Invariance of linear matrix PDEs under constant transformations.

For constant coefficients a constant invertible ``T`` maps solutions to
solutions when it commutes with every coefficient.  Two independent routes
decide this:

* :func:`commutant_check` computes ``[T, A]`` for every generator and
  coefficient;
* :func:`residual_check` applies the discrete operator ``L`` to test fields
  and measures ``L(Tu) - T(Lu)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .._num import FLOAT, frobenius, is_exact_matrix, is_zero_matrix, to_mode
from .equations import LinearMatrixPDE
from .groups import TransformGroup
from .sampling import FieldSample, apply_matrix, apply_operator, interior

INVARIANT = "invariant"
NOT_INVARIANT = "not_invariant"

COMMUTATOR_TOL = 1e-10
RESIDUAL_TOL = 1e-8

REALIZATION_NOTE = (
    "the quaternionic form of the field equations is not given explicitly; "
    "the complex first-order form and its doubled form are tested"
)


@dataclass(frozen=True)
class CommutatorEntry:
    generator: str
    coefficient: str
    norm: float
    vanishes: bool


@dataclass(frozen=True)
class ResidualStats:
    generator: str
    samples: int
    max_abs: float
    mean_abs: float
    field_scale: float

    @property
    def max_rel(self) -> float:
        return self.max_abs / self.field_scale if self.field_scale > 0 else self.max_abs


@dataclass(frozen=True)
class Witness:
    generator: str
    coefficient: str
    value: float


@dataclass
class InvarianceReport:
    equation: str
    group: str
    verdict: str
    commutant_table: list = field(default_factory=list)
    residual_stats: list = field(default_factory=list)
    witness: Witness | None = None
    commutator_tol: float = COMMUTATOR_TOL
    residual_tol: float = RESIDUAL_TOL
    notes: list = field(default_factory=list)

    @property
    def invariant(self) -> bool:
        return self.verdict == INVARIANT

    @property
    def max_residual_rel(self) -> float | None:
        if not self.residual_stats:
            return None
        return max(r.max_rel for r in self.residual_stats)

    def to_dict(self) -> dict:
        return {
            "equation": self.equation,
            "group": self.group,
            "verdict": self.verdict,
            "commutant_table": [vars(e).copy() for e in self.commutant_table],
            "residual_stats": [
                dict(vars(r), max_rel=r.max_rel) for r in self.residual_stats
            ],
            "witness": vars(self.witness).copy() if self.witness else None,
            "commutator_tol": self.commutator_tol,
            "residual_tol": self.residual_tol,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> InvarianceReport:
        stats = []
        for r in d["residual_stats"]:
            r = {k: v for k, v in r.items() if k != "max_rel"}
            stats.append(ResidualStats(**r))
        return cls(
            d["equation"],
            d["group"],
            d["verdict"],
            [CommutatorEntry(**e) for e in d["commutant_table"]],
            stats,
            Witness(**d["witness"]) if d["witness"] else None,
            d["commutator_tol"],
            d["residual_tol"],
            list(d["notes"]),
        )

    def to_text(self) -> str:
        lines = [
            f"equation : {self.equation}",
            f"group    : {self.group}",
            f"verdict  : {self.verdict}",
        ]
        for note in self.notes:
            lines.append(f"note     : {note}")
        if self.commutant_table:
            lines.append(f"{'generator':<20}{'coefficient':<12}{'|[T,A]|':>12}  vanishes")
            for e in self.commutant_table:
                lines.append(f"{e.generator:<20}{e.coefficient:<12}{_fmt(e.norm):>12}  {'yes' if e.vanishes else 'no'}")
        if self.residual_stats:
            lines.append(f"{'generator':<20}{'samples':>8}{'max':>12}{'mean':>12}{'max/scale':>12}")
            for r in self.residual_stats:
                lines.append(
                    f"{r.generator:<20}{r.samples:>8}{_fmt(r.max_abs):>12}{_fmt(r.mean_abs):>12}{_fmt(r.max_rel):>12}"
                )
        if self.witness:
            w = self.witness
            lines.append(f"witness  : [{w.generator}, {w.coefficient}] = {_fmt(w.value)}")
        return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    # roundoff-level values print as zero so text reports are stable across BLAS builds
    return "0" if abs(x) < 1e-10 else f"{x:.3e}"


def _check_dims(eq: LinearMatrixPDE, g: TransformGroup):
    if g.n != eq.n:
        raise ValueError(f"dimension mismatch: generators are {g.n}x{g.n}, equation has n={eq.n}")


def _commutator(t: np.ndarray, a: np.ndarray) -> np.ndarray:
    if is_exact_matrix(t) and is_exact_matrix(a):
        return t @ a - a @ t
    tf, af = to_mode(t, FLOAT), to_mode(a, FLOAT)
    return tf @ af - af @ tf


def commutant_check(eq: LinearMatrixPDE, g: TransformGroup, tol: float = COMMUTATOR_TOL) -> InvarianceReport:
    """Algebraic test: every generator must commute with every coefficient."""
    _check_dims(eq, g)
    table = []
    for name, t in zip(g.names, g.generators):
        for key, a in eq.coefficients().items():
            c = _commutator(t, a)
            table.append(CommutatorEntry(name, key, frobenius(c), is_zero_matrix(c, tol)))
    failing = [e for e in table if not e.vanishes]
    witness = None
    if failing:
        worst = max(failing, key=lambda e: e.norm)
        witness = Witness(worst.generator, worst.coefficient, worst.norm)
    return InvarianceReport(
        eq.name,
        g.label,
        NOT_INVARIANT if failing else INVARIANT,
        commutant_table=table,
        witness=witness,
        commutator_tol=tol,
        notes=list(eq.notes),
    )


def transform_residual(eq: LinearMatrixPDE, t: np.ndarray, sample: FieldSample) -> np.ndarray:
    """Per-site norm of ``L(Tu) - T(Lu)``."""
    tu = FieldSample(sample.grid, apply_matrix(t, sample.values, eq.action), sample.generator, sample.seed)
    r = apply_operator(eq, tu) - apply_matrix(t, apply_operator(eq, sample), eq.action)
    return np.linalg.norm(r, axis=-1)


def residual_check(eq: LinearMatrixPDE, g: TransformGroup, samples, tol: float = RESIDUAL_TOL) -> InvarianceReport:
    """Numerical test on one or more sampled fields.

    The residual is measured relative to the field scale (RMS of the
    per-site norm); invariant means every generator stays within ``tol``.
    """
    _check_dims(eq, g)
    if isinstance(samples, FieldSample):
        samples = [samples]
    samples = list(samples)
    if not samples:
        raise ValueError("residual_check needs at least one sample")
    stats = []
    for name, t in zip(g.names, g.generators):
        worst_rel, worst = -1.0, None
        total_mean = 0.0
        for s in samples:
            r = transform_residual(eq, t, s)
            scale = s.scale
            rel = float(r.max()) / scale if scale > 0 else float(r.max())
            total_mean += float(r.mean())
            if rel > worst_rel:
                worst_rel, worst = rel, (float(r.max()), scale)
        stats.append(ResidualStats(name, len(samples), worst[0], total_mean / len(samples), worst[1]))
    failing = [r for r in stats if r.max_rel > tol]
    witness = None
    if failing:
        w = max(failing, key=lambda r: r.max_rel)
        witness = Witness(w.generator, "L(Tu)-T(Lu)", w.max_rel)
    return InvarianceReport(
        eq.name,
        g.label,
        NOT_INVARIANT if failing else INVARIANT,
        residual_stats=stats,
        witness=witness,
        residual_tol=tol,
        notes=list(eq.notes),
    )


def check_invariance(eq: LinearMatrixPDE, g: TransformGroup, samples=(),
                     commutator_tol: float = COMMUTATOR_TOL, residual_tol: float = RESIDUAL_TOL) -> InvarianceReport:
    """Both routes; invariant only when the commutators vanish and residuals stay small."""
    alg = commutant_check(eq, g, commutator_tol)
    samples = [samples] if isinstance(samples, FieldSample) else list(samples)
    if not samples:
        return alg
    num = residual_check(eq, g, samples, residual_tol)
    verdict = INVARIANT if alg.invariant and num.invariant else NOT_INVARIANT
    return InvarianceReport(
        eq.name,
        g.label,
        verdict,
        alg.commutant_table,
        num.residual_stats,
        alg.witness or num.witness,
        commutator_tol,
        residual_tol,
        alg.notes,
    )


def pde_residual(eq: LinearMatrixPDE, sample: FieldSample) -> float:
    """Max per-site norm of the discrete ``L u`` relative to the field scale."""
    r = np.linalg.norm(apply_operator(eq, sample), axis=-1)
    return float(r.max()) / sample.scale


def invariance_groups(eq: LinearMatrixPDE, groups: dict, samples=()) -> dict:
    """Run :func:`check_invariance` for each named candidate group."""
    return {name: check_invariance(eq, g, samples) for name, g in groups.items()}


__all__ = [
    "INVARIANT",
    "NOT_INVARIANT",
    "REALIZATION_NOTE",
    "CommutatorEntry",
    "InvarianceReport",
    "ResidualStats",
    "Witness",
    "check_invariance",
    "commutant_check",
    "interior",
    "invariance_groups",
    "pde_residual",
    "residual_check",
    "transform_residual",
]
