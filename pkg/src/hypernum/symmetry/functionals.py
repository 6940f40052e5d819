"""How energy, Poynting and charge functionals scale under a total gauge map.

A field is carried as electric and magnetic 4-vectors; the fourth slot holds
``i c rho / lambda`` so that the charge density is recovered as
``rho = lambda * slot / (i c)``.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .equations import LAMBDA_V
from .groups import TransformGroup
from .sampling import FieldSample

#: tolerance on measured exponents when deciding that a factor is identically one
EXPONENT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class EMField4:
    """Electric and magnetic 4-vector fields sampled on a lattice.

    ``E4`` and ``H4`` have shape ``(*points, 4)``; ``cell`` is the volume of
    one lattice cell used in the quadratures.
    """

    E4: np.ndarray
    H4: np.ndarray
    lam: float = LAMBDA_V
    c: float = 1.0
    cell: float = 1.0

    def __post_init__(self):
        if self.E4.shape != self.H4.shape or self.E4.shape[-1] != 4:
            raise ValueError("E4 and H4 must share a shape ending in 4")
        if not self.lam > 0:
            raise ValueError("lambda must be positive")

    @classmethod
    def from_charges(cls, E, H, rho_e, rho_m=None, lam: float = LAMBDA_V, c: float = 1.0,
                     cell: float = 1.0) -> EMField4:
        E, H = np.asarray(E, dtype=complex), np.asarray(H, dtype=complex)
        rho_e = np.asarray(rho_e, dtype=complex)
        rho_m = np.zeros_like(rho_e) if rho_m is None else np.asarray(rho_m, dtype=complex)
        e4 = np.concatenate([E, (1j * c * rho_e / lam)[..., None]], axis=-1)
        h4 = np.concatenate([H, (1j * c * rho_m / lam)[..., None]], axis=-1)
        return cls(e4, h4, lam, c, cell)

    @property
    def E(self) -> np.ndarray:
        return self.E4[..., :3]

    @property
    def H(self) -> np.ndarray:
        return self.H4[..., :3]

    @property
    def rho_e(self) -> np.ndarray:
        return self.E4[..., 3] * self.lam / (1j * self.c)

    @property
    def rho_m(self) -> np.ndarray:
        return self.H4[..., 3] * self.lam / (1j * self.c)

    def transformed(self, factor: complex) -> EMField4:
        return EMField4(factor * self.E4, factor * self.H4, self.lam, self.c, self.cell)

    def to_dict(self) -> dict:
        def enc(a):
            return {"re": a.real.tolist(), "im": a.imag.tolist()}

        return {"E4": enc(self.E4), "H4": enc(self.H4), "lam": self.lam, "c": self.c, "cell": self.cell}

    @classmethod
    def from_dict(cls, d: dict) -> EMField4:
        def dec(v):
            return np.asarray(v["re"], dtype=float) + 1j * np.asarray(v["im"], dtype=float)

        return cls(dec(d["E4"]), dec(d["H4"]), float(d.get("lam", LAMBDA_V)), float(d.get("c", 1.0)),
                   float(d.get("cell", 1.0)))


def energy(f: EMField4) -> float:
    """Quadrature of ``|E|^2 + |H|^2``."""
    return float(np.sum(np.abs(f.E) ** 2 + np.abs(f.H) ** 2) * f.cell)


def poynting(f: EMField4) -> float:
    """Magnitude of the integrated ``Re(E x conj(H))``."""
    s = np.sum(np.cross(f.E, f.H.conj()).real, axis=tuple(range(f.E.ndim - 1))) * f.cell
    return float(np.linalg.norm(s))


def charge(f: EMField4) -> float:
    """Modulus of the integrated electric charge; a phase makes it complex."""
    return float(abs(np.sum(f.rho_e) * f.cell))


def norm_squared(s: FieldSample) -> float:
    return float(np.sum(np.abs(s.values) ** 2))


def linear_sum(s: FieldSample) -> float:
    return float(np.linalg.norm(np.sum(s.values, axis=tuple(range(s.values.ndim - 1)))))


EM_FUNCTIONALS = (("energy", energy, 2), ("poynting", poynting, 2), ("charge", charge, 1))
SAMPLE_FUNCTIONALS = (("norm_squared", norm_squared, 2), ("linear_sum", linear_sum, 1))


def bundled_sample_field(seed: int = 0, points: int = 8) -> EMField4:
    """Random smooth E, H and a positive charge density on a periodic cube."""
    rng = np.random.default_rng(seed)
    h = 1.0 / points
    axis = np.arange(points) * h
    x, y, z = np.meshgrid(axis, axis, axis, indexing="ij")
    comps = []
    for _ in range(6):
        k = rng.integers(-2, 3, size=3)
        a, p = rng.normal(), rng.uniform(0, 2 * np.pi)
        comps.append(a * np.cos(2 * np.pi * (k[0] * x + k[1] * y + k[2] * z) + p) + 0.1 * rng.normal())
    E = np.stack(comps[:3], axis=-1)
    H = np.stack(comps[3:], axis=-1)
    rho = 1.0 + 0.5 * np.sin(2 * np.pi * x) * np.cos(2 * np.pi * y)
    return EMField4.from_charges(E, H, rho, cell=h**3)


@dataclass(frozen=True)
class ScalingRow:
    functional: str
    before: float
    after: float
    factor: float
    expected_exponent: int
    observed_exponent: float | None
    verdict: str


def gauge_factor(g: TransformGroup) -> complex:
    if g.kind != "total_gauge":
        raise ValueError(f"functional scaling needs a total_gauge group, got {g.kind}")
    return g.params["beta"] * cmath.exp(1j * g.params["alpha"])


def functional_scaling(field, g: TransformGroup, probe_beta: float = 2.0) -> list[ScalingRow]:
    """Measure each functional before and after ``u -> beta exp(i alpha) u``.

    The verdict per functional is decided by a second transform with
    ``probe_beta`` (same phase): a functional is invariant only if its value
    does not move for either scale.
    """
    factor = gauge_factor(g)
    probe = probe_beta * cmath.exp(1j * g.params["alpha"])
    if isinstance(field, EMField4):
        table, apply = EM_FUNCTIONALS, field.transformed
    elif isinstance(field, FieldSample):
        table = SAMPLE_FUNCTIONALS

        def apply(z):
            return FieldSample(field.grid, z * field.values, field.generator, field.seed)
    else:
        raise TypeError("field must be an EMField4 or FieldSample")
    after_field, probe_field = apply(factor), apply(probe)
    rows = []
    for name, fn, power in table:
        before = fn(field)
        after = fn(after_field)
        ratio = after / before if before else math.nan
        beta = abs(factor)
        exponent = math.log(ratio) / math.log(beta) if beta != 1 and ratio > 0 else None
        probe_ratio = fn(probe_field) / before if before else math.nan
        invariant = abs(ratio - 1) <= EXPONENT_TOL and abs(probe_ratio - 1) <= EXPONENT_TOL
        rows.append(ScalingRow(name, before, after, ratio, power, exponent,
                               "invariant" if invariant else "scales"))
    return rows


def scaling_to_json(rows: list[ScalingRow], g: TransformGroup) -> str:
    return json.dumps({"group": g.label, "rows": [vars(r) for r in rows]}, indent=2, sort_keys=True)


def scaling_to_text(rows: list[ScalingRow], g: TransformGroup) -> str:
    lines = [f"group: {g.label}",
             f"{'functional':<14}{'before':>12}{'after':>12}{'factor':>14}{'power':>7}  verdict"]
    for r in rows:
        lines.append(f"{r.functional:<14}{r.before:>12.5e}{r.after:>12.5e}{r.factor:>14.10f}"
                     f"{r.expected_exponent:>7}  {r.verdict}")
    return "\n".join(lines) + "\n"


__all__ = [
    "EMField4",
    "ScalingRow",
    "bundled_sample_field",
    "charge",
    "energy",
    "functional_scaling",
    "gauge_factor",
    "linear_sum",
    "norm_squared",
    "poynting",
    "scaling_to_json",
    "scaling_to_text",
]
