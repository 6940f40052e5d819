"""Invariance suites: JSON documents listing (equation, group, samples, expectation).

A suite is either ``{"name", "seed", "cases": [...]}`` or a single case at the
top level.  A case looks like::

    {"name": "...",
     "equation": "schrodinger_two_level" | {"ref": ..., "form": ..., "structure": ...}
                 | {"n": 2, "At": [[...]], "Ax": ..., "A0": ..., "kappa": 1},
     "group": {"kind": "total_gauge", "beta": 2, "alpha": 0.7},
     "grid": {"dims": 1, "points": 16, "h": 0.0625, "nt": 8, "dt": 0.01},
     "samples": 3,
     "expect": "invariant"}

Inline equations may also put ``n``/``At``/... directly on the case.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ._num import matrix_from_json, resolve_mode
from .symmetry.equations import (
    COEFFICIENTS,
    LinearMatrixPDE,
    conjugate_system,
    doubled_form,
    maxwell_free_system,
    schrodinger_system,
)
from .symmetry.groups import TransformGroup
from .symmetry.sampling import Grid, check_grid, random_smooth_field
from .symmetry.verifier import (
    COMMUTATOR_TOL,
    INVARIANT,
    NOT_INVARIANT,
    REALIZATION_NOTE,
    RESIDUAL_TOL,
    InvarianceReport,
    check_invariance,
)

SUITE_DIR = Path(__file__).parent / "suites"


class SuiteError(ValueError):
    """A suite or one of its cases cannot be built."""

    def __init__(self, message: str, case: str | None = None):
        super().__init__(f"case {case!r}: {message}" if case else message)
        self.case = case


def _schrodinger(form="complex", structure="quaternion", h=None):
    eq = schrodinger_system(h)
    return eq if form == "complex" else doubled_form(eq, structure)


def _maxwell(form="complex", structure="central", dimension=1, c=1.0):
    eq = maxwell_free_system(int(dimension), float(c))
    return eq if form == "complex" else doubled_form(eq, structure)


BUNDLED_EQUATIONS = {
    "schrodinger_two_level": _schrodinger,
    "maxwell_free": _maxwell,
}


def bundled_suites() -> list[str]:
    return sorted(p.stem for p in SUITE_DIR.glob("*.json"))


def build_equation(spec, mode: str | None = None) -> LinearMatrixPDE:
    if isinstance(spec, str):
        spec = {"ref": spec}
    if not isinstance(spec, dict):
        raise ValueError("equation must be a name or an object")
    if "ref" in spec:
        opts = {k: v for k, v in spec.items() if k not in ("ref", "conjugate")}
        try:
            maker = BUNDLED_EQUATIONS[spec["ref"]]
        except KeyError:
            raise ValueError(f"unknown bundled equation {spec['ref']!r}") from None
        eq = maker(**opts)
    else:
        coeffs = {k: matrix_from_json(spec[k], mode) for k in COEFFICIENTS if k in spec}
        eq = LinearMatrixPDE(**coeffs, kappa=float(spec.get("kappa", 1.0)), name=spec.get("name", "inline"))
        if "n" in spec and eq.n != int(spec["n"]):
            raise ValueError(f"dimension mismatch: n={spec['n']} but coefficients are {eq.n}x{eq.n}")
    return conjugate_system(eq) if spec.get("conjugate") else eq


def build_group(spec: dict, n: int, mode: str | None = None) -> TransformGroup:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError("group needs a 'kind'")
    kind = spec["kind"]
    if kind == "total_gauge":
        return TransformGroup.total_gauge(n, float(spec.get("beta", 1.0)), float(spec.get("alpha", 0.0)))
    if kind == "quaternion_left":
        return TransformGroup.quaternion_left(n, resolve_mode(mode))
    if kind == "embedded_complex":
        return TransformGroup.embedded_complex(n, resolve_mode(mode))
    if kind == "duality_rotation":
        return TransformGroup.duality_rotation(n, float(spec.get("theta", 0.0)), spec.get("form", "phase"))
    if kind == "custom":
        gens = [matrix_from_json(g, mode) for g in spec.get("generators", [])]
        return TransformGroup.custom(gens, spec.get("names"))
    raise ValueError(f"unknown group kind {kind!r}")


@dataclass
class CaseSpec:
    name: str
    equation: LinearMatrixPDE
    group: TransformGroup
    grid: Grid
    samples: int
    seed: int
    expect: str


@dataclass
class CaseResult:
    case: CaseSpec
    report: InvarianceReport

    @property
    def matches(self) -> bool:
        return self.report.verdict == self.case.expect


@dataclass
class SuiteSpec:
    name: str
    cases: list
    seed: int = 0
    output: str | None = None
    format: str = "text"
    tolerances: dict = field(default_factory=dict)


def _case_from_dict(d: dict, index: int, seed: int, mode: str | None) -> CaseSpec:
    name = d.get("name", f"case{index}")
    try:
        eq_spec = d.get("equation")
        if eq_spec is None:
            eq_spec = {k: v for k, v in d.items() if k in COEFFICIENTS + ("n", "kappa")}
            if not eq_spec:
                raise ValueError("case has no equation")
        eq = build_equation(eq_spec, mode)
        group = build_group(d.get("group", {}), eq.n, mode)
        grid = Grid.from_dict(d.get("grid", {}))
        check_grid(eq, grid)
        expect = d.get("expect", INVARIANT)
        if expect not in (INVARIANT, NOT_INVARIANT):
            raise ValueError(f"expect must be {INVARIANT!r} or {NOT_INVARIANT!r}")
        samples = int(d.get("samples", 3))
        if samples < 1:
            raise ValueError("samples must be at least 1")
        return CaseSpec(name, eq, group, grid, samples, int(d.get("seed", seed)), expect)
    except (ValueError, TypeError, KeyError) as exc:
        raise SuiteError(str(exc), name) from None


def parse_suite(doc: dict | str, mode: str | None = None, seed: int | None = None) -> SuiteSpec:
    if isinstance(doc, str):
        doc = json.loads(doc)
    if not isinstance(doc, dict):
        raise SuiteError("suite must be a JSON object")
    base_seed = int(doc.get("seed", 0)) if seed is None else seed
    raw = doc["cases"] if "cases" in doc else [doc]
    if not raw:
        raise SuiteError("suite has no cases")
    cases = [_case_from_dict(c, i, base_seed, mode) for i, c in enumerate(raw)]
    return SuiteSpec(
        doc.get("name", "suite"),
        cases,
        base_seed,
        doc.get("output"),
        doc.get("format", "text"),
        dict(doc.get("tolerances", {})),
    )


def load_suite(ref: str, mode: str | None = None, seed: int | None = None) -> SuiteSpec:
    """Load a suite by bundled name or file path."""
    path = Path(ref)
    if not path.exists():
        bundled = SUITE_DIR / f"{ref}.json"
        if not bundled.exists():
            raise FileNotFoundError(f"no suite file or bundled suite named {ref!r}")
        path = bundled
    return parse_suite(json.loads(path.read_text()), mode, seed)


def run_case(case: CaseSpec, commutator_tol: float = COMMUTATOR_TOL,
             residual_tol: float = RESIDUAL_TOL) -> CaseResult:
    samples = [random_smooth_field(case.grid, case.equation.n, seed=case.seed + k) for k in range(case.samples)]
    report = check_invariance(case.equation, case.group, samples, commutator_tol, residual_tol)
    if "maxwell" in case.equation.name:
        report.notes.append(REALIZATION_NOTE)
    return CaseResult(case, report)


def run_suite(suite: SuiteSpec, commutator_tol: float | None = None,
              residual_tol: float | None = None) -> list[CaseResult]:
    ctol = commutator_tol if commutator_tol is not None else suite.tolerances.get("commutator", COMMUTATOR_TOL)
    rtol = residual_tol if residual_tol is not None else suite.tolerances.get("residual", RESIDUAL_TOL)
    return [run_case(c, ctol, rtol) for c in suite.cases]


def results_to_json(suite: SuiteSpec, results: list[CaseResult]) -> str:
    doc = {
        "suite": suite.name,
        "seed": suite.seed,
        "all_match": all(r.matches for r in results),
        "cases": [
            {"name": r.case.name, "expect": r.case.expect, "match": r.matches, "report": r.report.to_dict()}
            for r in results
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def results_to_text(suite: SuiteSpec, results: list[CaseResult]) -> str:
    out = [f"suite: {suite.name} (seed {suite.seed})", ""]
    for r in results:
        out.append(f"== case {r.case.name}: expect {r.case.expect}, got {r.report.verdict}"
                   f" [{'ok' if r.matches else 'MISMATCH'}]")
        out.append(r.report.to_text())
    passed = sum(r.matches for r in results)
    out.append(f"{passed}/{len(results)} cases match")
    return "\n".join(out) + "\n"
