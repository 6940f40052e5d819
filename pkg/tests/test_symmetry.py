from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
import pytest

from hypernum._num import EXACT, make_matrix
from hypernum.harness import SuiteError, parse_suite, run_suite
from hypernum.symmetry import (
    EMField4,
    FieldSample,
    Grid,
    GridTooSmallError,
    LinearMatrixPDE,
    SingularGeneratorError,
    TransformGroup,
    bundled_sample_field,
    check_invariance,
    commutant_check,
    complex_structure,
    conjugate_system,
    doubled_form,
    functional_scaling,
    maxwell_free_system,
    pde_residual,
    plane_wave,
    random_smooth_field,
    residual_check,
    schrodinger_system,
)
from hypernum.symmetry.functionals import charge, energy, norm_squared, poynting
from hypernum.symmetry.sampling import apply_operator, dispersion
from hypernum.symmetry.verifier import InvarianceReport

ORACLES = json.loads((Path(__file__).parent / "oracles" / "frozen.json").read_text())

SMALL = Grid((8,), 1 / 8, 6, 0.05)


def mech():
    return schrodinger_system(form="doubled")


def test_gauge_invariant_on_complex_schrodinger():
    eq = schrodinger_system()
    rep = commutant_check(eq, TransformGroup.total_gauge(2, 2.0, 0.7))
    assert rep.invariant and rep.witness is None


def test_quaternion_left_fails_on_doubled_schrodinger():
    rep = commutant_check(mech(), TransformGroup.quaternion_left(4))
    assert rep.verdict == "not_invariant"
    # the witness generator anticommutes with the matrix standing for i
    assert rep.witness.coefficient == "At"
    assert rep.witness.generator in ("I'", "K'")
    assert rep.witness.value == pytest.approx(2 * ORACLES["pauli_commutator_norms"]["[I',J']"] / math.sqrt(2))


def test_scalar_coefficients_admit_quaternions():
    eye = make_matrix(np.eye(4, dtype=int).tolist(), EXACT)
    eq = LinearMatrixPDE(At=eye, Ax=make_matrix((3 * np.eye(4, dtype=int)).tolist(), EXACT), A0=eye)
    assert commutant_check(eq, TransformGroup.quaternion_left(4)).invariant


def test_commutators_are_exact_in_rational_mode():
    rep = commutant_check(mech(), TransformGroup.embedded_complex(4))
    assert all(e.norm == 0 for e in rep.commutant_table)


def test_claim_hierarchy_for_mechanics():
    eq = mech()
    samples = [random_smooth_field(SMALL, eq.n, seed=s) for s in range(3)]
    groups = {
        "total_gauge": TransformGroup.total_gauge(4, 3.0, -0.4),
        "embedded_complex": TransformGroup.embedded_complex(4),
        "quaternion_left": TransformGroup.quaternion_left(4),
    }
    passing = {name for name, g in groups.items() if check_invariance(eq, g, samples).invariant}
    assert passing == {"total_gauge", "embedded_complex"}


def test_residual_identity_is_zero():
    eq = mech()
    s = random_smooth_field(SMALL, eq.n, seed=1)
    rep = residual_check(eq, TransformGroup.custom([np.eye(4)]), s)
    assert rep.residual_stats[0].max_abs == 0.0


def test_residual_witness_bounded_away_from_zero():
    eq = mech()
    for seed in range(10):
        s = random_smooth_field(SMALL, eq.n, seed=seed)
        rep = residual_check(eq, TransformGroup.quaternion_left(4), s)
        assert rep.max_residual_rel >= 1e-2


def test_soundness_over_many_fields():
    # commutant "invariant" implies small residuals: 1000 fields over 3 grids
    eq = mech()
    groups = [TransformGroup.total_gauge(4, 2.0, 0.7), TransformGroup.embedded_complex(4)]
    grids = [Grid((4,), 0.25, 4, 0.1), Grid((6,), 1 / 6, 5, 0.07), Grid((8,), 1 / 8, 6, 0.05)]
    for g in groups:
        assert commutant_check(eq, g).invariant
    count = 0
    for k, grid in enumerate(grids):
        samples = [random_smooth_field(grid, eq.n, seed=1000 * k + s, modes=2) for s in range(334)]
        count += len(samples)
        for g in groups:
            assert residual_check(eq, g, samples).max_residual_rel <= 1e-8
    assert count >= 1000


def test_covariance_under_scalar_relabeling():
    eq = mech()
    samples = [random_smooth_field(SMALL, eq.n, seed=s) for s in range(3)]
    g = TransformGroup.quaternion_left(4, "float")
    s_mat = 2.5 * np.eye(4)
    relabeled = TransformGroup.custom([s_mat @ t @ np.linalg.inv(s_mat) for t in g.generators], g.names)
    a = residual_check(eq, g, samples)
    b = residual_check(eq, relabeled, samples)
    for x, y in zip(a.residual_stats, b.residual_stats):
        assert x.max_abs == pytest.approx(y.max_abs, rel=1e-12, abs=1e-12)
    assert a.verdict == b.verdict


def test_errors():
    eq = mech()
    with pytest.raises(ValueError, match="dimension mismatch"):
        commutant_check(eq, TransformGroup.total_gauge(2, 1.0, 0.0))
    with pytest.raises(SingularGeneratorError):
        TransformGroup.custom([np.zeros((4, 4))])
    with pytest.raises(GridTooSmallError):
        residual_check(maxwell_free_system(1), TransformGroup.total_gauge(2, 1, 0),
                       random_smooth_field(Grid((2,), 0.5, 4, 0.1), 2))
    with pytest.raises(ValueError):
        LinearMatrixPDE(A0=np.eye(2))
    with pytest.raises(ValueError):
        LinearMatrixPDE(At=np.eye(2), Ax=np.eye(3))
    with pytest.raises(ValueError):
        TransformGroup.total_gauge(2, -1.0, 0.0)
    with pytest.raises(ValueError):
        FieldSample(SMALL, np.full(SMALL.shape + (2,), np.nan))


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 10.0])
def test_maxwell_gauge(beta):
    for dim in (1, 3):
        eq = maxwell_free_system(dim)
        grid = Grid((6,) * dim, 1 / 6, 5, 0.05)
        samples = [random_smooth_field(grid, eq.n, seed=s) for s in range(2)]
        assert check_invariance(eq, TransformGroup.total_gauge(eq.n, beta, 0.3), samples).invariant


@pytest.mark.parametrize("theta", [0.0, math.pi / 6, math.pi / 2])
def test_maxwell_duality(theta):
    eq = maxwell_free_system(3)
    grid = Grid((6, 6, 6), 1 / 6, 5, 0.05)
    samples = [random_smooth_field(grid, 3, seed=s) for s in range(2)]
    assert check_invariance(eq, TransformGroup.duality_rotation(3, theta), samples).invariant


def test_duality_phase_matches_real_mixing():
    rng = np.random.default_rng(30)
    e, h = rng.normal(size=3), rng.normal(size=3)
    theta = 0.4
    g = TransformGroup.duality_rotation(3, theta).generators[0]
    r = TransformGroup.duality_rotation(6, theta, form="real").generators[0]
    mixed = r @ np.concatenate([e, h])
    assert np.allclose(g @ (e + 1j * h), mixed[:3] + 1j * mixed[3:])


def test_maxwell_quaternion_with_central_structure():
    eq = doubled_form(maxwell_free_system(3), "central")
    assert commutant_check(eq, TransformGroup.quaternion_left(eq.n)).invariant
    # with J' standing for i the same group fails
    eq_q = doubled_form(maxwell_free_system(3), "quaternion")
    assert not commutant_check(eq_q, TransformGroup.quaternion_left(eq_q.n)).invariant


def test_complex_structures_square_to_minus_one():
    for name in ("quaternion", "central"):
        jc = complex_structure(name)
        assert (jc @ jc == -np.eye(2, dtype=int)).all()


def test_doubled_form_acts_like_complex_form():
    eq = schrodinger_system()
    dbl = doubled_form(eq, "quaternion")
    s = random_smooth_field(SMALL, 2, seed=3)
    # complex u -> real pairs (Re, Im); with J' = [[0, 1], [-1, 0]] for i,
    # multiplication by i sends (a, b) to (b, -a), i.e. the pair is (Re, -Im)
    pairs = np.stack([s.values.real, -s.values.imag], axis=-1).reshape(s.values.shape[:-1] + (4,))
    apply_complex = apply_operator(eq, s)
    lhs = apply_operator(dbl, FieldSample(SMALL, pairs))
    want = np.stack([apply_complex.real, -apply_complex.imag], axis=-1).reshape(lhs.shape)
    assert np.max(np.abs(lhs - want)) < 1e-12


def test_plane_wave_dispersion_3d():
    eq = maxwell_free_system(3)
    k = (1.0, 2.0, 2.0)
    w, _ = dispersion(eq, k)
    assert w[0].real == pytest.approx(3.0)
    assert sorted(np.round(w.real, 12)) == [-3.0, 0.0, 3.0]


def test_plane_wave_residual_matches_discrete_symbol():
    eq = maxwell_free_system(1)
    for row in ORACLES["plane_wave_residuals"]:
        n = row["points"]
        courant = float(eval(row["courant"]))  # "1" or "1/2"
        grid = Grid((n,), 1 / n, 5, courant / n)
        s, _ = plane_wave(eq, grid)
        assert pde_residual(eq, s) == pytest.approx(row["residual"], abs=1e-9, rel=1e-6)


def test_plane_wave_second_order_convergence():
    eq = maxwell_free_system(1)
    res = []
    for n in (32, 64, 128):
        s, _ = plane_wave(eq, Grid((n,), 1 / n, 5, 0.5 / n))
        res.append(pde_residual(eq, s))
    assert res[0] / res[1] >= 3.5 and res[1] / res[2] >= 3.5


def test_conjugate_system():
    eq = maxwell_free_system(1)
    twice = conjugate_system(conjugate_system(eq))
    for key, m in eq.coefficients().items():
        assert np.array_equal(twice.coefficients()[key], m)
    assert twice.action == eq.action
    herm = LinearMatrixPDE(At=np.eye(2), Ax=np.array([[1.0, 2.0], [2.0, -1.0]]))
    fixed = conjugate_system(herm)
    assert all(np.array_equal(fixed.coefficients()[k], m) for k, m in herm.coefficients().items())
    grid = Grid((64,), 1 / 64, 5, 1 / 64)
    s, _ = plane_wave(eq, grid)
    assert pde_residual(conjugate_system(eq), s.conjugate()) <= 1e-8


def test_report_json_roundtrip():
    eq = mech()
    rep = check_invariance(eq, TransformGroup.quaternion_left(4), [random_smooth_field(SMALL, 4)])
    back = InvarianceReport.from_dict(json.loads(rep.to_json()))
    assert back.to_json() == rep.to_json()
    assert back.to_text() == rep.to_text()


def direct_energy(f):
    return sum(abs(f.E4[..., a]) ** 2 + abs(f.H4[..., a]) ** 2 for a in range(3)).sum() * f.cell


def test_functional_scaling_against_direct_quadrature():
    f = bundled_sample_field(0)
    g = TransformGroup.total_gauge(4, 2.0, 0.0)
    rows = {r.functional: r for r in functional_scaling(f, g)}
    assert rows["energy"].before == pytest.approx(direct_energy(f), rel=1e-13)
    assert rows["energy"].after == pytest.approx(4 * direct_energy(f), rel=1e-13)
    assert abs(rows["energy"].factor - 4) <= 1e-10
    assert abs(rows["poynting"].factor - 4) <= 1e-10
    assert abs(rows["charge"].factor - 2) <= 1e-10


def test_phase_only_preserves_functionals():
    f = bundled_sample_field(0)
    for alpha in (0.0, 0.9, -2.5):
        rows = functional_scaling(f, TransformGroup.total_gauge(4, 1.0, alpha))
        for r in rows:
            assert abs(r.factor - 1) <= 1e-12
            assert r.verdict == "scales"  # factor moves once beta does


def test_charge_slot_roundtrip():
    rho = np.array([0.5, 1.5])
    f = EMField4.from_charges(np.zeros((2, 3)), np.zeros((2, 3)), rho)
    assert np.allclose(f.rho_e, rho)
    assert np.allclose(f.E4[..., 3].real, 0)
    assert charge(f) == pytest.approx(2.0)
    assert energy(f) == 0 and poynting(f) == 0
    with pytest.raises(ValueError):
        EMField4(np.zeros((2, 4)), np.zeros((2, 4)), lam=0.0)


def test_scaling_needs_gauge_group():
    with pytest.raises(ValueError):
        functional_scaling(bundled_sample_field(0), TransformGroup.duality_rotation(4, 0.3))


def test_field_sample_functionals():
    wave = random_smooth_field(SMALL, 2, seed=4)
    # periodic modes integrate to zero, so add a mean for the linear functional
    s = FieldSample(SMALL, wave.values + np.array([1.0, -0.5j]))
    rows = {r.functional: r for r in functional_scaling(s, TransformGroup.total_gauge(2, 3.0, 0.2))}
    assert rows["norm_squared"].factor == pytest.approx(9.0, rel=1e-12)
    assert rows["linear_sum"].factor == pytest.approx(3.0, rel=1e-12)
    assert norm_squared(s) > 0


def test_energy_constant_in_time_before_and_after_gauge():
    eq = maxwell_free_system(1)
    s, _ = plane_wave(eq, Grid((32,), 1 / 32, 6, 1 / 64))
    for z in (1.0, 2.0 * np.exp(0.4j)):
        per_slice = np.sum(np.abs(z * s.values) ** 2, axis=(1, 2))
        assert np.ptp(per_slice) <= 1e-12 * per_slice.max()


def test_suite_parse_errors():
    with pytest.raises(SuiteError):
        parse_suite({"cases": []})
    with pytest.raises(SuiteError, match="bad"):
        parse_suite({"cases": [{"name": "bad", "equation": "nosuch", "group": {"kind": "total_gauge"}}]})
    with pytest.raises(SuiteError, match="tiny"):
        parse_suite({"cases": [{"name": "tiny", "equation": {"ref": "maxwell_free"},
                                "group": {"kind": "total_gauge"}, "grid": {"points": 2}}]})


def test_inline_single_case_suite():
    doc = {"n": 2, "At": [[{"re": 0, "im": 1}, 0], [0, {"re": 0, "im": 1}]], "Ax": [[0, 1], [-1, 0]],
           "group": {"kind": "total_gauge", "beta": 2, "alpha": 0.5},
           "grid": {"dims": 1, "h": 0.125, "points": 8}, "seed": 3}
    suite = parse_suite(doc)
    (result,) = run_suite(suite)
    assert result.matches and result.case.seed == 3
