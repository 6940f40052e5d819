"""One test per acceptance criterion; each prints a PASS/FAIL line."""
from __future__ import annotations

import math
import os
import random
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from conftest import ACCEPTANCE_LINES
from hypernum import Complex
from hypernum._num import EXACT, FLOAT, make_matrix
from hypernum.complex_reps import PRINTED_IMAGINARY_2X2, builtin_basis, encode
from hypernum.hermitian import heisenberg_bracket, merge, random_hermitian, split
from hypernum.quaternion import (
    Quaternion,
    det_norm,
    matrix_basis,
    multiplication_table,
    qmul,
    qnorm,
    table_mismatches,
    to_matrix,
)
from hypernum.symmetry import (
    Grid,
    TransformGroup,
    bundled_sample_field,
    check_invariance,
    functional_scaling,
    maxwell_free_system,
    pde_residual,
    plane_wave,
    random_smooth_field,
    schrodinger_system,
)
from hypernum.zn import HyperNumber, one, projector, zero

GOLDEN = Path(__file__).parent / "golden"
I = Complex(0, 1)

# printed matrices, transcribed independently of the package
PRINTED = {
    "zeroone_a": [
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]],
        [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
        [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
    ],
    "zeroone_b": [
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0], [1, 0, 0, 0]],
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        [[0, 0, 0, 1], [0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0]],
    ],
    "pauli": [[[1, 0], [0, 1]], [[I, 0], [0, -I]], [[0, 1], [-1, 0]], [[0, I], [I, 0]]],
    "EIJK": [[[1, 0], [0, 1]], [[0, -I], [I, 0]], [[0, 1], [-1, 0]], [[I, 0], [0, I]]],
    "imaginary_2x2": [[0, -I], [I, 0]],
}

HAMILTON = [["e", "i", "j", "k"], ["i", "-e", "k", "-j"], ["j", "-k", "-e", "i"], ["k", "j", "-i", "-e"]]


def record(number: int, ok: bool, detail: str):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def same(m, rows) -> bool:
    return m.shape == np.asarray(rows, dtype=object).shape and all(
        a == b for a, b in zip(m.ravel(), np.asarray(rows, dtype=object).ravel())
    )


def rand_rational(rng):
    return Fraction(rng.randint(-30, 30), rng.randint(1, 9))


def test_criterion_1_basis_fidelity():
    checks = {}
    for name in ("zeroone_a", "zeroone_b"):
        powers = builtin_basis(name, EXACT).powers
        checks[name] = all(same(p, q) for p, q in zip(powers, PRINTED[name]))
    std = builtin_basis("std2x2", EXACT)
    checks["std2x2"] = all(
        same(encode(Complex(a, b), std).matrix, [[a, -b], [b, a]]) for a, b in [(2, 3), (-1, 4), (0, -7)]
    )
    checks["imaginary_2x2"] = same(make_matrix(PRINTED_IMAGINARY_2X2, EXACT), PRINTED["imaginary_2x2"])
    for tag in ("pauli", "EIJK"):
        checks[tag] = all(same(m, p) for m, p in zip(matrix_basis(tag, EXACT).matrices, PRINTED[tag]))
    for name in ("std2x2", "zeroone_a", "zeroone_b"):
        one_, i1, i2, i3 = builtin_basis(name, EXACT).powers
        checks[f"{name} cycle"] = (
            same(i1 @ i1, i2.tolist()) and same(i1 @ i1 @ i1, i3.tolist()) and same(i1 @ i1 @ i1 @ i1, one_.tolist())
        )
    bad = [k for k, v in checks.items() if not v]
    record(1, not bad, f"{len(checks) - len(bad)}/{len(checks)} matrix sets match" + (f"; mismatched: {bad}" if bad else ""))


def test_criterion_2_quaternion_table():
    expected = {
        "abstract": HAMILTON,
        "EIJK": [[c.upper() for c in row] for row in HAMILTON],
        "pauli": [[c.upper() + ("'" if c[-1] in "ijk" else "") for c in row] for row in HAMILTON],
    }
    table_ok = {tag: multiplication_table(tag) == want for tag, want in expected.items()}
    rng = random.Random(2024)
    hom_ok = {}
    for tag in ("pauli", "EIJK"):
        failures = 0
        for _ in range(1000):
            p = Quaternion(*(rand_rational(rng) for _ in range(4)), basis=tag)
            q = Quaternion(*(rand_rational(rng) for _ in range(4)), basis=tag)
            if not (to_matrix(qmul(p, q)) == to_matrix(p) @ to_matrix(q)).all():
                failures += 1
        hom_ok[tag] = failures == 0
    ok = all(table_ok.values()) and all(hom_ok.values())
    wrong = [f"{r}*{c}={got} (want {want})" for r, c, want, got in table_mismatches("EIJK")]
    record(2, ok, f"table match {table_ok}; homomorphism on 1000 rational pairs {hom_ok}"
                  + (f"; EIJK products off the table: {', '.join(wrong)}" if wrong else ""))


def test_criterion_3_norm_law():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(1000):
        p, q = Quaternion(*rng.normal(size=4)), Quaternion(*rng.normal(size=4))
        worst = max(worst, abs(qnorm(qmul(p, q)) - qnorm(p) * qnorm(q)))
    d = det_norm(Quaternion(1, 1, 1, 1, basis="pauli"))
    ok = worst <= 1e-10 and d == 2 and isinstance(d, int)
    record(3, ok, f"max | |pq| - |p||q| | = {worst:.2e}; det norm of (1,1,1,1) = {d!r}")


def test_criterion_4_hermitian_bridge():
    rng = np.random.default_rng(4)
    roundtrip = True
    for dim in range(1, 9):
        rows = [[0] * dim for _ in range(dim)]
        for p in range(dim):
            rows[p][p] = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
            for q in range(p + 1, dim):
                a, b = (Fraction(int(v), 3) for v in rng.integers(-9, 10, size=2))
                rows[p][q], rows[q][p] = Complex(a, b), Complex(a, -b)
        h = make_matrix(rows, EXACT)
        roundtrip &= bool((merge(split(h)) == h).all())
    block_err = 0.0
    for dim in range(1, 9):
        h = random_hermitian(dim, rng)
        x = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        block_err = max(block_err, float(np.max(np.abs(split(h).act(x) - h @ x))))
    anti_err = 0.0
    for _ in range(100):
        dim = int(rng.integers(1, 9))
        c = heisenberg_bracket(random_hermitian(dim, rng), random_hermitian(dim, rng))
        anti_err = max(anti_err, float(np.max(np.abs(c + c.conj().T))))
    ok = roundtrip and block_err <= 1e-12 and anti_err <= 1e-12
    record(4, ok, f"exact round-trip dims 1..8 {roundtrip}; block err {block_err:.2e}; anti-Hermitian err {anti_err:.2e}")


def test_criterion_5_zn_projectors():
    algebra = True
    for n in range(1, 9):
        total = zero(n)
        for a in range(n):
            total = total + projector(n, a)
            for b in range(n):
                algebra &= projector(n, a) * projector(n, b) == (projector(n, a) if a == b else zero(n))
        algebra &= total == one(n)
    rng = random.Random(5)
    spectral = True
    for _ in range(1000):
        n = rng.randint(1, 8)
        z = HyperNumber([Complex(rand_rational(rng), rand_rational(rng)) for _ in range(n)])
        a = rng.randrange(n)
        spectral &= z * projector(n, a) == projector(n, a).scale(z.k[a])
    record(5, algebra and spectral, f"projector algebra n<=8 {algebra}; spectral property on 1000 elements {spectral}")


def test_criterion_6_mechanics_side():
    eq = schrodinger_system(form="doubled")
    grid = Grid((16,), 1 / 16, 8, 0.05)
    samples = [random_smooth_field(grid, eq.n, seed=s) for s in range(3)]
    q = check_invariance(eq, TransformGroup.quaternion_left(eq.n), samples)
    gauge = check_invariance(eq, TransformGroup.total_gauge(eq.n, 2.0, 0.7), samples)
    emb = check_invariance(eq, TransformGroup.embedded_complex(eq.n), samples)
    witness_ok = q.witness is not None and q.witness.value > 0
    q_resid = max(r.max_rel for r in q.residual_stats)
    ok = (
        q.verdict == "not_invariant"
        and witness_ok
        and q_resid >= 1e-2
        and gauge.invariant
        and emb.invariant
        and gauge.max_residual_rel <= 1e-8
        and emb.max_residual_rel <= 1e-8
        and all(e.vanishes for e in gauge.commutant_table + emb.commutant_table)
    )
    w = q.witness
    record(6, ok, f"quaternion_left {q.verdict} (witness [{w.generator}, {w.coefficient}] = {w.value:.3g}, "
                  f"residual/scale {q_resid:.3g}); total_gauge {gauge.verdict}; embedded {{E, J'}} {emb.verdict}")


def test_criterion_7_maxwell_side():
    groups_ok = True
    for dim in (1, 3):
        eq = maxwell_free_system(dim)
        grid = Grid((8,) * dim, 1 / 8, 6, 0.05)
        samples = [random_smooth_field(grid, eq.n, seed=s) for s in range(3)]
        for beta in (0.5, 1.0, 2.0, 10.0):
            groups_ok &= check_invariance(eq, TransformGroup.total_gauge(eq.n, beta, 0.3), samples).invariant
        for theta in (0.0, math.pi / 6, math.pi / 2):
            groups_ok &= check_invariance(eq, TransformGroup.duality_rotation(eq.n, theta), samples).invariant
    eq = maxwell_free_system(1)
    # one wavelength across the unit box, so h = wavelength / points
    wave64, _ = plane_wave(eq, Grid((64,), 1 / 64, 5, 1 / 64))
    resid64 = pde_residual(eq, wave64)
    # convergence is measured at Courant number 1/2, where the time error does not cancel
    res = []
    for n in (32, 64, 128, 256):
        s, _ = plane_wave(eq, Grid((n,), 1 / n, 5, 0.5 / n))
        res.append(pde_residual(eq, s))
    factors = [a / b for a, b in zip(res, res[1:])]
    ok = groups_ok and resid64 <= 1e-8 and min(factors) >= 3.5
    record(7, ok, f"gauge/duality invariant {groups_ok}; residual at h=wavelength/64, dt=h/c: {resid64:.2e}; "
                  f"convergence factors at Courant 1/2: {', '.join(f'{f:.3f}' for f in factors)} "
                  f"(residual there at h=wavelength/64: {res[1]:.2e})")


def test_criterion_8_functional_scaling():
    field = bundled_sample_field(0)
    rows = {r.functional: r.factor for r in functional_scaling(field, TransformGroup.total_gauge(4, 2.0, 0.0))}
    phase = [r.factor for r in functional_scaling(field, TransformGroup.total_gauge(4, 1.0, 1.3))]
    ok = (
        abs(rows["energy"] - 4) <= 1e-9
        and abs(rows["poynting"] - 4) <= 1e-9
        and abs(rows["charge"] - 2) <= 1e-9
        and all(abs(f - 1) <= 1e-9 for f in phase)
    )
    record(8, ok, "beta=2 factors " + ", ".join(f"{k} {v:.12f}" for k, v in rows.items())
           + f"; beta=1 factors {[round(f, 12) for f in phase]}")


def test_criterion_9_cli_determinism():
    env = dict(os.environ, HYPERNUM_MODE="exact")
    commands = [(["table", t], f"table_{t}.txt") for t in ("abstract", "pauli", "EIJK", "std2x2", "zeroone_a", "zeroone_b")]
    commands += [(["verify", s, "--seed", "0"], f"verify_{s}.txt") for s in ("mechanics-vs-quaternion", "maxwell-gauge")]
    mismatched = []
    for args, golden in commands:
        outs = [subprocess.run([sys.executable, "-m", "hypernum", *args], capture_output=True, text=True, env=env)
                for _ in range(2)]
        want = (GOLDEN / golden).read_text()
        if any(o.returncode != 0 or o.stdout != want for o in outs):
            mismatched.append(" ".join(args))
    record(9, not mismatched, f"{len(commands) - len(mismatched)}/{len(commands)} commands match golden files twice"
           + (f"; mismatched: {mismatched}" if mismatched else ""))
