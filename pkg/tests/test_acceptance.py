"""Acceptance suite: one test per criterion, one PASS line printed each.

Closed forms are exercised at full precision through the service JSON (the
CLI prints at fixed width); CLI-facing criteria also parse the printed
surfaces at their print resolution.
"""

import math

import numpy as np
from fastapi.testclient import TestClient

from chshlab import (
    MeasurementScheme,
    OptimizerConfig,
    TSIRELSON,
    analytic_max_violation,
    bell_operator,
    bell_spectrum,
    canonical_state,
    chsh_value,
    concurrence,
    fidelity,
    hermitian_eigen,
    horodecki_M,
    max_violation_pure,
    maximize_chsh,
    optimal_settings_for,
    random_density,
    random_pure,
    rng_substream,
    schmidt_decompose,
)
from chshlab.bell import commutator_product, random_scheme
from chshlab.cli import run_command
from chshlab.service import app
from chshlab.states import DensityMatrix, PureState

client = TestClient(app)

SEED = 20260809


def _report(n: int, text: str) -> None:
    print(f"PASS criterion {n}: {text}")


def test_criterion_1_analytic_maximum_reproduction():
    worst = 0.0
    for k in range(13):
        theta = k * math.pi / 12.0
        expected = 2.0 * math.sqrt(1.0 + math.sin(theta) ** 2)
        body = client.post("/analytic", json={"theta": theta}).json()
        worst = max(worst, abs(body["bound"] - expected))
        assert abs(body["bound"] - expected) <= 1e-12
        assert abs(analytic_max_violation(theta) - expected) <= 1e-12
    # endpoints give exactly the classical bound
    assert client.post("/analytic", json={"theta": 0.0}).json()["bound"] == 2.0
    assert client.post("/analytic", json={"theta": math.pi}).json()["bound"] == 2.0
    code, out, _ = run_command(["analytic", "--theta", "0"])
    assert code == 0 and "bound 2.000000000" in out
    code, out, _ = run_command(["analytic", "--theta", str(math.pi)])
    assert code == 0 and "bound 2.000000000" in out
    code, out, _ = run_command(["analytic", "--theta", str(math.pi / 2)])
    printed = float(out.split(",")[0].split()[1])
    assert abs(printed - TSIRELSON) <= 1e-9
    assert "bound 2.828427125" in out
    _report(1, f"13 theta values match 2 sqrt(1+sin^2) (max dev {worst:.2e}, tol 1e-12)")


def test_criterion_2_sweep_curves(tmp_path):
    out_path = tmp_path / "sweep.csv"
    code, out, _ = run_command(["sweep", "--steps", "180", "--out", str(out_path)])
    assert code == 0
    csv_lines = out_path.read_text().splitlines()
    assert csv_lines[0] == "theta,bound,entropy"
    assert len(csv_lines) == 182

    rows = client.post("/sweep", json={"steps": 180}).json()["rows"]
    bounds = [r["bound"] for r in rows]
    entropies = [r["entropy"] for r in rows]
    assert len(rows) == 181
    # unique maximum of the bound at theta = pi/2
    assert all(bounds[90] > bounds[k] for k in range(181) if k != 90)
    assert abs(bounds[90] - TSIRELSON) <= 1e-12
    # entropy maximum 1.0 at theta = pi/2
    assert abs(entropies[90] - 1.0) <= 1e-12
    assert all(entropies[90] >= entropies[k] for k in range(181))
    sym = 0.0
    for k in range(181):
        sym = max(sym, abs(bounds[k] - bounds[180 - k]),
                  abs(entropies[k] - entropies[180 - k]))
    assert sym <= 1e-12
    _report(2, f"181-point sweep: unique max at pi/2, symmetry defect {sym:.2e}")


def test_criterion_3_oracle_agreement_pure():
    worst = 0.0
    for i in range(50):
        psi = random_pure(rng_substream(SEED, i))
        expected = analytic_max_violation(schmidt_decompose(psi).theta)
        got = maximize_chsh(psi.density(), OptimizerConfig(restarts=32, seed=SEED))
        worst = max(worst, abs(got.best_value - expected))
    assert worst <= 1e-4
    _report(3, f"50 Haar states, optimizer vs closed form: max dev {worst:.2e} (tol 1e-4)")


def test_criterion_4_oracle_agreement_mixed():
    worst = 0.0
    for i in range(100):
        rho = random_density(rng_substream(SEED + 1, i), (i % 4) + 1)
        expected = 2.0 * math.sqrt(horodecki_M(rho))
        got = maximize_chsh(rho, OptimizerConfig(restarts=32, seed=SEED))
        worst = max(worst, abs(got.best_value - expected))
    assert worst <= 1e-3
    _report(4, f"100 Ginibre states, optimizer vs 2 sqrt(M): max dev {worst:.2e} (tol 1e-3)")


def test_criterion_5_spectrum_identity():
    worst_res = 0.0
    worst_eig = 0.0
    for i in range(1000):
        s = random_scheme(rng_substream(SEED + 2, i))
        op = bell_operator(s)
        residual = float(
            np.max(np.abs(op @ op - 4.0 * np.eye(4) + commutator_product(s)))
        )
        worst_res = max(worst_res, residual)
        spectrum = bell_spectrum(s)
        numeric, _ = hermitian_eigen(op)
        worst_eig = max(worst_eig, float(np.max(np.abs(numeric[::-1] - spectrum.eigenvalues))))
    assert worst_res <= 1e-12
    assert worst_eig <= 1e-10
    _report(5, f"1000 schemes: square-identity residual {worst_res:.2e}, "
               f"eigenvalue dev {worst_eig:.2e}")


def test_criterion_6_gisin_property():
    margin_ok = True
    for k in range(181):
        theta = k * math.pi / 180.0
        s = math.sin(theta)
        if s >= 0.01:
            if not analytic_max_violation(theta) >= 2.0 + 0.4 * s * s:
                margin_ok = False
    assert margin_ok
    _report(6, "every grid theta with sin >= 0.01 violates with margin 0.4 sin^2")


def test_criterion_7_mixed_state_scan(tmp_path):
    out_path = tmp_path / "scan.csv"
    code, out, _ = run_command(
        ["scan-mixed", "--count", "10000", "--seed", str(SEED), "--out", str(out_path)]
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "index,rank,purity,max_chsh"
    assert len(lines) == 10001
    samples = []
    for line in lines[1:]:
        _, _, pur, max_chsh = line.split(",")
        samples.append((float(pur), float(max_chsh)))
    assert all(v < TSIRELSON - 1e-9 for _, v in samples)
    top10 = sorted(samples, key=lambda t: t[1], reverse=True)[:10]
    assert all(pur > 0.95 for pur, _ in top10)
    gap = TSIRELSON - max(v for _, v in samples)
    _report(7, f"10000 samples all below 2 sqrt(2) (min gap {gap:.2e}); "
               f"top-10 purities all > 0.95 (min {min(p for p, _ in top10):.4f})")


def test_criterion_8_werner_threshold():
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    amp = np.array([0.0, inv_sqrt2, -inv_sqrt2, 0.0], dtype=complex)
    proj = np.outer(amp, amp.conj())
    for p in (0.5, inv_sqrt2, 0.8, 1.0):
        rho = DensityMatrix(p * proj + (1 - p) * np.eye(4) / 4)
        value = 2.0 * math.sqrt(horodecki_M(rho))
        assert abs(value - TSIRELSON * p) <= 1e-10
        violates = value > 2.0 + 1e-12
        assert violates == (p > inv_sqrt2 + 1e-12)
    _report(8, "Werner family: 2 sqrt(M) = 2 sqrt(2) p, violation exactly for p > 1/sqrt(2)")


def test_criterion_9_schmidt_roundtrip_and_concurrence():
    worst_fid = 0.0
    worst_conc = 0.0
    for i in range(1000):
        psi = random_pure(rng_substream(SEED + 3, i))
        form = schmidt_decompose(psi)
        mapped = PureState(np.kron(form.u_a.matrix, form.u_b.matrix) @ psi.amplitudes)
        worst_fid = max(
            worst_fid, 1.0 - fidelity(mapped, canonical_state(form.theta, 0.0))
        )
        worst_conc = max(
            worst_conc, abs(concurrence(psi) - math.sin(form.theta))
        )
    assert worst_fid <= 1e-12
    assert worst_conc <= 1e-10
    _report(9, f"1000 states: fidelity defect {worst_fid:.2e}, "
               f"concurrence dev {worst_conc:.2e}")


def test_criterion_10_optimal_settings_constructor():
    worst_value = 0.0
    worst_sinx = 0.0
    for i in range(200):
        psi = random_pure(rng_substream(SEED + 4, i))
        theta = schmidt_decompose(psi).theta
        settings = optimal_settings_for(psi)
        expected = analytic_max_violation(theta)
        worst_value = max(worst_value, abs(settings.achieved_value - expected))
        s = settings.scheme
        sin_x = math.sqrt(
            float(np.cross(s.a, s.a_prime) @ np.cross(s.a, s.a_prime))
            * float(np.cross(s.b, s.b_prime) @ np.cross(s.b, s.b_prime))
        )
        st = math.sin(theta)
        worst_sinx = max(worst_sinx, abs(sin_x - 2.0 * st / (1.0 + st * st)))
        assert abs(chsh_value(s, psi.density()) - settings.achieved_value) <= 1e-12
    assert worst_value <= 1e-9
    assert worst_sinx <= 1e-9
    _report(10, f"200 states: achieved-vs-bound dev {worst_value:.2e}, "
                f"sin x dev {worst_sinx:.2e} (tol 1e-9)")
