import json
import math
import subprocess
import sys

import numpy as np
import pytest

from chshlab import DensityMatrix, PureState, canonical_state, fidelity
from chshlab.cli import run_command
from chshlab.fileio import write_state_file

INV_SQRT2 = 1.0 / math.sqrt(2.0)


@pytest.fixture
def werner_file(tmp_path):
    amp = np.array([0.0, INV_SQRT2, -INV_SQRT2, 0.0], dtype=complex)
    rho = 0.8 * np.outer(amp, amp.conj()) + 0.2 * np.eye(4) / 4
    path = tmp_path / "werner_p0.8.json"
    write_state_file(path, DensityMatrix(rho))
    return path


@pytest.fixture
def pure_file(tmp_path):
    path = tmp_path / "pure.json"
    write_state_file(path, canonical_state(math.pi / 3, 0.5))
    return path


def test_analytic_maximal():
    code, out, err = run_command(["analytic", "--theta", "1.5707963268"])
    assert code == 0 and err == ""
    assert "bound 2.828427125" in out
    assert out == "bound 2.828427125, entropy 1.000000000\n"


def test_analytic_product():
    code, out, _ = run_command(["analytic", "--theta", "0"])
    assert code == 0
    assert "bound 2.000000000, entropy 0" in out


def test_analytic_domain_error():
    code, out, err = run_command(["analytic", "--theta", "9"])
    assert code == 2
    assert "theta" in err


def test_horodecki_werner(werner_file):
    code, out, err = run_command(["horodecki", "--in", str(werner_file)])
    assert code == 0, err
    assert "M 1.280000000, max 2.262741700" in out
    assert "purity 0.730000000" in out


def test_schmidt_output_parses_back(pure_file):
    code, out, err = run_command(["schmidt", "--in", str(pure_file)])
    assert code == 0, err
    lines = out.splitlines()
    theta = float(lines[0].split()[1])
    assert abs(theta - math.pi / 3) <= 1e-9

    def parse_matrix(line):
        nums = [float(tok) for tok in line.split()[1:]]
        return np.array(
            [
                [complex(nums[0], nums[1]), complex(nums[2], nums[3])],
                [complex(nums[4], nums[5]), complex(nums[6], nums[7])],
            ]
        )

    u_a = parse_matrix(lines[1])
    u_b = parse_matrix(lines[2])
    psi = canonical_state(math.pi / 3, 0.5)
    mapped = np.kron(u_a, u_b) @ psi.amplitudes
    target = canonical_state(theta, 0.0).amplitudes
    overlap = abs(np.vdot(mapped, target)) ** 2
    assert overlap >= 1.0 - 1e-8  # limited by the 9-digit print precision


def test_maximize_command(pure_file):
    code, out, err = run_command(
        ["maximize", "--in", str(pure_file), "--restarts", "8", "--seed", "4"]
    )
    assert code == 0, err
    lines = dict(
        (line.split()[0], line.split()[1:]) for line in out.splitlines()
    )
    value = float(lines["value"][0])
    assert abs(value - 2.0 * math.sqrt(1.0 + math.sin(math.pi / 3) ** 2)) <= 1e-4
    assert lines["converged"] == ["true"]
    for key in ("a", "a_prime", "b", "b_prime"):
        v = [float(tok) for tok in lines[key]]
        assert abs(sum(c * c for c in v) - 1.0) <= 1e-8


def test_maximize_nonconvergence_maps_to_exit_3(pure_file, monkeypatch):
    import chshlab.service as service
    from chshlab.optimize import OptimizerConfig, maximize_chsh

    def stubborn(rho, cfg):
        return maximize_chsh(
            rho, OptimizerConfig(restarts=cfg.restarts, max_iters=1, seed=cfg.seed)
        )

    monkeypatch.setattr(service, "maximize_chsh", stubborn)
    code, out, _ = run_command(["maximize", "--in", str(pure_file), "--restarts", "2"])
    assert code == 3
    assert "converged false" in out


def test_optimal_command(pure_file):
    code, out, err = run_command(["optimal", "--in", str(pure_file)])
    assert code == 0, err
    fields = dict(
        (line.split()[0], line.split()[1:]) for line in out.splitlines()
    )
    assert abs(float(fields["lambda"][0]) - math.atan(math.sin(math.pi / 3))) <= 1e-8
    assert float(fields["residual"][0]) <= 1e-9
    assert fields["achieved"] == fields["bound"]


def test_sweep_csv(tmp_path):
    out_path = tmp_path / "sweep.csv"
    code, out, err = run_command(["sweep", "--steps", "8", "--out", str(out_path)])
    assert code == 0, err
    assert f"wrote 9 rows to {out_path}" in out
    text = out_path.read_text()
    assert "\r" not in text
    lines = text.splitlines()
    assert lines[0] == "theta,bound,entropy"
    assert len(lines) == 10
    for line in lines[1:]:
        theta, bound, entropy = (float(tok) for tok in line.split(","))
        # row invariants, at the 9-significant-digit print resolution
        assert abs(bound - 2.0 * math.sqrt(1.0 + math.sin(theta) ** 2)) <= 1e-7
        ct, st = math.cos(theta / 2) ** 2, math.sin(theta / 2) ** 2
        expect = -sum(p * math.log2(p) for p in (ct, st) if p > 0)
        assert abs(entropy - expect) <= 1e-7


def test_sweep_step_counts_with_ulp_overshoot(tmp_path):
    # k*pi/steps can exceed pi by one ulp at the endpoint for these counts
    for steps in (13, 26, 47):
        code, _, err = run_command(
            ["sweep", "--steps", str(steps), "--out", str(tmp_path / "s.csv")]
        )
        assert code == 0, err
        last = (tmp_path / "s.csv").read_text().splitlines()[-1]
        assert float(last.split(",")[0]) <= math.pi


def test_scan_mixed_csv_and_footer(tmp_path):
    out_path = tmp_path / "scan.csv"
    code, out, err = run_command(
        ["scan-mixed", "--count", "12", "--seed", "3", "--out", str(out_path)]
    )
    assert code == 0, err
    lines = out.splitlines()
    assert lines[0] == f"wrote 12 rows to {out_path}"
    assert lines[1].startswith("max ") and ", purity " in lines[1]
    rows = out_path.read_text().splitlines()
    assert rows[0] == "index,rank,purity,max_chsh"
    assert len(rows) == 13
    best = max(float(r.split(",")[3]) for r in rows[1:])
    footer_max = float(lines[1].split(",")[0].split()[1])
    assert abs(best - footer_max) <= 1e-8


def test_seeded_commands_are_byte_identical(tmp_path):
    argv = ["scan-mixed", "--count", "6", "--seed", "11",
            "--out", str(tmp_path / "a.csv")]
    first = run_command(argv)
    second = run_command(argv)
    assert first == second
    argv2 = ["maximize", "--in", "/dev/null"]  # error path is deterministic too
    assert run_command(argv2) == run_command(argv2)


def test_usage_errors():
    code, _, err = run_command(["analytic"])  # missing --theta
    assert code == 64
    assert "usage" in err
    code, _, _ = run_command(["no-such-command"])
    assert code == 64
    code, _, _ = run_command([])
    assert code == 64


def test_help_exits_zero():
    code, out, _ = run_command(["--help"])
    assert code == 0
    assert "analytic" in out and "scan-mixed" in out


def test_unreadable_file_exit_code():
    code, _, err = run_command(["schmidt", "--in", "/no/such/state.json"])
    assert code == 1
    assert "error" in err


def test_unparseable_file_exit_code(tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("not json at all")
    code, _, _ = run_command(["horodecki", "--in", str(path)])
    assert code == 1


def test_invalid_state_exit_code(tmp_path):
    path = tmp_path / "unnorm.json"
    path.write_text(
        json.dumps({"kind": "pure", "amplitudes": [[1, 0], [1, 0], [0, 0], [0, 0]]})
    )
    code, _, err = run_command(["schmidt", "--in", str(path)])
    assert code == 2
    assert "normalized" in err


def test_kind_mismatch_exit_code(pure_file):
    # horodecki wants a density file; a pure file is a validation failure
    code, _, _ = run_command(["horodecki", "--in", str(pure_file)])
    assert code == 2


def test_module_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "chshlab", "analytic", "--theta", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "bound 2.000000000" in proc.stdout
