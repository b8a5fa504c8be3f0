"""Self-contained invariant suite behind the `verify` command.

Each check pits an independent route against a closed form: the operator
identity for B^2, the spectrum formula against the Jacobi eigensolver, the
Tsirelson/Landau ordering, Schmidt round trips, the Horodecki criterion
against the pure-state maximum, and the derivative-free optimizer against
both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bell import (
    MeasurementScheme,
    TSIRELSON,
    analytic_max_violation,
    bell_operator,
    bell_spectrum,
    chsh_value,
    commutator_product,
    horodecki_M,
    landau_bound,
    max_violation_pure,
    optimal_settings_for,
    random_scheme,
)
from .errors import DomainError
from .linalg import hermitian_eigen
from .optimize import OptimizerConfig, maximize_chsh
from .rng import rng_substream
from .states import (
    PureState,
    canonical_state,
    concurrence,
    fidelity,
    random_density,
    random_pure,
    schmidt_decompose,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check_bell_square_identity(seed: int, trials: int) -> CheckResult:
    worst = 0.0
    for i in range(trials):
        s = random_scheme(rng_substream(seed, i))
        op = bell_operator(s)
        residual = float(
            np.max(np.abs(op @ op - 4.0 * np.eye(4) + commutator_product(s)))
        )
        worst = max(worst, residual)
    return CheckResult(
        "bell-square-identity", worst <= 1e-12,
        f"max |B^2 - 4I + [A,A']x[B,B']| = {worst:.3e} over {trials} schemes",
    )


def _check_spectrum_closed_form(seed: int, trials: int) -> CheckResult:
    worst = 0.0
    for i in range(trials):
        s = random_scheme(rng_substream(seed, 7000 + i))
        spectrum = bell_spectrum(s)
        numeric, _ = hermitian_eigen(bell_operator(s))
        worst = max(worst, float(np.max(np.abs(numeric[::-1] - spectrum.eigenvalues))))
    return CheckResult(
        "spectrum-closed-form", worst <= 1e-10,
        f"max eigenvalue deviation {worst:.3e} over {trials} schemes (tol 1e-10)",
    )


def _check_tsirelson_ordering(seed: int, trials: int) -> CheckResult:
    ok = True
    for i in range(trials):
        rng = rng_substream(seed, 14000 + i)
        s = random_scheme(rng)
        rho = random_density(rng, (i % 4) + 1)
        value = abs(chsh_value(s, rho))
        bound = landau_bound(s, rho)
        if not (value <= bound + 1e-9 and bound <= TSIRELSON + 1e-9):
            ok = False
            break
    return CheckResult(
        "tsirelson-ordering", ok,
        f"|<B>| <= Landau <= 2 sqrt(2) on {trials} scheme/state pairs",
    )


def _check_schmidt_roundtrip(seed: int, trials: int) -> CheckResult:
    worst = 0.0
    for i in range(trials):
        psi = random_pure(rng_substream(seed, 21000 + i))
        form = schmidt_decompose(psi)
        mapped = PureState(
            np.kron(form.u_a.matrix, form.u_b.matrix) @ psi.amplitudes
        )
        target = canonical_state(form.theta, 0.0)
        worst = max(worst, 1.0 - fidelity(mapped, target))
    return CheckResult(
        "schmidt-roundtrip", worst <= 1e-12,
        f"max fidelity defect {worst:.3e} over {trials} states (tol 1e-12)",
    )


def _check_concurrence_matches_schmidt(seed: int, trials: int) -> CheckResult:
    worst = 0.0
    for i in range(trials):
        psi = random_pure(rng_substream(seed, 28000 + i))
        dev = abs(concurrence(psi) - math.sin(schmidt_decompose(psi).theta))
        worst = max(worst, dev)
    return CheckResult(
        "concurrence-schmidt", worst <= 1e-10,
        f"max |concurrence - sin theta| = {worst:.3e} over {trials} states",
    )


def _check_horodecki_pure_consistency(seed: int, trials: int) -> CheckResult:
    worst = 0.0
    for i in range(trials):
        psi = random_pure(rng_substream(seed, 35000 + i))
        dev = abs(
            2.0 * math.sqrt(horodecki_M(psi.density())) - max_violation_pure(psi)
        )
        worst = max(worst, dev)
    return CheckResult(
        "horodecki-pure-consistency", worst <= 1e-10,
        f"max |2 sqrt(M) - exact maximum| = {worst:.3e} over {trials} states",
    )


def _check_gisin_strict_violation(seed: int, trials: int) -> CheckResult:
    ok = True
    for k in range(181):
        theta = k * math.pi / 180.0
        s = math.sin(theta)
        if s < 0.01:
            continue
        if analytic_max_violation(theta) < 2.0 + 0.4 * s * s:
            ok = False
            break
    return CheckResult(
        "gisin-strict-violation", ok,
        "bound > 2 with margin 0.4 sin^2(theta) on the 181-point grid",
    )


def _check_scheme_negation(seed: int, trials: int) -> CheckResult:
    ok = True
    for i in range(max(trials // 10, 5)):
        rng = rng_substream(seed, 42000 + i)
        s = random_scheme(rng)
        rho = random_density(rng, (i % 4) + 1)
        neg = MeasurementScheme(-s.a, -s.a_prime, s.b, s.b_prime)
        if abs(chsh_value(neg, rho) + chsh_value(s, rho)) > 1e-10:
            ok = False
            break
        if float(
            np.max(np.abs(bell_spectrum(neg).eigenvalues - bell_spectrum(s).eigenvalues))
        ) > 1e-10:
            ok = False
            break
    return CheckResult(
        "scheme-negation-symmetry", ok,
        "negating Alice's pair flips <B> and preserves the spectrum",
    )


def _check_optimal_settings(seed: int, trials: int) -> CheckResult:
    worst = 0.0
    for i in range(max(trials // 5, 5)):
        psi = random_pure(rng_substream(seed, 49000 + i))
        settings = optimal_settings_for(psi)
        worst = max(worst, abs(settings.achieved_value - max_violation_pure(psi)))
    return CheckResult(
        "optimal-settings-achieve", worst <= 1e-9,
        f"max |achieved - bound| = {worst:.3e} (tol 1e-9)",
    )


def _check_oracle_pure(seed: int, trials: int) -> CheckResult:
    n = max(trials // 20, 3)
    worst = 0.0
    for i in range(n):
        psi = random_pure(rng_substream(seed, 56000 + i))
        expected = max_violation_pure(psi)
        got = maximize_chsh(
            psi.density(), OptimizerConfig(restarts=16, seed=seed)
        ).best_value
        worst = max(worst, abs(got - expected))
    return CheckResult(
        "oracle-pure-agreement", worst <= 1e-4,
        f"max |optimizer - closed form| = {worst:.3e} over {n} pure states",
    )


def _check_oracle_mixed(seed: int, trials: int) -> CheckResult:
    n = max(trials // 20, 3)
    worst = 0.0
    for i in range(n):
        rho = random_density(rng_substream(seed, 63000 + i), (i % 4) + 1)
        expected = 2.0 * math.sqrt(horodecki_M(rho))
        got = maximize_chsh(rho, OptimizerConfig(restarts=16, seed=seed)).best_value
        worst = max(worst, abs(got - expected))
    return CheckResult(
        "oracle-mixed-agreement", worst <= 1e-3,
        f"max |optimizer - 2 sqrt(M)| = {worst:.3e} over {n} mixed states",
    )


_CHECKS = (
    _check_bell_square_identity,
    _check_spectrum_closed_form,
    _check_tsirelson_ordering,
    _check_schmidt_roundtrip,
    _check_concurrence_matches_schmidt,
    _check_horodecki_pure_consistency,
    _check_gisin_strict_violation,
    _check_scheme_negation,
    _check_optimal_settings,
    _check_oracle_pure,
    _check_oracle_mixed,
)


def run_invariant_checks(seed: int, trials: int = 100) -> list[CheckResult]:
    """Run every cross-check; deterministic for fixed (seed, trials)."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    return [check(seed, trials) for check in _CHECKS]
